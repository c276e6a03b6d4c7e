// Copyright 2026 The mpmue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpmue/mixed_poisson.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mpmue/errors.hpp"
#include "mpmue/numeric.hpp"

namespace mpmue::mixed {
namespace {

constexpr double kQuadTol = 1e-12;

void require_positive_clock(double m, const char* who) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw DomainError(std::string(who) + ": clock value m must be positive");
  }
}

void require_count(int n, const char* who) {
  if (n < 0) throw DomainError(std::string(who) + ": count must be non-negative");
}

void require_sorted_clock(std::span<const double> mus) {
  if (mus.empty()) throw DomainError("joint pmf: need at least one clock value");
  double prev = 0.0;
  for (double m : mus) {
    if (!(m > prev)) {
      throw DomainError("joint pmf: clock values must be positive and strictly increasing");
    }
    prev = m;
  }
}

// prod_i (dmu_i^m_i / m_i!) * E[xi^M e^{-mu_n xi}], M = sum m_i, evaluated as
// exp(sum m_i log dmu_i - sum log m_i! + log M! - (M+1) log mu_n) * scaled.
double joint_from_increments(const Params& p, std::span<const double> mus,
                             std::span<const Count> incs) {
  require_sorted_clock(mus);
  if (incs.size() != mus.size()) {
    throw DomainError("joint pmf: counts and clock values differ in length");
  }
  double log_prefactor = 0.0;
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double mi = static_cast<double>(incs[i]);
    if (incs[i] > 0) log_prefactor += mi * std::log(mus[i] - prev);
    log_prefactor -= std::lgamma(mi + 1.0);
    total += mi;
    prev = mus[i];
  }
  const double mu_n = mus.back();
  log_prefactor += std::lgamma(total + 1.0) - (total + 1.0) * std::log(mu_n);
  return std::exp(log_prefactor) *
         maxuexp::tilted_moment_scaled(p, mu_n, static_cast<unsigned>(total));
}

}  // namespace

// --- TimeTransform --------------------------------------------------------

TimeTransform TimeTransform::power(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("TimeTransform: power exponent must be positive");
  }
  TimeTransform tt;
  tt.kind_ = Kind::kPower;
  tt.exponent_ = c;
  return tt;
}

TimeTransform TimeTransform::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw DomainError("TimeTransform: table needs at least two points");
  if (points.front().first != 0.0 || points.front().second != 0.0) {
    throw DomainError("TimeTransform: table must start at (0, 0)");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto& [t0, m0] = points[i - 1];
    const auto& [t1, m1] = points[i];
    if (!(t1 > t0) || !(m1 > m0) || !std::isfinite(t1) || !std::isfinite(m1)) {
      std::ostringstream msg;
      msg << "TimeTransform: table not strictly increasing at row " << i;
      throw DomainError(msg.str());
    }
  }
  TimeTransform tt;
  tt.kind_ = Kind::kTable;
  tt.points_ = std::move(points);
  return tt;
}

double TimeTransform::max_time() const {
  return kind_ == Kind::kPower ? numeric::kInf : points_.back().first;
}

double TimeTransform::max_value() const {
  return kind_ == Kind::kPower ? numeric::kInf : points_.back().second;
}

double mu_eval(const TimeTransform& tt, double t) {
  if (!(t >= 0.0)) throw DomainError("mu_eval: t must be non-negative");
  if (tt.kind() == TimeTransform::Kind::kPower) return std::pow(t, tt.exponent());
  const auto& pts = tt.points();
  if (t > pts.back().first) throw RangeError("mu_eval: t beyond the end of the table");
  auto hi = std::lower_bound(pts.begin(), pts.end(), t,
                             [](const auto& pt, double v) { return pt.first < v; });
  if (hi->first == t) return hi->second;
  const auto lo = std::prev(hi);
  const double w = (t - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

double mu_invert(const TimeTransform& tt, double y) {
  if (!(y >= 0.0)) throw DomainError("mu_invert: y must be non-negative");
  if (tt.kind() == TimeTransform::Kind::kPower) return std::pow(y, 1.0 / tt.exponent());
  const auto& pts = tt.points();
  if (y > pts.back().second) throw RangeError("mu_invert: y beyond the end of the table");
  auto hi = std::lower_bound(pts.begin(), pts.end(), y,
                             [](const auto& pt, double v) { return pt.second < v; });
  if (hi->second == y) return hi->first;
  const auto lo = std::prev(hi);
  const double w = (y - lo->second) / (hi->second - lo->second);
  return lo->first + w * (hi->first - lo->first);
}

std::size_t ProcessPath::count_at(double t) const {
  return static_cast<std::size_t>(std::upper_bound(events.begin(), events.end(), t) -
                                  events.begin());
}

CountVector::CountVector(std::vector<Count> c, std::vector<double> t)
    : counts(std::move(c)), times(std::move(t)) {
  if (counts.size() != times.size()) {
    throw DomainError("CountVector: counts and times differ in length");
  }
  require_sorted_clock(times);
}

// --- Univariate counts ----------------------------------------------------

double pmf(const Params& p, double m, int n) {
  require_positive_clock(m, "pmf");
  require_count(n, "pmf");
  return maxuexp::tilted_moment_scaled(p, m, static_cast<unsigned>(n)) / m;
}

PmfSeries pmf_series(const Params& p, double m, double tail_tol) {
  require_positive_clock(m, "pmf_series");
  if (!(tail_tol > 0.0)) throw DomainError("pmf_series: tail_tol must be positive");

  // P(N >= K) <= E[N]_r / [K]_r for every r <= K (Markov on the r-th
  // factorial moment); the smallest bound over r = 1..kOrders is used.
  constexpr unsigned kOrders = 12;
  std::array<double, kOrders + 1> log_fm{};
  for (unsigned r = 1; r <= kOrders; ++r) {
    log_fm[r] = r * std::log(m) + std::log(maxuexp::moment(p, r));
  }
  const auto tail_bound = [&](unsigned k) {
    double best = 1.0;
    double log_falling = 0.0;
    for (unsigned r = 1; r <= std::min(k, kOrders); ++r) {
      log_falling += std::log(static_cast<double>(k - r + 1));
      best = std::min(best, std::exp(log_fm[r] - log_falling));
    }
    return best;
  };

  PmfSeries out;
  unsigned k = 0;
  double bound = 1.0;
  while (bound >= tail_tol) {
    out.probs.push_back(pmf(p, m, static_cast<int>(k)));
    ++k;
    bound = tail_bound(k);
    if (k > 10'000'000) throw NumericError("pmf_series: cutoff not reached");
  }
  out.tail_bound = bound;
  return out;
}

MeanVar mean_var(const Params& p, double m) {
  require_positive_clock(m, "mean_var");
  const double mean = m * maxuexp::mean(p);
  return MeanVar{mean, mean + m * m * maxuexp::variance(p)};
}

double pgf(const Params& p, double m, double z) {
  require_positive_clock(m, "pgf");
  if (!(std::fabs(z) < 1.0)) throw DomainError("pgf: need |z| < 1");
  return maxuexp::lst(p, m * (1.0 - z));
}

double posterior_pdf(const Params& p, double m, int n, double x) {
  require_positive_clock(m, "posterior_pdf");
  require_count(n, "posterior_pdf");
  if (!(x > 0.0)) return 0.0;
  const double nn = static_cast<double>(n);
  const double log_poisson = (n > 0 ? nn * std::log(m * x) : 0.0) - m * x - std::lgamma(nn + 1.0);
  return std::exp(log_poisson) * maxuexp::pdf(p, x) / pmf(p, m, n);
}

double posterior_mean(const Params& p, double m, int n) {
  require_positive_clock(m, "posterior_mean");
  require_count(n, "posterior_mean");
  const std::array<double, 1> cut{p.a()};
  const auto r = numeric::integrate([&](double x) { return x * posterior_pdf(p, m, n, x); },
                                    numeric::Interval::half_line(0.0), kQuadTol, cut);
  return r.value;
}

double factorial_moment(const Params& p, double m, unsigned k) {
  require_positive_clock(m, "factorial_moment");
  if (k == 0) throw DomainError("factorial_moment: k must be >= 1");
  return std::pow(m, k) * maxuexp::moment(p, k);
}

// --- Finite-dimensional laws ----------------------------------------------

std::vector<Count> to_increments(std::span<const Count> ks) {
  std::vector<Count> out;
  out.reserve(ks.size());
  Count prev = 0;
  for (Count k : ks) {
    if (k < prev) throw DomainError("to_increments: counts must be non-decreasing");
    out.push_back(k - prev);
    prev = k;
  }
  return out;
}

std::vector<Count> to_cumulative(std::span<const Count> ms) {
  std::vector<Count> out;
  out.reserve(ms.size());
  Count run = 0;
  for (Count m : ms) {
    run += m;
    out.push_back(run);
  }
  return out;
}

double ordered_pmf(const Params& p, std::span<const double> mus, std::span<const Count> ks) {
  require_sorted_clock(mus);
  if (!std::is_sorted(ks.begin(), ks.end())) return 0.0;
  const auto incs = to_increments(ks);
  return joint_from_increments(p, mus, incs);
}

double ordered_pmf(const Params& p, const CountVector& v) {
  return ordered_pmf(p, v.times, v.counts);
}

double increments_pmf(const Params& p, std::span<const double> mus, std::span<const Count> ms) {
  return joint_from_increments(p, mus, ms);
}

// --- Simulation -----------------------------------------------------------

ProcessPath simulate_path(const Params& p, const TimeTransform& tt, double horizon,
                          RandomStream& s) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("simulate_path: horizon must be positive");
  }
  const double mu_h = mu_eval(tt, horizon);  // RangeError past a table's end
  ProcessPath path;
  path.horizon = horizon;
  path.xi = maxuexp::sample(p, s);
  const double limit = path.xi * mu_h;
  double arrival = 0.0;
  while (true) {
    arrival += stream_exp(s, 1.0);
    if (arrival > limit) break;
    const double y = std::min(arrival / path.xi, mu_h);
    path.events.push_back(std::min(mu_invert(tt, y), horizon));
  }
  return path;
}

std::vector<ProcessPath> simulate_paths(const Params& p, const TimeTransform& tt,
                                        double horizon, std::uint64_t seed,
                                        std::size_t count) {
  std::vector<ProcessPath> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto s = RandomStream::substream(seed, i);
    out.push_back(simulate_path(p, tt, horizon, s));
  }
  return out;
}

double conditional_binomial_pmf(unsigned n, double mu_s, double mu_t, unsigned j) {
  if (!(mu_s > 0.0) || !(mu_t > mu_s)) {
    throw DomainError("conditional_binomial_pmf: need 0 < mu_s < mu_t");
  }
  if (j > n) return 0.0;
  const double r = mu_s / mu_t;
  const double nn = n;
  const double jj = j;
  const double log_choose = std::lgamma(nn + 1.0) - std::lgamma(jj + 1.0) - std::lgamma(nn - jj + 1.0);
  const double log_p = (j > 0 ? jj * std::log(r) : 0.0) + (n > j ? (nn - jj) * std::log1p(-r) : 0.0);
  return std::exp(log_choose + log_p);
}

}  // namespace mpmue::mixed
