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

#include "mpmue/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mpmue/errors.hpp"
#include "mpmue/numeric.hpp"

namespace mpmue::estimation {
namespace {

constexpr double kFourThirds = 4.0 / 3.0;
// Target used when the ratio estimate is at or above the x -> 0 limit of 2.
constexpr double kUpperClampGap = 1e-6;
constexpr double kRootTol = 1e-13;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

// lambda = (x^2/2 + 1 - e^-x) / (x m1), a = x / lambda.
Params params_from_product(double x, double m1) {
  const double lam = (0.5 * x * x - std::expm1(-x)) / (x * m1);
  return Params(x / lam, lam);
}

double solve_curve(double target, double lo, double hi) {
  return numeric::find_root([target](double x) { return mom_curve(x) - target; },
                            numeric::Interval(lo, hi), kRootTol);
}

std::size_t retained_count(std::size_t n, double trim) {
  if (!(trim >= 0.0 && trim < 1.0)) throw DomainError("trim must lie in [0, 1)");
  const auto dropped = static_cast<std::size_t>(std::ceil(trim * static_cast<double>(n)));
  return n - std::min(dropped, n);
}

}  // namespace

SampleData::SampleData(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw DomainError("SampleData: need at least two observations");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw DomainError("SampleData: observation " + std::to_string(i + 1) +
                        " is not a positive finite number");
    }
  }
  std::sort(values_.begin(), values_.end());
}

std::string to_string(RatioVariant v) {
  return v == RatioVariant::kPlain ? "plain" : "unbiased";
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::kUnique:
      return "unique";
    case Branch::kAmbiguousTwoRoots:
      return "ambiguous_two_roots";
    case Branch::kFallbackMin:
      return "fallback_min";
    case Branch::kLsqRefined:
      return "lsq_refined";
  }
  return "unknown";
}

EmpiricalMoments empirical_moments(const SampleData& s) {
  const double n = static_cast<double>(s.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : s.values()) {
    sum += x;
    sum_sq += x * x;
  }
  EmpiricalMoments m;
  m.m1 = sum / n;
  m.m2 = sum_sq / n;
  m.mean_sq_unbiased = (n * m.m1 * m.m1 - m.m2) / (n - 1.0);
  return m;
}

double ratio_stat(const SampleData& s, RatioVariant variant) {
  const auto m = empirical_moments(s);
  if (variant == RatioVariant::kPlain) return m.m2 / (m.m1 * m.m1);
  const double n = static_cast<double>(s.size());
  const double den = n * m.m1 * m.m1 - m.m2;
  if (!(den > 0.0)) throw DegenerateSampleError("ratio_stat: n*m1^2 - m2 <= 0");
  return m.m2 * (n - 1.0) / den;
}

double mom_curve(double x) {
  if (!(x > 0.0)) throw DomainError("mom_curve: x must be positive");
  if (x < 1e-3) {
    const double x2 = x * x;
    return 2.0 - 2.0 * x2 / 3.0 + x2 * x / 3.0 + x2 * x2 / 12.0;
  }
  const double em1 = std::expm1(-x);  // e^-x - 1
  const double ex = std::exp(-x);
  const double num = x * x * x / 3.0 - 4.0 * em1 - 2.0 * x * ex;
  const double den = 0.5 * x * x - em1;
  return x * num / (den * den);
}

const MomCurveLandmarks& mom_curve_landmarks() {
  static const MomCurveLandmarks landmarks = [] {
    MomCurveLandmarks out;
    const std::array<double, 1> start{3.0};
    const std::array<numeric::Interval, 1> bounds{numeric::Interval(0.5, 50.0)};
    const auto res = numeric::minimize(
        [](std::span<const double> v) { return mom_curve(v[0]); }, start, bounds, 1e-14);
    out.argmin = res.x[0];
    out.min_value = res.value;
    out.crossing = solve_curve(kFourThirds, 0.5, out.argmin);
    return out;
  }();
  return landmarks;
}

FitReport solve_mom(const SampleData& s, RatioVariant variant) {
  const auto moments = empirical_moments(s);
  FitReport rep;
  rep.r_hat_variant = variant;
  rep.r_hat = ratio_stat(s, variant);

  const double plain = moments.m2 / (moments.m1 * moments.m1);
  if (variant == RatioVariant::kUnbiased && plain > rep.r_hat * (1.0 + 1e-12)) {
    rep.warnings.push_back("plain ratio exceeds the unbiased ratio (m2 < m1^2 numerically)");
  }

  const auto& lm = mom_curve_landmarks();
  const double r = rep.r_hat;
  double x = 0.0;
  if (r >= 2.0) {
    rep.branch = Branch::kUnique;
    rep.warnings.push_back("ratio " + fmt(r) +
                           " >= 2 is outside the model range; clamped to g(x) = 2 - " +
                           fmt(kUpperClampGap));
    x = solve_curve(2.0 - kUpperClampGap, 1e-9, lm.crossing);
  } else if (r > kFourThirds) {
    rep.branch = Branch::kUnique;
    x = solve_curve(r, 1e-9, lm.crossing);
  } else if (r >= lm.min_value) {
    rep.branch = Branch::kAmbiguousTwoRoots;
    const double lower = (r <= lm.min_value) ? lm.argmin : solve_curve(r, lm.crossing, lm.argmin);
    rep.candidates.push_back(params_from_product(lower, moments.m1));
    // The rising branch approaches 4/3 from below like 4/3 (1 - 4/x^2).
    double hi = 2.0 * lm.argmin;
    while (mom_curve(hi) < r && hi < 1e9) hi *= 2.0;
    if (mom_curve(hi) >= r && r > lm.min_value) {
      rep.candidates.push_back(params_from_product(solve_curve(r, lm.argmin, hi), moments.m1));
    } else if (r > lm.min_value) {
      rep.warnings.push_back("upper root of g(x) = " + fmt(r) + " lies beyond x = 1e9");
    }
    x = lower;
  } else {
    rep.branch = Branch::kFallbackMin;
    rep.warnings.push_back("ratio " + fmt(r) + " is below the minimum " + fmt(lm.min_value) +
                           " of g; using x = " + fmt(lm.argmin));
    x = lm.argmin;
  }

  const Params p = params_from_product(x, moments.m1);
  rep.a = p.a();
  rep.lambda = p.lambda();
  rep.x_product = x;
  return rep;
}

double lsq_objective(const SampleData& s, const Params& p, double trim) {
  const auto xs = s.values();
  const std::size_t k = retained_count(xs.size(), trim);
  const double denom = static_cast<double>(xs.size()) + 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double fitted = xs[i] / p.a() * (-std::expm1(-p.lambda() * xs[i]));
    const double resid = static_cast<double>(i + 1) / denom - fitted;
    sum += resid * resid;
  }
  return sum;
}

FitReport lsq_fit(const SampleData& s, const Params& init, double trim) {
  const auto xs = s.values();
  const std::size_t k = retained_count(xs.size(), trim);
  if (k < 2) throw DomainError("lsq_fit: fewer than two observations survive trimming");
  const double a_floor = xs[k - 1];

  FitReport rep;
  rep.branch = Branch::kLsqRefined;
  try {
    rep.r_hat = ratio_stat(s, RatioVariant::kUnbiased);
  } catch (const DegenerateSampleError&) {
    rep.r_hat = std::nan("");
  }

  const Params start(std::max(init.a(), a_floor), init.lambda());
  if (start.a() != init.a()) {
    rep.warnings.push_back("initial a raised to the largest retained observation " + fmt(a_floor));
  }

  // Search in (log a, log lambda); the constraint a >= x_(k) is a box bound.
  const auto objective = [&](std::span<const double> v) {
    return lsq_objective(s, Params(std::exp(v[0]), std::exp(v[1])), trim);
  };
  const std::array<double, 2> x0{std::log(start.a()), std::log(start.lambda())};
  const std::array<numeric::Interval, 2> bounds{numeric::Interval(std::log(a_floor), 700.0),
                                                numeric::Interval(-700.0, 700.0)};
  Params best = start;
  double best_val = lsq_objective(s, start, trim);
  try {
    const auto res = numeric::minimize(objective, x0, bounds, 1e-12);
    if (res.value <= best_val) {
      best = Params(std::exp(res.x[0]), std::exp(res.x[1]));
      best_val = res.value;
    }
    if (!res.converged) rep.warnings.push_back("least-squares search hit its evaluation limit");
  } catch (const std::exception& e) {
    rep.warnings.push_back(std::string("least-squares search failed: ") + e.what());
  }

  rep.a = best.a();
  rep.lambda = best.lambda();
  rep.x_product = best.a() * best.lambda();
  rep.objective = best_val;
  return rep;
}

Params histogram_init(const SampleData& s, const HistogramOptions& options) {
  const auto xs = s.values();
  const std::size_t n = xs.size();
  if (n < 20) throw InsufficientDataError("histogram_init: need at least 20 observations");
  if (!(options.drop_factor > 0.0 && options.drop_factor < 1.0)) {
    throw DomainError("histogram_init: drop_factor must lie in (0, 1)");
  }
  const std::size_t bins =
      options.bins > 0 ? options.bins
                       : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const double top = xs.back();
  const double width = top / static_cast<double>(bins);

  std::vector<std::size_t> counts(bins, 0);
  for (double x : xs) {
    auto j = static_cast<std::size_t>(x / width);
    counts[std::min(j, bins - 1)] += 1;
  }
  const std::size_t peak =
      static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());

  double a_hat = top;
  for (std::size_t j = peak + 1; j < bins; ++j) {
    if (static_cast<double>(counts[j]) < options.drop_factor * static_cast<double>(counts[j - 1])) {
      a_hat = static_cast<double>(j) * width;
      break;
    }
  }

  double excess = 0.0;
  std::size_t exceed = 0;
  for (double x : xs) {
    if (x > a_hat) {
      excess += x - a_hat;
      ++exceed;
    }
  }
  double lam;
  if (exceed >= 5 && excess > 0.0) {
    lam = static_cast<double>(exceed) / excess;
  } else {
    lam = 1.0 / empirical_moments(s).m1;
  }
  return Params(a_hat, lam);
}

double exceedance_confidence(unsigned n, double p_exceed, unsigned max_exceed) {
  if (!(p_exceed > 0.0 && p_exceed < 1.0)) {
    throw DomainError("exceedance_confidence: p_exceed must lie in (0, 1)");
  }
  if (max_exceed >= n) return 1.0;
  const double nn = n;
  double sum = 0.0;
  for (unsigned i = 0; i <= max_exceed; ++i) {
    const double ii = i;
    sum += std::exp(std::lgamma(nn + 1.0) - std::lgamma(ii + 1.0) - std::lgamma(nn - ii + 1.0) +
                    ii * std::log(p_exceed) + (nn - ii) * std::log1p(-p_exceed));
  }
  return std::min(sum, 1.0);
}

FitReport fit_auto(const SampleData& s) {
  FitReport mom = solve_mom(s);
  switch (mom.branch) {
    case Branch::kUnique:
      return mom;

    case Branch::kAmbiguousTwoRoots: {
      FitReport rep = mom;
      rep.branch = Branch::kLsqRefined;
      std::size_t best = 0;
      double best_val = numeric::kInf;
      for (std::size_t i = 0; i < mom.candidates.size(); ++i) {
        const double v = lsq_objective(s, mom.candidates[i]);
        rep.warnings.push_back("candidate x=" + fmt(mom.candidates[i].product()) +
                               " least-squares objective " + fmt(v));
        if (v < best_val) {
          best_val = v;
          best = i;
        }
      }
      rep.a = mom.candidates[best].a();
      rep.lambda = mom.candidates[best].lambda();
      rep.x_product = mom.candidates[best].product();
      rep.objective = best_val;
      return rep;
    }

    case Branch::kFallbackMin:
    case Branch::kLsqRefined: {
      const Params init = s.size() >= 20 ? histogram_init(s) : mom.params();
      FitReport rep = lsq_fit(s, init);
      rep.r_hat = mom.r_hat;
      rep.r_hat_variant = mom.r_hat_variant;
      rep.warnings.insert(rep.warnings.begin(), mom.warnings.begin(), mom.warnings.end());
      return rep;
    }
  }
  return mom;
}

}  // namespace mpmue::estimation
