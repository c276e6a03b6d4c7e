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

/// \file mixed_poisson.hpp
/// The counting process N(t) = N1(xi * mu(t)), where N1 is a unit-rate
/// Poisson process independent of xi ~ Max-U-Exp(a, lambda) and mu is a
/// deterministic clock. Count probabilities take the clock value m = mu(t)
/// directly; they are all rescalings of maxuexp::tilted_moment.

#ifndef MPMUE_MIXED_POISSON_HPP
#define MPMUE_MIXED_POISSON_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mpmue/maxuexp.hpp"
#include "mpmue/random.hpp"

namespace mpmue::mixed {

/// Strictly increasing continuous clock with mu(0) = 0: either t^c, or
/// piecewise-linear through a table starting at (0, 0).
class TimeTransform {
 public:
  enum class Kind { kPower, kTable };

  static TimeTransform power(double c);
  /// Throws DomainError unless the first point is (0, 0) and both columns
  /// strictly increase.
  static TimeTransform table(std::vector<std::pair<double, double>> points);

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  const std::vector<std::pair<double, double>>& points() const { return points_; }

  /// Largest t (or mu value) the transform covers; +inf for power.
  double max_time() const;
  double max_value() const;

 private:
  TimeTransform() = default;
  Kind kind_ = Kind::kPower;
  double exponent_ = 1.0;
  std::vector<std::pair<double, double>> points_;
};

/// mu(t) for t >= 0. RangeError past the end of a table.
double mu_eval(const TimeTransform& tt, double t);

/// mu^-1(y) for y >= 0; for tables an exact per-segment linear solve.
double mu_invert(const TimeTransform& tt, double y);

struct ProcessPath {
  double xi = 0.0;
  std::vector<double> events;  // strictly ascending, all <= horizon
  double horizon = 0.0;

  /// N(t): number of events at or before t.
  std::size_t count_at(double t) const;
};

using Count = std::uint32_t;

/// Counts observed at strictly increasing clock values.
struct CountVector {
  CountVector(std::vector<Count> counts, std::vector<double> times);
  std::vector<Count> counts;
  std::vector<double> times;
};

/// P(N = n) when the clock reads m = mu(t) > 0.
double pmf(const Params& p, double m, int n);

/// P(N = 0..K-1) with K chosen so that a Markov bound on factorial moments
/// certifies P(N >= K) < tail_tol.
struct PmfSeries {
  std::vector<double> probs;
  double tail_bound = 0.0;
};
PmfSeries pmf_series(const Params& p, double m, double tail_tol = 1e-12);

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;
};
MeanVar mean_var(const Params& p, double m);

/// E z^N for |z| < 1, through the identity E z^N = E exp(-m (1 - z) xi).
double pgf(const Params& p, double m, double z);

/// Density of xi given N = n (Bayes form).
double posterior_pdf(const Params& p, double m, int n, double x);

/// E(xi | N = n) by quadrature of the posterior density.
double posterior_mean(const Params& p, double m, int n);

/// E[N (N-1) ... (N-k+1)] = m^k E xi^k.
double factorial_moment(const Params& p, double m, unsigned k);

/// Joint law of (N(t_1), ..., N(t_n)) at clock values 0 < mu_1 < ... < mu_n.
/// Zero for decreasing counts; DomainError for unsorted clock values.
double ordered_pmf(const Params& p, std::span<const double> mus, std::span<const Count> ks);
double ordered_pmf(const Params& p, const CountVector& v);

/// Joint law of the increments (N(t_1), N(t_2) - N(t_1), ...).
double increments_pmf(const Params& p, std::span<const double> mus, std::span<const Count> ms);

/// Cumulative counts to increments; DomainError when ks decreases.
std::vector<Count> to_increments(std::span<const Count> ks);
std::vector<Count> to_cumulative(std::span<const Count> ms);

/// One realization up to `horizon`: draw xi, then unit-rate arrivals
/// S_1 < S_2 < ... while S_k <= xi mu(horizon), mapped to mu^-1(S_k / xi).
ProcessPath simulate_path(const Params& p, const TimeTransform& tt, double horizon,
                          RandomStream& s);

/// `count` paths; path i uses RandomStream::substream(seed, i).
std::vector<ProcessPath> simulate_paths(const Params& p, const TimeTransform& tt,
                                        double horizon, std::uint64_t seed,
                                        std::size_t count);

/// P(N(s) = j | N(t) = n) = Binomial(n, mu_s / mu_t) at j.
double conditional_binomial_pmf(unsigned n, double mu_s, double mu_t, unsigned j);

}  // namespace mpmue::mixed

#endif  // MPMUE_MIXED_POISSON_HPP
