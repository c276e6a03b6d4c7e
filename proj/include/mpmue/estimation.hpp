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

/// \file estimation.hpp
/// Fitting Max-U-Exp(a, lambda) to a positive sample.
///
/// Method of moments reduces to one equation in x = a * lambda:
///
///     g(x) = x (x^3/3 + 4 - 2 e^-x (x + 2)) / (x^2/2 + 1 - e^-x)^2 = r
///
/// with r an estimate of E xi^2 / (E xi)^2. g falls from 2 (x -> 0) to a
/// minimum of about 1.2452 at x ~ 4.0232 and then rises towards 4/3, so
/// r in (4/3, 2) has one root, r in [g_min, 4/3] two, and r < g_min none.
/// Ambiguity and the no-root case are settled with the least-squares fit of
/// the uniform-branch CDF to plotting positions on the trimmed sample.

#ifndef MPMUE_ESTIMATION_HPP
#define MPMUE_ESTIMATION_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpmue/maxuexp.hpp"

namespace mpmue::estimation {

/// Sorted sample of positive observations, n >= 2.
class SampleData {
 public:
  explicit SampleData(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

enum class RatioVariant { kPlain, kUnbiased };
enum class Branch { kUnique, kAmbiguousTwoRoots, kFallbackMin, kLsqRefined };

std::string to_string(RatioVariant v);
std::string to_string(Branch b);

struct FitReport {
  double a = 0.0;
  double lambda = 0.0;
  double x_product = 0.0;
  double r_hat = 0.0;
  RatioVariant r_hat_variant = RatioVariant::kUnbiased;
  Branch branch = Branch::kUnique;
  std::optional<double> objective;
  std::vector<std::string> warnings;
  /// Both moment solutions when the ratio admits two.
  std::vector<Params> candidates;

  Params params() const { return Params(a, lambda); }
};

struct EmpiricalMoments {
  double m1 = 0.0;
  double m2 = 0.0;
  /// (n m1^2 - m2) / (n - 1), unbiased for (E xi)^2.
  double mean_sq_unbiased = 0.0;
};

EmpiricalMoments empirical_moments(const SampleData& s);

/// plain: m2 / m1^2; unbiased: m2 (n - 1) / (n m1^2 - m2).
/// Throws DegenerateSampleError when n m1^2 - m2 <= 0.
double ratio_stat(const SampleData& s, RatioVariant variant);

/// g(x) above; its x -> 0 limit is 2.
double mom_curve(double x);

/// Landmarks of g located numerically by this library's own minimizer and
/// root finder (computed once).
struct MomCurveLandmarks {
  double argmin = 0.0;     // ~4.0232
  double min_value = 0.0;  // ~1.2452
  double crossing = 0.0;   // g(crossing) = 4/3 on the falling side, ~2.1738
};
const MomCurveLandmarks& mom_curve_landmarks();

/// Method of moments with the branch logic described at the top of this file.
FitReport solve_mom(const SampleData& s, RatioVariant variant = RatioVariant::kUnbiased);

/// sum_{i<=k} (i/(n+1) - (x_i/a)(1 - e^{-lambda x_i}))^2 over the k smallest
/// observations left after dropping ceil(trim n) of the largest; n is the
/// full sample size.
double lsq_objective(const SampleData& s, const Params& p, double trim = 0.25);

/// Minimizes lsq_objective subject to a >= largest retained observation.
/// The start point is `init` projected onto that constraint.
FitReport lsq_fit(const SampleData& s, const Params& init, double trim = 0.25);

struct HistogramOptions {
  std::size_t bins = 0;  // 0 selects ceil(sqrt(n))
  double drop_factor = 0.5;
};

/// Initial (a, lambda) from the histogram on [0, max]: a is the left edge of
/// the first bin after the tallest one whose height falls below
/// drop_factor times its predecessor (max(x) if none); lambda is the
/// reciprocal mean exceedance over a with >= 5 exceedances, else 1 / m1.
Params histogram_init(const SampleData& s, const HistogramOptions& options = {});

/// P(X <= max_exceed) for X ~ Binomial(n, p_exceed).
double exceedance_confidence(unsigned n, double p_exceed, unsigned max_exceed);

/// Moments first; ambiguous roots decided by lsq_objective; no-root samples
/// refitted by lsq_fit from histogram_init.
FitReport fit_auto(const SampleData& s);

}  // namespace mpmue::estimation

#endif  // MPMUE_ESTIMATION_HPP
