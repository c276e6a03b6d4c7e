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

/// \file maxuexp.hpp
/// The Max-U-Exp(a, lambda) law: xi = max(U, E) with U ~ Uniform(0, a) and
/// E ~ Exp(lambda) independent. Its density has a downward jump at x = a.

#ifndef MPMUE_MAXUEXP_HPP
#define MPMUE_MAXUEXP_HPP

#include <string>

#include "mpmue/random.hpp"

namespace mpmue {

/// Parameters (a, lambda) shared by every distribution in the family.
class Params {
 public:
  /// Throws DomainError unless both values are positive and finite.
  Params(double a, double lambda);

  double a() const { return a_; }
  double lambda() const { return lambda_; }
  double product() const { return a_ * lambda_; }

  std::string to_string() const;

  friend bool operator==(const Params&, const Params&) = default;

 private:
  double a_;
  double lambda_;
};

namespace maxuexp {

double cdf(const Params& p, double x);

/// Density. At x == a the left (uniform-side) branch value is returned.
double pdf(const Params& p, double x);

double hazard(const Params& p, double x);

/// k * xi ~ Max-U-Exp(k a, lambda / k).
Params scale_params(const Params& p, double k);

/// Inverse cdf for q in (0, 1), solved by bracketing to ~1e-12 in cdf.
double quantile(const Params& p, double q);

/// max(a * U, Exp(lambda)) from two consecutive stream values.
double sample(const Params& p, RandomStream& s);

/// E xi^k for k > -1. Closed form with incomplete gammas for k > 0;
/// 1 at k = 0; quadrature on (-1, 0).
double moment(const Params& p, double k);

double mean(const Params& p);

/// Variance as a closed form in exp(-lambda a).
double variance(const Params& p);

/// E xi^-q for q in (0, 2). Closed form on (0, 1); on [1, 2) the integral is
/// evaluated numerically after the substitution x = w^(1/(2-q)) near zero,
/// which removes the x^(1-q) endpoint singularity. Throws DivergenceError
/// for q >= 2.
double neg_moment(const Params& p, double q);

/// Laplace-Stieltjes transform E exp(-t xi), t > 0.
double lst(const Params& p, double t);

/// Tilted moment E[xi^k exp(-s xi)] for integer k >= 0 and s > 0, through
///
///   gamma(k+1, a s) / (a s^(k+1))
///     + gamma(k+1, a (s+lambda)) (lambda k - s) / (a (s+lambda)^(k+2))
///     + lambda k Gamma(k, a (s+lambda)) / (s+lambda)^(k+1).
///
/// Every counting and waiting-time density in the library is a rescaling of
/// this quantity.
double tilted_moment(const Params& p, double s, unsigned k);

/// tilted_moment(p, s, k) * s^(k+1) / k!, which stays O(1) for large k.
double tilted_moment_scaled(const Params& p, double s, unsigned k);

}  // namespace maxuexp
}  // namespace mpmue

#endif  // MPMUE_MAXUEXP_HPP
