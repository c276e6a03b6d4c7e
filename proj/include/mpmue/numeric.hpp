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

/// \file numeric.hpp
/// Special functions and scalar numeric kernels shared by every other module:
/// incomplete gamma functions, bracketing root finder, bounded Nelder-Mead,
/// and adaptive Gauss-Kronrod quadrature on finite and semi-infinite ranges.

#ifndef MPMUE_NUMERIC_HPP
#define MPMUE_NUMERIC_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace mpmue::numeric {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi]; hi may be +infinity (semi-infinite range).
/// lo may be -infinity only where documented (minimizer bounds).
class Interval {
 public:
  Interval(double lo, double hi);

  static Interval half_line(double lo) { return Interval(lo, kInf); }
  static Interval unbounded() { return Interval(-kInf, kInf); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool semi_infinite() const { return hi_ == kInf; }
  bool contains(double x) const { return x >= lo_ && x <= hi_; }
  double clamp(double x) const;

 private:
  double lo_;
  double hi_;
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  std::size_t max_subdivisions = 4000;
};

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<double(std::span<const double>)>;

// Special functions. All throw DomainError outside their domain.

/// ln Gamma(alpha), alpha > 0.
double log_gamma(double alpha);

/// Regularized lower incomplete gamma P(alpha, x).
double gamma_p(double alpha, double x);

/// Regularized upper incomplete gamma Q(alpha, x) = 1 - P(alpha, x).
double gamma_q(double alpha, double x);

/// Lower incomplete gamma: integral of t^(alpha-1) e^-t over (0, x).
double gamma_lower(double alpha, double x);

/// Upper incomplete gamma: integral of t^(alpha-1) e^-t over (x, inf).
double gamma_upper(double alpha, double x);

/// Bracketing root finder (Brent: bisection with inverse quadratic / secant
/// steps). Requires f(lo) and f(hi) of opposite sign; returns a point whose
/// bracket has width <= tol. Throws BracketError or NumericError.
double find_root(const ScalarFn& f, const Interval& bracket, double tol);

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Derivative-free Nelder-Mead simplex search. Trial points are projected
/// onto the box `bounds` (one Interval per coordinate; empty means
/// unconstrained). Deterministic for a given start. The returned objective is
/// never above the objective at the (projected) start.
MinimizeResult minimize(const VectorFn& f, std::span<const double> start,
                        std::span<const Interval> bounds, double tol);

/// Adaptive 15-point Gauss-Kronrod quadrature. The range is split at every
/// breakpoint inside it; a semi-infinite tail [b, inf) is mapped to [0, 1)
/// through x = b + u / (1 - u). Stops when the summed error estimate is below
/// max(abs_tol, rel_tol * |value|). A non-finite integrand sample throws
/// NumericError naming the abscissa.
QuadResult integrate(const ScalarFn& f, const Interval& range,
                     const QuadOptions& options,
                     std::span<const double> breakpoints = {});

/// Convenience form: rel_tol = tol, abs_tol = tol * 1e-3.
QuadResult integrate(const ScalarFn& f, const Interval& range, double tol,
                     std::span<const double> breakpoints = {});

}  // namespace mpmue::numeric

#endif  // MPMUE_NUMERIC_HPP
