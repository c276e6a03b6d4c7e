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

#include <cmath>
#include <limits>
#include <string>

#include "mpmue/errors.hpp"
#include "mpmue/numeric.hpp"

namespace mpmue::numeric {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

void check_args(double alpha, double x, const char* who) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError(std::string(who) + ": alpha must be positive and finite");
  }
  if (!(x >= 0.0) || std::isnan(x)) {
    throw DomainError(std::string(who) + ": x must be non-negative");
  }
}

// P(alpha, x) by the power series
//   P = x^a e^-x / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n)).
// Converges for all x; used for x < alpha + 1.
double lower_series(double alpha, double x) {
  double term = 1.0;
  double sum = 1.0;
  double ap = alpha;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      return sum * std::exp(alpha * std::log(x) - x - std::lgamma(alpha + 1.0));
    }
  }
  throw NumericError("gamma_p: series did not converge");
}

// Q(alpha, x) by the Legendre continued fraction, modified Lentz evaluation.
// Used for x >= alpha + 1.
double upper_continued_fraction(double alpha, double x) {
  double b = x + 1.0 - alpha;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - alpha);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      return h * std::exp(alpha * std::log(x) - x - std::lgamma(alpha));
    }
  }
  throw NumericError("gamma_q: continued fraction did not converge");
}

}  // namespace

double log_gamma(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("log_gamma: alpha must be positive");
  return std::lgamma(alpha);
}

double gamma_p(double alpha, double x) {
  check_args(alpha, x, "gamma_p");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < alpha + 1.0) return lower_series(alpha, x);
  return 1.0 - upper_continued_fraction(alpha, x);
}

double gamma_q(double alpha, double x) {
  check_args(alpha, x, "gamma_q");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < alpha + 1.0) return 1.0 - lower_series(alpha, x);
  return upper_continued_fraction(alpha, x);
}

double gamma_lower(double alpha, double x) {
  return gamma_p(alpha, x) * std::exp(log_gamma(alpha));
}

double gamma_upper(double alpha, double x) {
  return gamma_q(alpha, x) * std::exp(log_gamma(alpha));
}

}  // namespace mpmue::numeric
