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

#include "mpmue/maxuexp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mpmue/errors.hpp"
#include "mpmue/numeric.hpp"

namespace mpmue {

Params::Params(double a, double lambda) : a_(a), lambda_(lambda) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("Params: a must be positive and finite");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("Params: lambda must be positive and finite");
  }
}

std::string Params::to_string() const {
  std::ostringstream out;
  out.precision(12);
  out << "a=" << a_ << ",lambda=" << lambda_;
  return out.str();
}

namespace maxuexp {
namespace {

constexpr double kQuadTol = 1e-12;

// 1 - e^{-y}, accurate for small y.
double one_minus_exp(double y) { return -std::expm1(-y); }

// Integral of x^k pdf(x) over (0, inf) by quadrature, split at a.
double moment_by_quadrature(const Params& p, double k) {
  const std::array<double, 1> cut{p.a()};
  const auto r = numeric::integrate(
      [&](double x) { return std::pow(x, k) * pdf(p, x); },
      numeric::Interval::half_line(0.0), kQuadTol, cut);
  return r.value;
}

}  // namespace

double cdf(const Params& p, double x) {
  if (!(x > 0.0)) return 0.0;
  const double e = one_minus_exp(p.lambda() * x);
  if (x <= p.a()) return (x / p.a()) * e;
  return e;
}

double pdf(const Params& p, double x) {
  if (!(x > 0.0)) return 0.0;
  const double lx = p.lambda() * x;
  if (x <= p.a()) return (one_minus_exp(lx) + lx * std::exp(-lx)) / p.a();
  return p.lambda() * std::exp(-lx);
}

double hazard(const Params& p, double x) {
  if (!(x > 0.0)) return 0.0;
  if (x > p.a()) return p.lambda();
  const double lx = p.lambda() * x;
  const double num = one_minus_exp(lx) + lx * std::exp(-lx);
  const double den = p.a() - x * one_minus_exp(lx);
  return num / den;
}

Params scale_params(const Params& p, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("scale_params: k must be positive");
  }
  return Params(k * p.a(), p.lambda() / k);
}

double quantile(const Params& p, double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile: q must lie in (0, 1)");
  const double hi = p.a() - std::log1p(-q) / p.lambda() + 1.0;
  return numeric::find_root([&](double x) { return cdf(p, x) - q; },
                            numeric::Interval(0.0, hi), 1e-15 * hi);
}

double sample(const Params& p, RandomStream& s) {
  const double uniform = p.a() * stream_uniform(s);
  const double expo = stream_exp(s, p.lambda());
  return std::max(uniform, expo);
}

double moment(const Params& p, double k) {
  if (!(k > -1.0) || !std::isfinite(k)) {
    throw DomainError("moment: order must exceed -1");
  }
  if (k == 0.0) return 1.0;
  if (k < 0.0) return moment_by_quadrature(p, k);
  const double a = p.a();
  const double lam = p.lambda();
  const double x = a * lam;
  return std::pow(a, k) / (k + 1.0) +
         k / (a * std::pow(lam, k + 1.0)) * numeric::gamma_lower(k + 1.0, x) +
         k / std::pow(lam, k) * numeric::gamma_upper(k, x);
}

double mean(const Params& p) {
  const double a = p.a();
  const double lam = p.lambda();
  return a / 2.0 + one_minus_exp(lam * a) / (a * lam * lam);
}

double variance(const Params& p) {
  const double a = p.a();
  const double lam = p.lambda();
  const double e = std::exp(-lam * a);
  const double d = one_minus_exp(lam * a);
  return a * a / 12.0 - (1.0 + e) / (lam * lam) + 4.0 * d / (a * lam * lam * lam) -
         d * d / (a * a * lam * lam * lam * lam);
}

double neg_moment(const Params& p, double q) {
  if (!(q > 0.0)) throw DomainError("neg_moment: q must be positive");
  if (q >= 2.0) {
    throw DivergenceError("neg_moment: E xi^-q diverges for q >= 2 (pdf ~ 2 lambda x / a at 0)");
  }
  const double a = p.a();
  const double lam = p.lambda();
  const double y = lam * a;
  if (q < 1.0) {
    const double s = 1.0 - q;
    return 1.0 / (std::pow(a, q) * s) +
           std::pow(lam, q - 1.0) / a *
               ((q + y) * numeric::gamma_upper(s, y) - std::pow(y, s) * std::exp(-y) -
                q * std::exp(numeric::log_gamma(s)));
  }

  // (0, a]: with x = w^beta, beta = 1/(2-q), x^-q pdf(x) dx becomes
  // beta * (pdf(x) / x) dw, bounded at w = 0 since pdf(x) / x -> 2 lambda / a.
  const double beta = 1.0 / (2.0 - q);
  const auto near = numeric::integrate(
      [&](double w) {
        const double x = std::pow(w, beta);
        if (x == 0.0) return beta * 2.0 * lam / a;
        return beta * pdf(p, x) / x;
      },
      numeric::Interval(0.0, std::pow(a, 2.0 - q)), kQuadTol);
  const auto tail = numeric::integrate(
      [&](double x) { return std::pow(x, -q) * lam * std::exp(-lam * x); },
      numeric::Interval::half_line(a), kQuadTol);
  return near.value + tail.value;
}

double lst(const Params& p, double t) {
  if (!(t > 0.0)) throw DomainError("lst: t must be positive");
  const double a = p.a();
  const double s = p.lambda() + t;
  return one_minus_exp(t * a) / (a * t) - t * one_minus_exp(s * a) / (a * s * s);
}

double tilted_moment_scaled(const Params& p, double s, unsigned k) {
  if (!(s > 0.0)) throw DomainError("tilted_moment: s must be positive");
  const double a = p.a();
  const double lam = p.lambda();
  const double sigma = s + lam;
  const double kk = static_cast<double>(k);
  const double ratio = std::pow(s / sigma, kk + 1.0);
  double value = numeric::gamma_p(kk + 1.0, a * s) / a +
                 numeric::gamma_p(kk + 1.0, a * sigma) * (lam * kk - s) * ratio / (a * sigma);
  if (k > 0) value += lam * numeric::gamma_q(kk, a * sigma) * ratio;
  return value;
}

double tilted_moment(const Params& p, double s, unsigned k) {
  const double kk = static_cast<double>(k);
  return std::exp(numeric::log_gamma(kk + 1.0) - (kk + 1.0) * std::log(s)) *
         tilted_moment_scaled(p, s, k);
}

}  // namespace maxuexp
}  // namespace mpmue
