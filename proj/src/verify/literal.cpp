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

#include "mpmue/errors.hpp"
#include "mpmue/numeric.hpp"
#include "mpmue/verify.hpp"

namespace mpmue::verify::literal {
namespace {

using numeric::gamma_lower;
using numeric::gamma_upper;

// The shared brace of the tau and T_n moment formulas, with the sign of the
// (lambda a)^{1-p} e^{-lambda a} term as a parameter.
double moment_brace(const Params& p, double q, double sign) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("literal moment: need 0 < p < 1");
  const double a = p.a();
  const double lam = p.lambda();
  const double la = lam * a;
  return 1.0 / (std::pow(a, q) * (1.0 - q)) +
         std::pow(lam, q - 1.0) / a *
             ((q + la) * gamma_upper(1.0 - q, la) + sign * std::pow(la, 1.0 - q) * std::exp(-la) -
              q * std::tgamma(1.0 - q));
}

double variance_with(const Params& p, double sign) {
  const double a = p.a();
  const double lam = p.lambda();
  const double om = -std::expm1(-lam * a);
  return a * a / 12.0 - (1.0 + std::exp(-lam * a)) / (lam * lam) + 4.0 * om / (a * lam * lam * lam) +
         sign * om * om / (a * a * lam * lam * lam * lam);
}

// Terms two and three of the pgf at u = m (1 - z); `a_factor` multiplies
// the (lambda + u) e^{-(lambda + u) a} term.
double pgf_tail(const Params& p, double u, double a_factor) {
  const double a = p.a();
  const double lam = p.lambda();
  const double s = lam + u;
  const double es = std::exp(-s * a);
  return -(1.0 - es - lam * a * es) / (a * s) + lam / (a * s * s) * (1.0 - es - a_factor * s * es);
}

double clock_arg(double m, double z) {
  if (!(m > 0.0)) throw DomainError("literal pgf: m must be positive");
  if (!(std::fabs(z) < 1.0)) throw DomainError("literal pgf: need |z| < 1");
  return m * (1.0 - z);
}

// Denominator shared by the published posterior forms:
// gamma(n+1, a m)/m + m^n gamma(n+1, a s)(n lambda - m)/s^{n+2}
//   + n a lambda m^n Gamma(n, a s)/s^{n+1}, s = lambda + m.
double posterior_denominator(const Params& p, double m, int n) {
  const double a = p.a();
  const double lam = p.lambda();
  const double s = lam + m;
  const double nn = n;
  double d = gamma_lower(nn + 1.0, a * m) / m +
             std::pow(m, nn) * gamma_lower(nn + 1.0, a * s) * (nn * lam - m) / std::pow(s, nn + 2.0);
  if (n > 0) d += nn * a * lam * std::pow(m, nn) * gamma_upper(nn, a * s) / std::pow(s, nn + 1.0);
  return d;
}

// gamma(k+1, a m)/(a m^{k+1}) + gamma(k+1, a s)(lambda k - m)/(a s^{k+2})
//   + lambda k Gamma(k, a s)/s^{k+1}
double tilted_sum(const Params& p, double m, int k) {
  const double a = p.a();
  const double lam = p.lambda();
  const double s = lam + m;
  const double kk = k;
  double v = gamma_lower(kk + 1.0, a * m) / (a * std::pow(m, kk + 1.0)) +
             gamma_lower(kk + 1.0, a * s) * (lam * kk - m) / (a * std::pow(s, kk + 2.0));
  if (k > 0) v += lam * kk * gamma_upper(kk, a * s) / std::pow(s, kk + 1.0);
  return v;
}

}  // namespace

double lst(const Params& p, double t) {
  if (!(t > 0.0)) throw DomainError("literal lst: t must be positive");
  const double a = p.a();
  const double s = p.lambda() + t;
  return -std::expm1(-p.lambda() * a) / (a * t) - t * -std::expm1(-s * a) / (a * s * s);
}

double lst_corrected(const Params& p, double t) {
  if (!(t > 0.0)) throw DomainError("literal lst: t must be positive");
  const double a = p.a();
  const double s = p.lambda() + t;
  return -std::expm1(-t * a) / (a * t) - t * -std::expm1(-s * a) / (a * s * s);
}

double variance_plus(const Params& p) { return variance_with(p, 1.0); }
double variance_minus(const Params& p) { return variance_with(p, -1.0); }

double tau_moment(const Params& p, double q) {
  return std::tgamma(q + 1.0) * moment_brace(p, q, 1.0);
}

double erlang_moment(const Params& p, unsigned n, double q) {
  if (n == 0) throw DomainError("literal erlang_moment: n must be >= 1");
  const double nn = n;
  return std::exp(std::lgamma(q + nn) - std::lgamma(nn)) / std::pow(p.lambda(), q) *
         moment_brace(p, q, 1.0);
}

double pgf(const Params& p, double m, double z) {
  const double u = clock_arg(m, z);
  return -std::expm1(-p.lambda() * p.a()) / (p.a() * u) + pgf_tail(p, u, 1.0);
}

double pgf_first_term_fixed(const Params& p, double m, double z) {
  const double u = clock_arg(m, z);
  return -std::expm1(-u * p.a()) / (p.a() * u) + pgf_tail(p, u, 1.0);
}

double pgf_corrected(const Params& p, double m, double z) {
  const double u = clock_arg(m, z);
  return -std::expm1(-u * p.a()) / (p.a() * u) + pgf_tail(p, u, p.a());
}

double cond_density(const Params& p, double t, double x) {
  if (!(t > 0.0)) throw DomainError("literal cond_density: t must be positive");
  if (!(x > 0.0)) return 0.0;
  const double a = p.a();
  const double lam = p.lambda();
  const double s = lam + t;
  const double s3 = s * s * s;
  const double eas = std::exp(-a * s);
  const double den = s3 * (1.0 - std::exp(-a * t) - a * t * lam * std::exp(-a * t)) +
                     t * t * (lam - t) * (1.0 - eas) + a * s * t * t * t * eas;
  if (x <= a) {
    const double lx = lam * x;
    return x * t * t * s3 * std::exp(-t * x) * (1.0 - std::exp(-lx) + lx * std::exp(-lx)) / den;
  }
  return a * lam * x * t * t * s3 * std::exp(-s * x) / den;
}

double regress_xi_on_tau(const Params& p, double t) {
  if (!(t > 0.0)) throw DomainError("literal regress_xi_on_tau: t must be positive");
  const double a = p.a();
  const double lam = p.lambda();
  const double s = lam + t;
  const double t3 = t * t * t;
  const double at1 = a * t + 1.0;
  const double as1 = a * s + 1.0;
  const double num =
      std::exp(-a * t) * (2.0 * std::exp(a * t) * (1.0 - 6.0 * lam * t3) - at1 * at1 - 1.0 +
                          std::exp(-a * lam) * t3 *
                              (as1 * as1 + lam * a * a * s - 4.0 * a * lam + 1.0));
  const double eas = std::exp(-a * s);
  const double den = t * s * s * s * (1.0 - std::exp(-a * t) - a * t * lam * std::exp(-a * t)) +
                     t3 * (lam - t) * (1.0 - eas) + a * s * t3 * t * eas;
  return num / den;
}

double regress_xi_on_tau_corrected(const Params& p, double t) {
  return maxuexp::tilted_moment(p, t, 2) / maxuexp::tilted_moment(p, t, 1);
}

double posterior(const Params& p, double m, int n, double x) {
  if (!(m > 0.0) || n < 0) throw DomainError("literal posterior: need m > 0 and n >= 0");
  if (!(x > 0.0)) return 0.0;
  const double a = p.a();
  const double lam = p.lambda();
  const double nn = n;
  const double pre = std::pow(m, nn + 1.0) * std::pow(x, nn) / posterior_denominator(p, m, n);
  if (x <= a) {
    const double lx = lam * x;
    return pre * std::exp(-m * x) * (1.0 - std::exp(-lx) + lx * std::exp(-lx));
  }
  return pre * a * lam * std::exp(-x * (m - lam));
}

double posterior_mean(const Params& p, double m, int n) {
  if (!(m > 0.0) || n < 0) throw DomainError("literal posterior_mean: need m > 0 and n >= 0");
  return tilted_sum(p, m, n + 1) / tilted_sum(p, m, n);
}

double factorial_moment(const Params& p, double m, unsigned k) {
  if (k == 0) throw DomainError("literal factorial_moment: k must be >= 1");
  const double a = p.a();
  const double lam = p.lambda();
  const double kk = k;
  const double mk = std::pow(m, kk);
  return std::pow(a * m, kk) / (kk + 1.0) + kk * mk * gamma_lower(kk + 1.0, a * lam) / (a * std::pow(lam, kk + 1.0)) +
         kk * mk * gamma_upper(kk, lam * a) / std::pow(lam, kk);
}

double moment(const Params& p, double k) {
  if (!(k > 0.0)) throw DomainError("literal moment: k must be positive");
  const double a = p.a();
  const double lam = p.lambda();
  return std::pow(a, k) / (k + 1.0) + k * gamma_lower(k + 1.0, a * lam) / (a * std::pow(lam, k + 1.0)) +
         k * gamma_upper(k, lam * a) / std::pow(lam, k);
}

double pmf_unit_clock(const Params& p, int n) {
  if (n < 0) throw DomainError("literal pmf: n must be >= 0");
  const double a = p.a();
  const double lam = p.lambda();
  const double l1 = lam + 1.0;
  const double nn = n;
  double v = gamma_lower(nn + 1.0, a) / a +
             gamma_lower(nn + 1.0, a * l1) * (nn * lam - 1.0) / (a * std::pow(l1, nn + 2.0));
  if (n > 0) v += nn * lam * gamma_upper(nn, a * l1) / std::pow(l1, nn + 1.0);
  return v / std::exp(std::lgamma(nn + 1.0));
}

}  // namespace mpmue::verify::literal
