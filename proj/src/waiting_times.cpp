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

#include "mpmue/waiting_times.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "mpmue/errors.hpp"
#include "mpmue/numeric.hpp"

namespace mpmue::waiting {
namespace {

constexpr double kQuadTol = 1e-12;

// (1 - e^-z - z e^-z) / z^2 = sum_k (-z)^k / (k! (k + 2)).
double gamma2_over_square(double z) {
  if (z < 1e-3) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 0; k < 8; ++k) {
      sum += term / (k + 2);
      term *= -z / (k + 1);
    }
    return sum;
  }
  return (-std::expm1(-z) - z * std::exp(-z)) / (z * z);
}

// 1 - (1 - e^-z) / z = sum_{k>=1} (-1)^(k+1) z^k / (k+1)!.
double one_minus_exprel(double z) {
  if (z < 0.1) {
    double term = z / 2.0;
    double sum = 0.0;
    for (int k = 1; k < 14; ++k) {
      sum += term;
      term *= -z / (k + 2);
    }
    return sum;
  }
  return (z + std::expm1(-z)) / z;
}

}  // namespace

double emue_pdf(const Params& p, double t) {
  if (!(t > 0.0)) return 0.0;
  const double a = p.a();
  const double lam = p.lambda();
  const double s = lam + t;
  const double es = std::exp(-a * s);
  if (a * t < 1.0) {
    return a * gamma2_over_square(a * t) + (lam - t) / (a * s * s * s) * (-std::expm1(-a * s)) +
           t / (s * s) * es;
  }
  // Same expression with the two leading algebraic terms combined, which
  // avoids their cancellation as t grows (the density decays like t^-3).
  const double lead = (lam * lam * lam + 3.0 * lam * lam * t + 4.0 * lam * t * t) /
                      (a * t * t * s * s * s);
  const double et = std::exp(-a * t);
  return lead - et * (1.0 + a * t) / (a * t * t) - (lam - t) * es / (a * s * s * s) +
         t * es / (s * s);
}

double emue_cdf(const Params& p, double t) {
  if (!(t > 0.0)) return 0.0;
  const double a = p.a();
  const double s = p.lambda() + t;
  return one_minus_exprel(a * t) + t * (-std::expm1(-a * s)) / (a * s * s);
}

double emue_sample(const Params& p, RandomStream& s) {
  const double eta = stream_exp(s, 1.0);
  const double xi = maxuexp::sample(p, s);
  return eta / xi;
}

double emue_moment(const Params& p, double q) { return erlang_moment(p, 1, q); }

double biv_pdf(const Params& p, double t, double x) {
  if (!(t > 0.0) || !(x > 0.0)) return 0.0;
  const double lam = p.lambda();
  if (x <= p.a()) {
    const double lx = lam * x;
    return x * std::exp(-t * x) / p.a() * (-std::expm1(-lx) + lx * std::exp(-lx));
  }
  return lam * x * std::exp(-(lam + t) * x);
}

double cond_density_xi_given_tau(const Params& p, double t, double x) {
  if (!(t > 0.0)) throw DomainError("cond_density_xi_given_tau: t must be positive");
  return biv_pdf(p, t, x) / emue_pdf(p, t);
}

double regress_tau_on_xi(double x) {
  if (!(x > 0.0)) throw DomainError("regress_tau_on_xi: x must be positive");
  return 1.0 / x;
}

double regress_xi_on_tau(const Params& p, double t) {
  if (!(t > 0.0)) throw DomainError("regress_xi_on_tau: t must be positive");
  const double norm = emue_pdf(p, t);
  const std::array<double, 1> cut{p.a()};
  const auto r = numeric::integrate([&](double x) { return x * biv_pdf(p, t, x) / norm; },
                                    numeric::Interval::half_line(0.0), kQuadTol, cut);
  return r.value;
}

double mvar2_pdf(const Params& p, std::span<const double> ts) {
  if (ts.empty()) throw DomainError("mvar2_pdf: need at least one component");
  std::vector<double> sorted(ts.begin(), ts.end());
  std::sort(sorted.begin(), sorted.end());
  if (!(sorted.front() > 0.0)) return 0.0;
  double total = 0.0;
  for (double t : sorted) total += t;
  return maxuexp::tilted_moment(p, total, static_cast<unsigned>(sorted.size()));
}

double erlang_pdf(const Params& p, unsigned n, double t) {
  if (n == 0) throw DomainError("erlang_pdf: n must be >= 1");
  if (!(t > 0.0)) return 0.0;
  return static_cast<double>(n) * maxuexp::tilted_moment_scaled(p, t, n) / (t * t);
}

double erlang_cdf(const Params& p, unsigned n, double t) {
  if (n == 0) throw DomainError("erlang_cdf: n must be >= 1");
  if (!(t > 0.0)) return 0.0;
  const auto r = numeric::integrate([&](double u) { return erlang_pdf(p, n, u); },
                                    numeric::Interval(0.0, t), kQuadTol);
  return std::min(1.0, r.value);
}

double erlang_sample(const Params& p, unsigned n, RandomStream& s) {
  if (n == 0) throw DomainError("erlang_sample: n must be >= 1");
  const double theta = stream_gamma_int(s, n);
  const double xi = maxuexp::sample(p, s);
  return theta / xi;
}

double erlang_moment(const Params& p, unsigned n, double q) {
  if (n == 0) throw DomainError("erlang_moment: n must be >= 1");
  if (!(q > 0.0)) throw DomainError("erlang_moment: q must be positive");
  if (q >= 2.0) throw DivergenceError("erlang_moment: E T_n^q diverges for q >= 2");
  const double nn = static_cast<double>(n);
  return std::exp(numeric::log_gamma(q + nn) - numeric::log_gamma(nn)) * maxuexp::neg_moment(p, q);
}

}  // namespace mpmue::waiting
