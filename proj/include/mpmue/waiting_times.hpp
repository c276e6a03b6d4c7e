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

/// \file waiting_times.hpp
/// Inter-arrival and arrival-time laws of the mixed process.
///
/// tau = eta / xi with eta ~ Exp(1): the Exp-Max-U-Exp law. Its survival
/// function decays like 2 lambda / (a t^2), so E tau^q is finite exactly for
/// q < 2. T_n = Gamma(n, 1) / xi, one xi shared across the n summands: the
/// Erlang-Max-U-Exp law.

#ifndef MPMUE_WAITING_TIMES_HPP
#define MPMUE_WAITING_TIMES_HPP

#include <span>

#include "mpmue/maxuexp.hpp"
#include "mpmue/random.hpp"

namespace mpmue::waiting {

double emue_pdf(const Params& p, double t);
double emue_cdf(const Params& p, double t);
double emue_sample(const Params& p, RandomStream& s);

/// E tau^q = Gamma(q + 1) E xi^-q for q in (0, 2).
double emue_moment(const Params& p, double q);

/// Joint density of (tau, xi).
double biv_pdf(const Params& p, double t, double x);

/// Density of xi given tau = t, as biv_pdf / emue_pdf.
double cond_density_xi_given_tau(const Params& p, double t, double x);

/// E(tau | xi = x) = 1 / x.
double regress_tau_on_xi(double x);

/// E(xi | tau = t), integrating x against the conditional density.
double regress_xi_on_tau(const Params& p, double t);

/// Joint density of k conditionally iid Exp(xi) waiting times; depends on
/// the times only through their sum. Zero if any component is <= 0.
double mvar2_pdf(const Params& p, std::span<const double> ts);

/// Density of T_n, n >= 1.
double erlang_pdf(const Params& p, unsigned n, double t);

/// CDF of T_n by quadrature of erlang_pdf (no closed form is used).
double erlang_cdf(const Params& p, unsigned n, double t);

double erlang_sample(const Params& p, unsigned n, RandomStream& s);

/// E T_n^q = Gamma(q + n) / Gamma(n) * E xi^-q for q in (0, 2).
double erlang_moment(const Params& p, unsigned n, double q);

}  // namespace mpmue::waiting

#endif  // MPMUE_WAITING_TIMES_HPP
