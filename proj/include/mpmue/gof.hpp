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

/// \file gof.hpp
/// Goodness-of-fit statistics for the Monte Carlo checks.

#ifndef MPMUE_GOF_HPP
#define MPMUE_GOF_HPP

#include <span>

#include "mpmue/numeric.hpp"

namespace mpmue::gof {

/// sup |F_n - F| over the sample. `values` need not be sorted.
double ks_statistic(std::span<const double> values, const numeric::ScalarFn& cdf);

/// sup |F_n - F| given F evaluated at the sorted sample, for CDFs that are
/// cheaper to accumulate piecewise than to evaluate pointwise.
double ks_statistic_sorted(std::span<const double> cdf_at_sorted);

/// Asymptotic P(D_n > d) with Stephens' small-sample correction.
double ks_pvalue(double d, std::size_t n);

/// Pearson statistic; cells with expected count 0 must also be empty.
double chi2_statistic(std::span<const double> observed, std::span<const double> expected);

/// Upper tail of chi-square with `dof` degrees of freedom.
double chi2_pvalue(double stat, double dof);

}  // namespace mpmue::gof

#endif  // MPMUE_GOF_HPP
