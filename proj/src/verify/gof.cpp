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

#include "mpmue/gof.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mpmue/errors.hpp"

namespace mpmue::gof {

double ks_statistic(std::span<const double> values, const numeric::ScalarFn& cdf) {
  if (values.empty()) throw DomainError("ks_statistic: empty sample");
  std::vector<double> xs(values.begin(), values.end());
  std::sort(xs.begin(), xs.end());
  for (auto& x : xs) x = cdf(x);
  return ks_statistic_sorted(xs);
}

double ks_statistic_sorted(std::span<const double> cdf_at_sorted) {
  if (cdf_at_sorted.empty()) throw DomainError("ks_statistic: empty sample");
  const double n = static_cast<double>(cdf_at_sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < cdf_at_sorted.size(); ++i) {
    const double f = cdf_at_sorted[i];
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  if (n == 0) throw DomainError("ks_pvalue: n must be positive");
  const double rn = std::sqrt(static_cast<double>(n));
  const double lam = (rn + 0.12 + 0.11 / rn) * d;
  if (lam < 0.2) return 1.0;
  // Q(lam) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lam^2)
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lam * lam);
    sum += term;
    if (std::fabs(term) < 1e-16 * std::fabs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi2_statistic(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) {
    throw DomainError("chi2_statistic: observed and expected differ in length");
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] > 0.0) {
      const double diff = observed[i] - expected[i];
      stat += diff * diff / expected[i];
    } else if (observed[i] > 0.0) {
      return numeric::kInf;
    }
  }
  return stat;
}

double chi2_pvalue(double stat, double dof) {
  if (!(dof > 0.0)) throw DomainError("chi2_pvalue: dof must be positive");
  if (std::isinf(stat)) return 0.0;
  return numeric::gamma_q(0.5 * dof, 0.5 * stat);
}

}  // namespace mpmue::gof
