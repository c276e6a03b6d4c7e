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

/// \file verify.hpp
/// Oracle harness. Every closed form in maxuexp, waiting and mixed is
/// compared against quadrature or simulation, and a discrepancy ledger
/// records how published variants of some formulas fare against the same
/// oracles.

#ifndef MPMUE_VERIFY_HPP
#define MPMUE_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpmue/maxuexp.hpp"
#include "mpmue/numeric.hpp"
#include "mpmue/random.hpp"

namespace mpmue::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double reference = 0.0;
  double tol = 0.0;
  std::string detail;
  /// Library operations this check exercises, e.g. "maxuexp::pdf".
  std::vector<std::string> covers;
};

/// Mass of `pdf` over `support` must be 1 within tol. Breakpoints are
/// passed through to the quadrature (use the uniform endpoint a).
CheckResult check_density(const std::string& name, const numeric::ScalarFn& pdf,
                          const numeric::Interval& support, double tol,
                          std::span<const double> breakpoints = {});

/// |closed - oracle| <= tol * max(1, |oracle|).
CheckResult check_value(const std::string& name, double closed, double oracle, double tol);

using Sampler = std::function<double(RandomStream&)>;

struct McSpec {
  std::string name;
  Sampler sampler;
  /// Applied to each draw; identity when empty.
  numeric::ScalarFn statistic;
  double closed_form = 0.0;
  /// False when Var(statistic) diverges. Mean mode is then refused and the
  /// check compares the empirical CDF of the raw draws against `cdf` at
  /// `quantile_points` instead.
  bool finite_variance = true;
  numeric::ScalarFn cdf;
  std::vector<double> quantile_points;
  std::size_t n_draws = 100000;
  std::uint64_t seed = 0;
  double z_limit = 4.0;
};

/// Mean mode: value = |mean - closed_form| / SE. Quantile mode: value is
/// the largest binomial z-score over the quantile points. Throws
/// DivergenceError for an infinite-variance statistic with no CDF.
CheckResult check_mc(const McSpec& spec);

struct McMean {
  double mean = 0.0;
  double std_error = 0.0;
};
McMean mc_mean(const Sampler& sampler, const numeric::ScalarFn& statistic, std::size_t n_draws,
               std::uint64_t seed);

// --- Discrepancy ledger ---------------------------------------------------

enum class Verdict { kPaperOk, kCorrectedAdopted, kUnresolved };
std::string to_string(Verdict v);

struct LedgerPoint {
  std::string params;
  /// Empty when the published form asserts divergence.
  std::optional<double> paper_literal;
  double corrected = 0.0;
  double oracle = 0.0;
  double tol = 0.0;

  double abs_dev_literal() const;
  double abs_dev_corrected() const;
};

struct DiscrepancyRecord {
  std::string formula_id;
  /// Fields below mirror the most discriminating point.
  std::string params;
  std::optional<double> paper_literal;
  double corrected = 0.0;
  double oracle = 0.0;
  double abs_dev_literal = 0.0;
  double abs_dev_corrected = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::kUnresolved;
  std::vector<LedgerPoint> points;
};

/// A point discriminates when literal and corrected differ by more than
/// 10 tol. Discriminating points vote corrected_adopted (corrected within
/// tol, literal off by > 10 tol) or paper_ok (the reverse); anything else,
/// or a split vote, is unresolved. With no discriminating point the verdict
/// is paper_ok when the literal form is within tol everywhere.
DiscrepancyRecord adjudicate(std::string formula_id, std::vector<LedgerPoint> points);

struct VerifyOptions {
  /// Tolerance for closed form vs quadrature checks.
  double tol = 1e-8;
  std::size_t mc_draws = 200000;
  std::size_t ledger_mc_draws = 1000000;
  std::uint64_t seed = 20240611;
};

std::vector<DiscrepancyRecord> run_ledger(const VerifyOptions& options = {});

/// JSON array of records with fields formula_id, params, paper_literal,
/// corrected, oracle, abs_dev_literal, abs_dev_corrected, verdict, tol,
/// points. Infinite or absent values are written as null.
std::string ledger_json(std::span<const DiscrepancyRecord> records);

// --- Coverage and full run --------------------------------------------------

/// Closed-form operations that must be exercised by at least one check.
const std::vector<std::string>& required_operations();
std::vector<std::string> uncovered_operations(std::span<const CheckResult> checks);

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<DiscrepancyRecord> ledger;
  bool all_passed() const;
};

/// All oracle checks (including a final "coverage" check) plus the ledger.
VerifyReport run_all(const VerifyOptions& options = {});

std::vector<CheckResult> run_checks(const VerifyOptions& options = {});

// --- Published variants ----------------------------------------------------

/// Formulas as published, evaluated literally, plus the corrected forms that
/// do not live elsewhere in the library. Used only by the ledger and tests.
namespace literal {

/// E e^{-t xi} with first term (1 - e^{-lambda a}) / (a t).
double lst(const Params& p, double t);
/// Same with first term (1 - e^{-t a}) / (a t).
double lst_corrected(const Params& p, double t);

/// Var xi with the last term added instead of subtracted.
double variance_plus(const Params& p);
/// Var xi with the last term subtracted.
double variance_minus(const Params& p);

/// E tau^p, p in (0, 1), with +(lambda a)^{1-p} e^{-lambda a} in the brace.
double tau_moment(const Params& p, double q);
/// E T_n^p: tau_moment's brace times Gamma(p + n) / ((n - 1)! lambda^p).
double erlang_moment(const Params& p, unsigned n, double q);

/// E z^N at clock value m, three-term form with first term
/// (1 - e^{-lambda a}) / (a u) and last exponent factor (lambda + u).
double pgf(const Params& p, double m, double z);
/// First term replaced by (1 - e^{-a u}) / (a u).
double pgf_first_term_fixed(const Params& p, double m, double z);
/// Both the first term and the missing factor a in the last term fixed.
double pgf_corrected(const Params& p, double m, double z);

/// Density of xi given tau = t with a lambda in the a t e^{-a t} term of the
/// denominator.
double cond_density(const Params& p, double t, double x);
/// E(xi | tau = t) from the published rational-exponential expression.
double regress_xi_on_tau(const Params& p, double t);
/// E(xi | tau = t) = T(t, 2) / T(t, 1).
double regress_xi_on_tau_corrected(const Params& p, double t);

/// Density of xi given N = n with prefactor m^{n+1} and tail exponent
/// -x (m - lambda).
double posterior(const Params& p, double m, int n, double x);
/// E(xi | N = n) as the published ratio of incomplete-gamma sums.
double posterior_mean(const Params& p, double m, int n);
/// E[N]_k from the published three-term sum.
double factorial_moment(const Params& p, double m, unsigned k);
/// E xi^k from the published three-term sum, k > 0.
double moment(const Params& p, double k);
/// P(N = n) for a unit clock and parameters (a, lambda).
double pmf_unit_clock(const Params& p, int n);

}  // namespace literal

}  // namespace mpmue::verify

#endif  // MPMUE_VERIFY_HPP
