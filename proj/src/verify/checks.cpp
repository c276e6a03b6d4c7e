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

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "mpmue/errors.hpp"
#include "mpmue/gof.hpp"
#include "mpmue/mixed_poisson.hpp"
#include "mpmue/verify.hpp"
#include "mpmue/waiting_times.hpp"

namespace mpmue::verify {
namespace {

const numeric::QuadOptions kOracleQuad{1e-14, 1e-12, 4000};

double quad(const numeric::ScalarFn& f, const numeric::Interval& range,
            std::span<const double> cuts = {}) {
  return numeric::integrate(f, range, kOracleQuad, cuts).value;
}

double quad_xi(const Params& p, const numeric::ScalarFn& g) {
  const std::array<double, 1> cut{p.a()};
  return quad([&](double x) { return g(x) * maxuexp::pdf(p, x); },
              numeric::Interval::half_line(0.0), cut);
}

std::string label(const Params& p) { return p.to_string(); }

CheckResult tagged(CheckResult r, std::vector<std::string> ops) {
  r.covers = std::move(ops);
  return r;
}

// Largest relative deviation over a set of (closed, oracle) pairs.
CheckResult check_pairs(const std::string& name,
                        const std::vector<std::pair<double, double>>& pairs, double tol) {
  CheckResult worst;
  double worst_dev = -1.0;
  for (const auto& [closed, oracle] : pairs) {
    auto r = check_value(name, closed, oracle, tol);
    const double dev = std::fabs(closed - oracle) / std::max(1.0, std::fabs(oracle));
    if (dev > worst_dev || !r.passed) {
      worst_dev = dev;
      worst = r;
      if (!r.passed) break;
    }
  }
  return worst;
}

void add_point_checks(const Params& p, double tol, std::vector<CheckResult>& out) {
  const std::string at = " " + label(p);
  const double a = p.a();
  const std::array<double, 1> cut{a};
  const auto half = numeric::Interval::half_line(0.0);

  out.push_back(tagged(check_density("maxuexp pdf mass" + at,
                                     [&](double x) { return maxuexp::pdf(p, x); }, half, tol, cut),
                       {"maxuexp::pdf"}));

  {
    std::vector<std::pair<double, double>> pairs;
    for (double x : {0.5 * a, a, 2.0 * a}) {
      const std::array<double, 1> inner{std::min(a, x)};
      const double oracle = quad([&](double u) { return maxuexp::pdf(p, u); },
                                 numeric::Interval(0.0, x), x > a ? std::span<const double>(inner)
                                                                  : std::span<const double>());
      pairs.emplace_back(maxuexp::cdf(p, x), oracle);
    }
    out.push_back(tagged(check_pairs("maxuexp cdf vs integral of pdf" + at, pairs, tol),
                         {"maxuexp::cdf"}));
  }
  {
    std::vector<std::pair<double, double>> pairs;
    for (double x : {0.5 * a, 2.0 * a}) {
      const std::array<double, 1> inner{a};
      const double survival =
          quad([&](double u) { return maxuexp::pdf(p, u); }, numeric::Interval::half_line(x),
               x < a ? std::span<const double>(inner) : std::span<const double>());
      pairs.emplace_back(maxuexp::hazard(p, x), maxuexp::pdf(p, x) / survival);
    }
    out.push_back(tagged(check_pairs("maxuexp hazard" + at, pairs, tol), {"maxuexp::hazard"}));
  }
  {
    std::vector<std::pair<double, double>> pairs;
    for (double q : {0.1, 0.5, 0.9}) pairs.emplace_back(maxuexp::cdf(p, maxuexp::quantile(p, q)), q);
    out.push_back(tagged(check_pairs("maxuexp quantile round trip" + at, pairs, tol),
                         {"maxuexp::quantile"}));
  }
  {
    std::vector<std::pair<double, double>> pairs;
    for (double k : {0.5, 2.0, 3.0}) {
      pairs.emplace_back(maxuexp::moment(p, k),
                         quad_xi(p, [k](double x) { return std::pow(x, k); }));
    }
    out.push_back(tagged(check_pairs("maxuexp moments" + at, pairs, tol), {"maxuexp::moment"}));
  }
  const double m1 = quad_xi(p, [](double x) { return x; });
  const double m2 = quad_xi(p, [](double x) { return x * x; });
  out.push_back(tagged(check_value("maxuexp mean" + at, maxuexp::mean(p), m1, tol), {"maxuexp::mean"}));
  out.push_back(tagged(check_value("maxuexp variance" + at, maxuexp::variance(p), m2 - m1 * m1, tol),
                       {"maxuexp::variance"}));
  {
    std::vector<std::pair<double, double>> pairs;
    for (double q : {0.5, 1.5}) {
      pairs.emplace_back(maxuexp::neg_moment(p, q),
                         quad_xi(p, [q](double x) { return std::pow(x, -q); }));
    }
    out.push_back(tagged(check_pairs("maxuexp negative moments" + at, pairs, tol),
                         {"maxuexp::neg_moment"}));
  }
  out.push_back(tagged(check_value("maxuexp lst" + at, maxuexp::lst(p, 1.0),
                                   quad_xi(p, [](double x) { return std::exp(-x); }), tol),
                       {"maxuexp::lst"}));
  out.push_back(tagged(
      check_value("tilted moment" + at, maxuexp::tilted_moment(p, 1.5, 3),
                  quad_xi(p, [](double x) { return x * x * x * std::exp(-1.5 * x); }), tol),
      {"maxuexp::tilted_moment", "maxuexp::tilted_moment_scaled"}));

  // Waiting times.
  out.push_back(tagged(check_density("emue pdf mass" + at,
                                     [&](double t) { return waiting::emue_pdf(p, t); }, half, tol),
                       {"waiting::emue_pdf"}));
  {
    std::vector<std::pair<double, double>> pairs;
    for (double t : {0.5, 2.0}) {
      pairs.emplace_back(waiting::emue_cdf(p, t),
                         quad([&](double u) { return waiting::emue_pdf(p, u); },
                              numeric::Interval(0.0, t)));
    }
    out.push_back(tagged(check_pairs("emue cdf vs integral of pdf" + at, pairs, tol),
                         {"waiting::emue_cdf"}));
  }
  out.push_back(tagged(
      check_value("emue moment q=0.5" + at, waiting::emue_moment(p, 0.5),
                  quad([&](double t) { return std::sqrt(t) * waiting::emue_pdf(p, t); }, half), tol),
      {"waiting::emue_moment"}));
  out.push_back(tagged(
      check_value("bivariate pdf marginal" + at,
                  quad([&](double x) { return waiting::biv_pdf(p, 1.0, x); }, half, cut),
                  waiting::emue_pdf(p, 1.0), tol),
      {"waiting::biv_pdf"}));
  out.push_back(tagged(
      check_density("conditional density of xi given tau" + at,
                    [&](double x) { return waiting::cond_density_xi_given_tau(p, 1.0, x); }, half,
                    tol, cut),
      {"waiting::cond_density_xi_given_tau"}));
  {
    const double x = 0.7 * a;
    const double oracle =
        quad([&](double t) { return t * waiting::biv_pdf(p, t, x); }, half) / maxuexp::pdf(p, x);
    out.push_back(tagged(check_value("regression of tau on xi" + at,
                                     waiting::regress_tau_on_xi(x), oracle, tol),
                         {"waiting::regress_tau_on_xi"}));
  }
  out.push_back(tagged(check_value("regression of xi on tau" + at,
                                   waiting::regress_xi_on_tau(p, 1.0),
                                   literal::regress_xi_on_tau_corrected(p, 1.0), tol),
                       {"waiting::regress_xi_on_tau"}));
  {
    const double t1 = 0.7;
    const double marginal = quad(
        [&](double t2) {
          const std::array<double, 2> ts{t1, t2};
          return waiting::mvar2_pdf(p, ts);
        },
        half);
    out.push_back(tagged(check_value("multivariate waiting-time marginal" + at, marginal,
                                     waiting::emue_pdf(p, t1), tol),
                         {"waiting::mvar2_pdf"}));
  }
  for (unsigned n = 1; n <= 3; ++n) {
    out.push_back(tagged(
        check_density("erlang pdf mass n=" + std::to_string(n) + at,
                      [&](double t) { return waiting::erlang_pdf(p, n, t); }, half, tol),
        {"waiting::erlang_pdf"}));
  }
  out.push_back(tagged(
      check_value("erlang cdf n=2" + at, waiting::erlang_cdf(p, 2, 1.0),
                  quad_xi(p, [](double x) { return numeric::gamma_p(2.0, x); }), tol),
      {"waiting::erlang_cdf"}));
  out.push_back(tagged(
      check_value("erlang moment n=2 q=0.5" + at, waiting::erlang_moment(p, 2, 0.5),
                  quad([&](double t) { return std::sqrt(t) * waiting::erlang_pdf(p, 2, t); }, half),
                  tol),
      {"waiting::erlang_moment"}));

  // Counts.
  const double m = 1.5;
  const auto poisson = [m](int n, double x) {
    return std::exp(n * std::log(m * x) - m * x - std::lgamma(n + 1.0));
  };
  {
    std::vector<std::pair<double, double>> pairs;
    for (int n = 0; n <= 5; ++n) {
      pairs.emplace_back(mixed::pmf(p, m, n),
                         quad_xi(p, [&](double x) { return n == 0 ? std::exp(-m * x) : poisson(n, x); }));
    }
    out.push_back(tagged(check_pairs("count pmf" + at, pairs, tol), {"mixed::pmf"}));
  }
  const auto series = mixed::pmf_series(p, m);
  {
    double total = 0.0;
    for (double v : series.probs) total += v;
    out.push_back(tagged(check_value("count pmf total" + at, total, 1.0, tol), {"mixed::pmf_series"}));
  }
  {
    const auto mv = mixed::mean_var(p, m);
    out.push_back(tagged(check_pairs("count mean and variance" + at,
                                     {{mv.mean, m * m1}, {mv.variance, m * m1 + m * m * (m2 - m1 * m1)}},
                                     tol),
                         {"mixed::mean_var"}));
  }
  out.push_back(tagged(
      check_value("count pgf" + at, mixed::pgf(p, m, 0.5),
                  quad_xi(p, [m](double x) { return std::exp(-m * 0.5 * x); }), tol),
      {"mixed::pgf"}));
  out.push_back(tagged(
      check_density("posterior of xi given N" + at,
                    [&](double x) { return mixed::posterior_pdf(p, m, 2, x); }, half, tol, cut),
      {"mixed::posterior_pdf"}));
  out.push_back(tagged(check_value("posterior mean" + at, mixed::posterior_mean(p, m, 2),
                                   maxuexp::tilted_moment(p, m, 3) / maxuexp::tilted_moment(p, m, 2),
                                   tol),
                       {"mixed::posterior_mean"}));
  {
    double falling = 0.0;
    for (std::size_t n = 2; n < series.probs.size(); ++n) {
      falling += static_cast<double>(n) * static_cast<double>(n - 1) * series.probs[n];
    }
    out.push_back(tagged(check_value("factorial moment k=2" + at, mixed::factorial_moment(p, m, 2),
                                     falling, tol),
                         {"mixed::factorial_moment"}));
  }
  {
    const std::array<double, 2> mus{0.5, 1.5};
    double ordered = 0.0;
    double incs = 0.0;
    for (mixed::Count k = 1; k < 400; ++k) {
      const std::array<mixed::Count, 2> ks{1, k};
      ordered += mixed::ordered_pmf(p, mus, ks);
      const std::array<mixed::Count, 2> ms{1, k - 1};
      incs += mixed::increments_pmf(p, mus, ms);
    }
    out.push_back(tagged(check_value("ordered pmf marginal" + at, ordered, mixed::pmf(p, 0.5, 1), tol),
                         {"mixed::ordered_pmf"}));
    out.push_back(tagged(check_value("increments pmf marginal" + at, incs, mixed::pmf(p, 0.5, 1), tol),
                         {"mixed::increments_pmf"}));
    std::vector<std::pair<double, double>> pairs;
    const mixed::Count n = 4;
    for (mixed::Count j = 0; j <= n; ++j) {
      const std::array<mixed::Count, 2> ks{j, n};
      pairs.emplace_back(mixed::conditional_binomial_pmf(n, 0.5, 1.5, j),
                         mixed::ordered_pmf(p, mus, ks) / mixed::pmf(p, 1.5, static_cast<int>(n)));
    }
    out.push_back(tagged(check_pairs("conditional binomial" + at, pairs, tol),
                         {"mixed::conditional_binomial_pmf"}));
  }
}

void add_mc_checks(const VerifyOptions& o, std::vector<CheckResult>& out) {
  const Params p(1.0, 1.0);
  const std::size_t n = o.mc_draws;
  std::uint64_t seed = o.seed;

  McSpec xi_mean;

  xi_mean.name = "MC mean of xi " + label(p);
  xi_mean.sampler = [&](RandomStream& s) { return maxuexp::sample(p, s); };
  xi_mean.closed_form = maxuexp::mean(p);
  xi_mean.n_draws = n;
  xi_mean.seed = seed++;
  out.push_back(tagged(check_mc(xi_mean), {"maxuexp::sample"}));

  {
    RandomStream s(seed++);
    std::vector<double> draws(n);
    for (auto& d : draws) d = maxuexp::sample(p, s);
    const double d = gof::ks_statistic(draws, [&](double x) { return maxuexp::cdf(p, x); });
    CheckResult r;
    r.name = "KS of xi draws " + label(p);
    r.value = gof::ks_pvalue(d, n);
    r.reference = 0.01;
    r.passed = r.value > 0.01;
    r.detail = "D=" + std::to_string(d);
    out.push_back(tagged(r, {"maxuexp::sample"}));
  }

  McSpec tau;

  tau.name = "MC quantiles of tau " + label(p);
  tau.sampler = [&](RandomStream& s) { return waiting::emue_sample(p, s); };
  tau.finite_variance = false;
  tau.cdf = [&](double t) { return waiting::emue_cdf(p, t); };
  tau.quantile_points = {0.5, 1.0, 2.0};
  tau.n_draws = n;
  tau.seed = seed++;
  out.push_back(tagged(check_mc(tau), {"waiting::emue_sample"}));

  McSpec erl;

  erl.name = "MC mean of sqrt(T_2) " + label(p);
  erl.sampler = [&](RandomStream& s) { return waiting::erlang_sample(p, 2, s); };
  erl.statistic = [](double t) { return std::sqrt(t); };
  erl.closed_form = waiting::erlang_moment(p, 2, 0.5);
  erl.n_draws = n;
  erl.seed = seed++;
  out.push_back(tagged(check_mc(erl), {"waiting::erlang_sample"}));

  const auto clock = mixed::TimeTransform::power(1.0);
  McSpec count;
  count.name = "MC mean of N(2) " + label(p);
  count.sampler = [&](RandomStream& s) {
    return static_cast<double>(mixed::simulate_path(p, clock, 2.0, s).events.size());
  };
  count.closed_form = mixed::mean_var(p, 2.0).mean;
  count.n_draws = n / 4;
  count.seed = seed++;
  out.push_back(tagged(check_mc(count), {"mixed::simulate_path"}));
}

}  // namespace

CheckResult check_density(const std::string& name, const numeric::ScalarFn& pdf,
                          const numeric::Interval& support, double tol,
                          std::span<const double> breakpoints) {
  CheckResult r;
  r.name = name;
  r.reference = 1.0;
  r.tol = tol;
  try {
    const auto q = numeric::integrate(pdf, support, kOracleQuad, breakpoints);
    r.value = q.value;
    r.passed = std::fabs(q.value - 1.0) <= tol;
    std::ostringstream d;
    d.precision(12);
    d << "mass=" << q.value << " err~" << q.err_estimate;
    r.detail = d.str();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("quadrature failed: ") + e.what();
  }
  return r;
}

CheckResult check_value(const std::string& name, double closed, double oracle, double tol) {
  CheckResult r;
  r.name = name;
  r.value = closed;
  r.reference = oracle;
  r.tol = tol;
  const double dev = std::fabs(closed - oracle);
  r.passed = std::isfinite(closed) && dev <= tol * std::max(1.0, std::fabs(oracle));
  std::ostringstream d;
  d.precision(12);
  d << "closed=" << closed << " oracle=" << oracle << " dev=" << dev;
  r.detail = d.str();
  return r;
}

McMean mc_mean(const Sampler& sampler, const numeric::ScalarFn& statistic, std::size_t n_draws,
               std::uint64_t seed) {
  if (n_draws < 2) throw DomainError("mc_mean: need at least two draws");
  RandomStream s(seed);
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n_draws; ++i) {
    double v = sampler(s);
    if (statistic) v = statistic(v);
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(n_draws - 1);
  return McMean{mean, std::sqrt(var / static_cast<double>(n_draws))};
}

CheckResult check_mc(const McSpec& spec) {
  CheckResult r;
  r.name = spec.name;
  r.tol = spec.z_limit;
  if (spec.finite_variance) {
    const auto mm = mc_mean(spec.sampler, spec.statistic, spec.n_draws, spec.seed);
    r.value = std::fabs(mm.mean - spec.closed_form) / mm.std_error;
    r.reference = spec.closed_form;
    r.passed = r.value <= spec.z_limit;
    std::ostringstream d;
    d.precision(10);
    d << "mean=" << mm.mean << " se=" << mm.std_error << " closed=" << spec.closed_form;
    r.detail = d.str();
    return r;
  }
  if (!spec.cdf || spec.quantile_points.empty()) {
    throw DivergenceError("check_mc: '" + spec.name +
                          "' has infinite variance; mean mode refused and no CDF was given");
  }
  RandomStream s(spec.seed);
  std::vector<std::size_t> below(spec.quantile_points.size(), 0);
  for (std::size_t i = 0; i < spec.n_draws; ++i) {
    const double v = spec.sampler(s);
    for (std::size_t j = 0; j < below.size(); ++j) {
      if (v <= spec.quantile_points[j]) ++below[j];
    }
  }
  const double n = static_cast<double>(spec.n_draws);
  double worst = 0.0;
  std::ostringstream d;
  d.precision(8);
  for (std::size_t j = 0; j < below.size(); ++j) {
    const double f = spec.cdf(spec.quantile_points[j]);
    const double emp = static_cast<double>(below[j]) / n;
    const double z = std::fabs(emp - f) / std::sqrt(f * (1.0 - f) / n);
    worst = std::max(worst, z);
    d << "F(" << spec.quantile_points[j] << ")=" << f << " emp=" << emp << "; ";
  }
  r.value = worst;
  r.passed = worst <= spec.z_limit;
  r.detail = "quantile mode: " + d.str();
  return r;
}

const std::vector<std::string>& required_operations() {
  static const std::vector<std::string> ops = {
      "maxuexp::pdf",         "maxuexp::cdf",
      "maxuexp::hazard",      "maxuexp::quantile",
      "maxuexp::moment",      "maxuexp::mean",
      "maxuexp::variance",    "maxuexp::neg_moment",
      "maxuexp::lst",         "maxuexp::tilted_moment",
      "maxuexp::sample",      "waiting::emue_pdf",
      "waiting::emue_cdf",    "waiting::emue_moment",
      "waiting::emue_sample", "waiting::biv_pdf",
      "waiting::cond_density_xi_given_tau",
      "waiting::regress_tau_on_xi",
      "waiting::regress_xi_on_tau",
      "waiting::mvar2_pdf",   "waiting::erlang_pdf",
      "waiting::erlang_cdf",  "waiting::erlang_moment",
      "waiting::erlang_sample",
      "mixed::pmf",           "mixed::pmf_series",
      "mixed::mean_var",      "mixed::pgf",
      "mixed::posterior_pdf", "mixed::posterior_mean",
      "mixed::factorial_moment",
      "mixed::ordered_pmf",   "mixed::increments_pmf",
      "mixed::conditional_binomial_pmf",
      "mixed::simulate_path",
  };
  return ops;
}

std::vector<std::string> uncovered_operations(std::span<const CheckResult> checks) {
  std::set<std::string> seen;
  for (const auto& c : checks) seen.insert(c.covers.begin(), c.covers.end());
  std::vector<std::string> missing;
  for (const auto& op : required_operations()) {
    if (!seen.contains(op)) missing.push_back(op);
  }
  return missing;
}

std::vector<CheckResult> run_checks(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  for (const Params& p : {Params(1.0, 1.0), Params(2.0, 0.5)}) {
    add_point_checks(p, options.tol, out);
  }
  add_mc_checks(options, out);

  const auto missing = uncovered_operations(out);
  CheckResult cov;
  cov.name = "coverage";
  cov.value = static_cast<double>(missing.size());
  cov.passed = missing.empty();
  for (const auto& op : missing) cov.detail += op + " ";
  if (missing.empty()) cov.detail = "all operations registered";
  out.push_back(cov);
  return out;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_all(const VerifyOptions& options) {
  VerifyReport rep;
  rep.checks = run_checks(options);
  rep.ledger = run_ledger(options);
  return rep;
}

}  // namespace mpmue::verify
