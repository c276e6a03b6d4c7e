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

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mpmue/errors.hpp"
#include "mpmue/mixed_poisson.hpp"
#include "mpmue/verify.hpp"
#include "mpmue/waiting_times.hpp"

namespace mpmue::verify {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const numeric::QuadOptions kOracleQuad{1e-15, 1e-13, 4000};

double quad_xi(const Params& p, const numeric::ScalarFn& g) {
  const std::array<double, 1> cut{p.a()};
  return numeric::integrate([&](double x) { return g(x) * maxuexp::pdf(p, x); },
                            numeric::Interval::half_line(0.0), kOracleQuad, cut)
      .value;
}

std::string point_label(const Params& p, const std::string& extra) {
  std::ostringstream out;
  out << "a=" << p.a() << ", lambda=" << p.lambda();
  if (!extra.empty()) out << ", " << extra;
  return out.str();
}

const std::array<Params, 2> kPoints{Params(1.0, 1.0), Params(2.0, 0.5)};

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPaperOk:
      return "paper_ok";
    case Verdict::kCorrectedAdopted:
      return "corrected_adopted";
    case Verdict::kUnresolved:
      return "unresolved";
  }
  return "unresolved";
}

double LedgerPoint::abs_dev_literal() const {
  return paper_literal ? std::fabs(*paper_literal - oracle) : kInf;
}

double LedgerPoint::abs_dev_corrected() const { return std::fabs(corrected - oracle); }

DiscrepancyRecord adjudicate(std::string formula_id, std::vector<LedgerPoint> points) {
  if (points.empty()) throw DomainError("adjudicate: no points for " + formula_id);
  DiscrepancyRecord rec;
  rec.formula_id = std::move(formula_id);

  const auto gap = [](const LedgerPoint& pt) {
    return pt.paper_literal ? std::fabs(*pt.paper_literal - pt.corrected) : kInf;
  };

  std::size_t primary = 0;
  bool any_vote = false;
  bool split = false;
  Verdict vote = Verdict::kUnresolved;
  bool literal_ok_everywhere = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    if (gap(pt) > gap(points[primary])) primary = i;
    if (!(pt.abs_dev_literal() <= pt.tol)) literal_ok_everywhere = false;
    if (!(gap(pt) > 10.0 * pt.tol)) continue;

    Verdict v = Verdict::kUnresolved;
    if (pt.abs_dev_corrected() <= pt.tol && pt.abs_dev_literal() > 10.0 * pt.tol) {
      v = Verdict::kCorrectedAdopted;
    } else if (pt.abs_dev_literal() <= pt.tol && pt.abs_dev_corrected() > 10.0 * pt.tol) {
      v = Verdict::kPaperOk;
    }
    if (any_vote && v != vote) split = true;
    vote = v;
    any_vote = true;
  }

  if (split) {
    rec.verdict = Verdict::kUnresolved;
  } else if (any_vote) {
    rec.verdict = vote;
  } else {
    rec.verdict = literal_ok_everywhere ? Verdict::kPaperOk : Verdict::kUnresolved;
  }

  const auto& pt = points[primary];
  rec.params = pt.params;
  rec.paper_literal = pt.paper_literal;
  rec.corrected = pt.corrected;
  rec.oracle = pt.oracle;
  rec.abs_dev_literal = pt.abs_dev_literal();
  rec.abs_dev_corrected = pt.abs_dev_corrected();
  rec.tol = pt.tol;
  rec.points = std::move(points);
  return rec;
}

std::vector<DiscrepancyRecord> run_ledger(const VerifyOptions& o) {
  constexpr double kTol = 1e-8;
  constexpr double kVarianceTol = 1e-10;
  std::vector<DiscrepancyRecord> out;
  std::uint64_t seed = o.seed ^ 0x5DEECE66DULL;

  // Laplace-Stieltjes transform, first term.
  {
    std::vector<LedgerPoint> pts;
    const std::array<double, 2> ts{0.5, 1.0};
    for (std::size_t i = 0; i < kPoints.size(); ++i) {
      const Params& p = kPoints[i];
      const double t = ts[i];
      pts.push_back({point_label(p, "t=" + std::to_string(t).substr(0, 3)), literal::lst(p, t),
                     maxuexp::lst(p, t), quad_xi(p, [t](double x) { return std::exp(-t * x); }),
                     kTol});
    }
    out.push_back(adjudicate("lst-first-term", std::move(pts)));
  }

  // Sign of the last variance term.
  {
    std::vector<LedgerPoint> pts;
    for (const Params& p : kPoints) {
      const double m1 = quad_xi(p, [](double x) { return x; });
      const double m2 = quad_xi(p, [](double x) { return x * x; });
      pts.push_back({point_label(p, ""), literal::variance_plus(p), literal::variance_minus(p),
                     m2 - m1 * m1, kVarianceTol});
    }
    out.push_back(adjudicate("count-variance-sign", std::move(pts)));
  }

  // Rate factor in the arrival-time moment, n = 1, p = 0.5.
  {
    std::vector<LedgerPoint> pts;
    for (const Params& p : {Params(1.0, 2.0), Params(2.0, 0.5)}) {
      const auto mc = mc_mean([&](RandomStream& s) { return waiting::erlang_sample(p, 1, s); },
                              [](double t) { return std::sqrt(t); }, o.ledger_mc_draws, seed++);
      pts.push_back({point_label(p, "n=1, p=0.5"), literal::erlang_moment(p, 1, 0.5),
                     waiting::erlang_moment(p, 1, 0.5), mc.mean, 4.0 * mc.std_error});
    }
    out.push_back(adjudicate("erlang-moment-rate-factor", std::move(pts)));
  }

  // Sign inside the fractional-moment brace.
  {
    std::vector<LedgerPoint> pts;
    for (const Params& p : kPoints) {
      const double oracle =
          std::tgamma(1.5) * quad_xi(p, [](double x) { return 1.0 / std::sqrt(x); });
      pts.push_back({point_label(p, "p=0.5"), literal::tau_moment(p, 0.5),
                     waiting::emue_moment(p, 0.5), oracle, kTol});
    }
    out.push_back(adjudicate("tau-moment-sign", std::move(pts)));
  }

  // E tau is finite although the moment is asserted infinite for p >= 1.
  {
    std::vector<LedgerPoint> pts;
    for (const Params& p : kPoints) {
      const auto mc = mc_mean([&](RandomStream& s) { return waiting::emue_sample(p, s); }, {},
                              o.ledger_mc_draws, seed++);
      pts.push_back({point_label(p, "p=1"), std::nullopt, waiting::emue_moment(p, 1.0), mc.mean,
                     4.0 * mc.std_error});
    }
    out.push_back(adjudicate("tau-moment-p-ge-1", std::move(pts)));
  }

  // Probability generating function: first term, then the last term.
  {
    std::vector<LedgerPoint> first;
    std::vector<LedgerPoint> last;
    const double m = 1.0;
    const double z = 0.5;
    for (const Params& p : kPoints) {
      const double oracle = quad_xi(p, [&](double x) { return std::exp(-m * (1.0 - z) * x); });
      first.push_back({point_label(p, "m=1, z=0.5"), literal::pgf(p, m, z), mixed::pgf(p, m, z),
                       oracle, kTol});
      last.push_back({point_label(p, "m=1, z=0.5"), literal::pgf_first_term_fixed(p, m, z),
                      literal::pgf_corrected(p, m, z), oracle, kTol});
    }
    out.push_back(adjudicate("pgf-first-term", std::move(first)));
    out.push_back(adjudicate("pgf-last-term", std::move(last)));
  }

  // Denominator of the conditional density of xi given tau.
  {
    std::vector<LedgerPoint> pts;
    const double t = 1.0;
    for (const Params& p : {Params(1.0, 2.0), Params(2.0, 0.5)}) {
      const double x = 0.5 * p.a();
      const std::array<double, 1> cut{p.a()};
      const double norm = numeric::integrate([&](double u) { return waiting::biv_pdf(p, t, u); },
                                             numeric::Interval::half_line(0.0), kOracleQuad, cut)
                              .value;
      pts.push_back({point_label(p, "t=1, x=" + std::to_string(x).substr(0, 3)),
                     literal::cond_density(p, t, x), waiting::cond_density_xi_given_tau(p, t, x),
                     waiting::biv_pdf(p, t, x) / norm, kTol});
    }
    out.push_back(adjudicate("cond-density-denominator", std::move(pts)));
  }

  // Regression of xi on tau.
  {
    std::vector<LedgerPoint> pts;
    for (const Params& p : kPoints) {
      pts.push_back({point_label(p, "t=1"), literal::regress_xi_on_tau(p, 1.0),
                     literal::regress_xi_on_tau_corrected(p, 1.0),
                     waiting::regress_xi_on_tau(p, 1.0), kTol});
    }
    out.push_back(adjudicate("regression-xi-on-tau", std::move(pts)));
  }

  // Posterior density of xi given N on the exponential branch.
  {
    std::vector<LedgerPoint> pts;
    const double m = 2.0;
    const int n = 2;
    for (const Params& p : kPoints) {
      const double x = 1.5 * p.a();
      const auto w = [&](double u) { return u * u * std::exp(-m * u); };
      const double oracle = w(x) * maxuexp::pdf(p, x) / quad_xi(p, w);
      pts.push_back({point_label(p, "m=2, n=2, x=" + std::to_string(x).substr(0, 3)),
                     literal::posterior(p, m, n, x), mixed::posterior_pdf(p, m, n, x), oracle, kTol});
    }
    out.push_back(adjudicate("count-posterior-density", std::move(pts)));
  }

  // Forms expected to hold as published.
  {
    std::vector<LedgerPoint> pts;
    const std::array<std::pair<double, int>, 2> mn{{{1.0, 3}, {2.0, 5}}};
    for (std::size_t i = 0; i < kPoints.size(); ++i) {
      const Params& p = kPoints[i];
      const auto [m, n] = mn[i];
      pts.push_back({point_label(p, "m=" + std::to_string(m).substr(0, 3) + ", n=" + std::to_string(n)),
                     literal::posterior_mean(p, m, n),
                     maxuexp::tilted_moment(p, m, n + 1) / maxuexp::tilted_moment(p, m, n),
                     mixed::posterior_mean(p, m, n), kTol});
    }
    out.push_back(adjudicate("count-posterior-mean", std::move(pts)));
  }
  {
    std::vector<LedgerPoint> pts;
    const double m = 2.0;
    const int n = 3;
    for (const Params& p : kPoints) {
      const double oracle = quad_xi(p, [&](double x) {
        return std::exp(n * std::log(m * x) - m * x - std::lgamma(n + 1.0));
      });
      pts.push_back({point_label(p, "m=2, n=3"),
                     literal::pmf_unit_clock(Params(p.a() * m, p.lambda() / m), n),
                     mixed::pmf(p, m, n), oracle, kTol});
    }
    out.push_back(adjudicate("pmf-rescaled-clock", std::move(pts)));
  }
  {
    std::vector<LedgerPoint> pts;
    for (const Params& p : kPoints) {
      pts.push_back({point_label(p, "k=2.5"), literal::moment(p, 2.5), maxuexp::moment(p, 2.5),
                     quad_xi(p, [](double x) { return std::pow(x, 2.5); }), kTol});
    }
    out.push_back(adjudicate("xi-moment", std::move(pts)));
  }
  {
    std::vector<LedgerPoint> pts;
    const double m = 1.5;
    for (const Params& p : kPoints) {
      pts.push_back({point_label(p, "m=1.5, k=2"), literal::factorial_moment(p, m, 2),
                     mixed::factorial_moment(p, m, 2),
                     m * m * quad_xi(p, [](double x) { return x * x; }), kTol});
    }
    out.push_back(adjudicate("factorial-moment", std::move(pts)));
  }
  return out;
}

std::string ledger_json(std::span<const DiscrepancyRecord> records) {
  using nlohmann::ordered_json;
  const auto num = [](std::optional<double> v) -> ordered_json {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
  };
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) {
    ordered_json pts = ordered_json::array();
    for (const auto& pt : r.points) {
      pts.push_back(ordered_json{{"params", pt.params},
                                 {"paper_literal", num(pt.paper_literal)},
                                 {"corrected", num(pt.corrected)},
                                 {"oracle", num(pt.oracle)},
                                 {"abs_dev_literal", num(pt.abs_dev_literal())},
                                 {"abs_dev_corrected", num(pt.abs_dev_corrected())},
                                 {"tol", num(pt.tol)}});
    }
    arr.push_back(ordered_json{{"formula_id", r.formula_id},
                               {"params", r.params},
                               {"paper_literal", num(r.paper_literal)},
                               {"corrected", num(r.corrected)},
                               {"oracle", num(r.oracle)},
                               {"abs_dev_literal", num(r.abs_dev_literal)},
                               {"abs_dev_corrected", num(r.abs_dev_corrected)},
                               {"verdict", to_string(r.verdict)},
                               {"tol", num(r.tol)},
                               {"points", pts}});
  }
  return arr.dump(2);
}

}  // namespace mpmue::verify
