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

#include "mpmue/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mpmue/errors.hpp"
#include "mpmue/estimation.hpp"
#include "mpmue/mixed_poisson.hpp"
#include "mpmue/verify.hpp"
#include "mpmue/waiting_times.hpp"

namespace mpmue::cli {
namespace {

// Raised for malformed input files; reported with exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_double(const std::string& s, double& v) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Single numeric column, optional header "x", blank lines ignored.
std::vector<double> read_sample(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<double> values;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string cell = trim(lines[i]);
    if (cell.empty()) continue;
    if (values.empty() && cell == "x") continue;
    double v = 0.0;
    if (!parse_double(cell, v) || !std::isfinite(v)) {
      throw InputError(path + ": row " + std::to_string(i + 1) + ": not a number: '" + cell + "'");
    }
    if (!(v > 0.0)) {
      throw InputError(path + ": row " + std::to_string(i + 1) + ": value must be positive");
    }
    values.push_back(v);
  }
  if (values.empty()) throw InputError(path + ": no observations");
  if (values.size() < 2) throw InputError(path + ": need at least two observations");
  return values;
}

// Two columns t,mu; optional header row.
mixed::TimeTransform read_table(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string row = trim(lines[i]);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    double t = 0.0;
    double m = 0.0;
    const bool ok = comma != std::string::npos && parse_double(trim(row.substr(0, comma)), t) &&
                    parse_double(trim(row.substr(comma + 1)), m);
    if (!ok) {
      if (pts.empty() && i == 0) continue;  // header
      throw InputError(path + ": row " + std::to_string(i + 1) + ": expected 't,mu'");
    }
    pts.emplace_back(t, m);
  }
  try {
    return mixed::TimeTransform::table(std::move(pts));
  } catch (const DomainError& e) {
    throw InputError(path + ": " + e.what());
  }
}

mixed::TimeTransform parse_mu(const std::string& spec) {
  if (spec.rfind("power:", 0) == 0) {
    double c = 0.0;
    if (!parse_double(spec.substr(6), c)) throw InputError("bad --mu exponent in '" + spec + "'");
    return mixed::TimeTransform::power(c);
  }
  if (spec.rfind("table:", 0) == 0) return read_table(spec.substr(6));
  throw InputError("--mu must be power:<c> or table:<file>");
}

std::string fmt12(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string fmt17(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string report_json(const estimation::FitReport& r) {
  nlohmann::ordered_json j;
  j["a"] = r.a;
  j["lambda"] = r.lambda;
  j["x_product"] = r.x_product;
  j["r_hat"] = std::isfinite(r.r_hat) ? nlohmann::ordered_json(r.r_hat) : nullptr;
  j["branch"] = estimation::to_string(r.branch);
  j["objective"] = r.objective ? nlohmann::ordered_json(*r.objective) : nullptr;
  j["warnings"] = r.warnings;
  return j.dump(2);
}

struct EvalArgs {
  std::string dist;
  double a = 0.0;
  double lambda = 0.0;
  std::vector<double> points;
  std::vector<long> n;
  double mu = 0.0;
};

int cmd_eval(const EvalArgs& e, std::ostream& out) {
  const Params p(e.a, e.lambda);
  if (e.dist == "pmf") {
    if (!(e.mu > 0.0)) throw DomainError("eval pmf: --mu must be given and positive");
    if (e.n.empty()) throw DomainError("eval pmf: --n counts required");
    out << "n,pmf\n";
    for (long n : e.n) {
      if (n < 0) throw DomainError("eval pmf: counts must be non-negative");
      out << n << ',' << fmt12(mixed::pmf(p, e.mu, static_cast<int>(n))) << '\n';
    }
    return kExitOk;
  }
  if (e.points.empty()) throw DomainError("eval: --x points required");
  unsigned order = 1;
  if (e.dist == "erlang") {
    if (e.n.size() != 1) throw DomainError("eval erlang: exactly one --n required");
    if (e.n[0] < 1) throw DomainError("eval erlang: n must be >= 1");
    order = static_cast<unsigned>(e.n[0]);
  }
  out << "point,pdf,cdf\n";
  for (double x : e.points) {
    double f = 0.0;
    double F = 0.0;
    if (e.dist == "maxuexp") {
      f = maxuexp::pdf(p, x);
      F = maxuexp::cdf(p, x);
    } else if (e.dist == "emue") {
      f = waiting::emue_pdf(p, x);
      F = waiting::emue_cdf(p, x);
    } else {
      f = waiting::erlang_pdf(p, order, x);
      F = waiting::erlang_cdf(p, order, x);
    }
    out << fmt12(x) << ',' << fmt12(f) << ',' << fmt12(F) << '\n';
  }
  return kExitOk;
}

struct FitArgs {
  std::string input;
  std::string method = "auto";
  double trim = 0.25;
};

int cmd_fit(const FitArgs& f, std::ostream& out) {
  const estimation::SampleData s(read_sample(f.input));
  estimation::FitReport r;
  if (f.method == "mom") {
    r = estimation::solve_mom(s);
  } else if (f.method == "lsq") {
    const Params init = s.size() >= 20 ? estimation::histogram_init(s) : estimation::solve_mom(s).params();
    r = estimation::lsq_fit(s, init, f.trim);
  } else {
    r = estimation::fit_auto(s);
  }
  out << report_json(r) << '\n';
  return kExitOk;
}

struct SimArgs {
  std::string target;
  double a = 0.0;
  double lambda = 0.0;
  std::size_t n = 1;
  unsigned order = 1;
  double horizon = 1.0;
  std::string mu = "power:1";
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimArgs& a, std::ostream& out) {
  const Params p(a.a, a.lambda);
  RandomStream s(a.seed);
  if (a.target == "path") {
    const auto tt = parse_mu(a.mu);
    const auto path = mixed::simulate_path(p, tt, a.horizon, s);
    out << "# xi=" << fmt17(path.xi) << '\n' << "event_index,time\n";
    for (std::size_t i = 0; i < path.events.size(); ++i) {
      out << i + 1 << ',' << fmt17(path.events[i]) << '\n';
    }
    return kExitOk;
  }
  if (a.order == 0) throw DomainError("simulate erlang: --order must be >= 1");
  for (std::size_t i = 0; i < a.n; ++i) {
    double v = 0.0;
    if (a.target == "xi") {
      v = maxuexp::sample(p, s);
    } else if (a.target == "tau") {
      v = waiting::emue_sample(p, s);
    } else {
      v = waiting::erlang_sample(p, a.order, s);
    }
    out << fmt17(v) << '\n';
  }
  return kExitOk;
}

int cmd_momcurve(double lo, double hi, std::size_t steps, std::ostream& out) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("momcurve: need 0 < lo < hi");
  if (steps < 2) throw DomainError("momcurve: need at least 2 steps");
  const auto& lm = estimation::mom_curve_landmarks();
  out << "# argmin=" << std::fixed << std::setprecision(4) << lm.argmin << " min=" << lm.min_value
      << '\n'
      << std::defaultfloat;
  out << "x,g\n";
  for (std::size_t i = 0; i < steps; ++i) {
    const double x = i + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    out << fmt12(x) << ',' << fmt12(estimation::mom_curve(x)) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const std::string& ledger_path, std::size_t draws, std::ostream& out,
               std::ostream& err) {
  verify::VerifyOptions opts;
  if (const char* env = std::getenv("MPMUE_TOL")) {
    double tol = 0.0;
    if (!parse_double(trim(env), tol) || !(tol >= 0.0)) {
      throw InputError(std::string("MPMUE_TOL is not a non-negative number: '") + env + "'");
    }
    opts.tol = tol;
  }
  if (draws > 0) opts.mc_draws = draws;

  const auto rep = verify::run_all(opts);
  std::size_t failed = 0;
  for (const auto& c : rep.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) {
      out << ": " << c.detail;
      ++failed;
    }
    out << '\n';
  }
  for (const auto& r : rep.ledger) {
    out << "ledger " << r.formula_id << ": " << verify::to_string(r.verdict) << '\n';
  }
  std::ofstream f(ledger_path);
  if (!f) {
    err << "cannot write ledger to '" << ledger_path << "'\n";
    return kExitUsage;
  }
  f << verify::ledger_json(rep.ledger) << '\n';
  out << rep.checks.size() - failed << '/' << rep.checks.size() << " checks passed; ledger "
      << rep.ledger.size() << " records written to " << ledger_path << '\n';
  if (failed > 0) {
    err << failed << " check(s) failed\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Max-U-Exp mixing distribution toolkit", "mpmue"};
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate densities, CDFs or count probabilities");
  eval->add_option("dist", ev.dist, "maxuexp | emue | erlang | pmf")
      ->required()
      ->check(CLI::IsMember({"maxuexp", "emue", "erlang", "pmf"}));
  eval->add_option("--a", ev.a, "Uniform endpoint a")->required();
  eval->add_option("--lambda", ev.lambda, "Exponential rate lambda")->required();
  eval->add_option("--x", ev.points, "Evaluation points")->delimiter(',');
  eval->add_option("--n", ev.n, "Erlang order, or counts for pmf")->delimiter(',');
  eval->add_option("--mu", ev.mu, "Clock value mu(t) for pmf");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Fit (a, lambda) to a one-column CSV sample");
  fit->add_option("input", fa.input, "CSV file")->required();
  fit->add_option("--method", fa.method, "mom | lsq | auto")
      ->check(CLI::IsMember({"mom", "lsq", "auto"}));
  fit->add_option("--trim", fa.trim, "Fraction of largest values dropped by lsq");

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "Draw samples or a process path");
  sim->add_option("target", sa.target, "xi | tau | erlang | path")
      ->required()
      ->check(CLI::IsMember({"xi", "tau", "erlang", "path"}));
  sim->add_option("--a", sa.a, "Uniform endpoint a")->required();
  sim->add_option("--lambda", sa.lambda, "Exponential rate lambda")->required();
  sim->add_option("--n", sa.n, "Number of draws");
  sim->add_option("--order", sa.order, "Erlang order");
  sim->add_option("--horizon", sa.horizon, "Path horizon");
  sim->add_option("--mu", sa.mu, "Clock: power:<c> or table:<file>");
  sim->add_option("--seed", sa.seed, "Random seed");

  double lo = 0.1;
  double hi = 10.0;
  std::size_t steps = 1000;
  auto* curve = app.add_subcommand("momcurve", "Tabulate the moment-ratio curve g(x)");
  curve->add_option("--lo", lo, "Left end");
  curve->add_option("--hi", hi, "Right end");
  curve->add_option("--steps", steps, "Number of grid points");

  std::string ledger = "ledger.json";
  std::size_t draws = 0;
  auto* ver = app.add_subcommand("verify", "Run the oracle checks and write the ledger");
  ver->add_option("--ledger", ledger, "Ledger JSON output path");
  ver->add_option("--draws", draws, "Monte Carlo draws per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(ev, out);
    if (fit->parsed()) return cmd_fit(fa, out);
    if (sim->parsed()) return cmd_simulate(sa, out);
    if (curve->parsed()) return cmd_momcurve(lo, hi, steps, out);
    if (ver->parsed()) return cmd_verify(ledger, draws, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mpmue::cli
