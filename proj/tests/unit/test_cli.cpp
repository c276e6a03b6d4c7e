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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpmue/cli.hpp"
#include "mpmue/estimation.hpp"
#include "mpmue/maxuexp.hpp"
#include "mpmue/random.hpp"
#include "mpmue/waiting_times.hpp"

namespace {

namespace fs = std::filesystem;
using namespace mpmue;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mpmue");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mpmue_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  std::string sample_file(const std::string& name, const Params& p, std::size_t n, std::uint64_t seed) {
    RandomStream s(seed);
    std::ostringstream body;
    body << "x\n";
    body.precision(17);
    for (std::size_t i = 0; i < n; ++i) body << maxuexp::sample(p, s) << '\n';
    return write(name, body.str());
  }

  fs::path dir_;
};

TEST_F(CliTest, EvalMaxUExp) {
  const auto r = run({"eval", "maxuexp", "--a", "1", "--lambda", "1", "--x", "0.5"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "point,pdf,cdf");
  EXPECT_EQ(ls[1], "0.5,0.696734670144,0.196734670144");
}

TEST_F(CliTest, EvalPmf) {
  const auto r = run({"eval", "pmf", "--a", "1", "--lambda", "1", "--mu", "1", "--n", "0,1"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], "n,pmf");
  EXPECT_EQ(ls[1], "0,0.415954379638");
}

TEST_F(CliTest, EvalRoundTrip) {
  const auto r = run({"eval", "emue", "--a", "2", "--lambda", "0.5", "--x", "0.1,1,7.5"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    double t = 0.0;
    double pdf = 0.0;
    double cdf = 0.0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(ls[i]);
    in >> t >> c1 >> pdf >> c2 >> cdf;
    ASSERT_EQ(c1, ',');
    ASSERT_EQ(c2, ',');
    const Params p(2.0, 0.5);
    EXPECT_NEAR(pdf, waiting::emue_pdf(p, t), 1e-11 * waiting::emue_pdf(p, t));
    EXPECT_NEAR(cdf, waiting::emue_cdf(p, t), 1e-11 * waiting::emue_cdf(p, t));
  }
}

TEST_F(CliTest, EvalErrors) {
  EXPECT_EQ(run({"eval", "erlang", "--a", "1", "--lambda", "1", "--n", "0", "--x", "1"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"eval", "maxuexp", "--a", "-1", "--lambda", "1", "--x", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"eval", "pmf", "--a", "1", "--lambda", "1", "--n", "1"}).code, cli::kExitUsage);
  const auto r = run({"eval", "nope", "--a", "1", "--lambda", "1"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({}).code, cli::kExitUsage);
}

TEST_F(CliTest, FitMomUnique) {
  const auto file = sample_file("unit.csv", Params(1.0, 1.0), 10000, 60);
  const auto r = run({"fit", file, "--method", "mom"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["branch"], "unique");
  for (const char* key : {"a", "lambda", "x_product", "r_hat", "branch", "objective", "warnings"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_NEAR(j["a"].get<double>() * j["lambda"].get<double>(), j["x_product"].get<double>(), 1e-9);
  EXPECT_TRUE(j["objective"].is_null());
  EXPECT_EQ(run({"fit", file, "--method", "mom"}).out, r.out);
}

TEST_F(CliTest, FitAutoLightTail) {
  const auto file = sample_file("tail.csv", Params(1.0, 8.0), 10000, 61);
  const auto r = run({"fit", file});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["branch"], "lsq_refined");
  EXPECT_TRUE(j["objective"].is_number());
  EXPECT_NEAR(j["a"].get<double>(), 1.0, 0.15);
}

TEST_F(CliTest, FitLsqAndHeaderless) {
  const auto file = write("plain.csv", "0.1\n0.2\n0.3\n0.4\n0.5\n0.6\n0.7\n0.8\n");
  const auto r = run({"fit", file, "--method", "lsq", "--trim", "0.25"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["branch"], "lsq_refined");
}

TEST_F(CliTest, FitErrors) {
  const auto empty = write("empty.csv", "");
  auto r = run({"fit", empty});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_FALSE(r.err.empty());
  r = run({"fit", write("bad.csv", "x\n1.0\nabc\n2.0\n")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("row 3"), std::string::npos) << r.err;
  r = run({"fit", write("neg.csv", "1.0\n2.0\n-3.0\n")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("row 3"), std::string::npos) << r.err;
  EXPECT_EQ(run({"fit", (dir_ / "missing.csv").string()}).code, cli::kExitUsage);
  EXPECT_EQ(run({"fit", write("ok.csv", "1\n2\n3\n"), "--method", "ml"}).code, cli::kExitUsage);
}

TEST_F(CliTest, SimulateDeterministic) {
  const auto a = run({"simulate", "xi", "--a", "1", "--lambda", "1", "--n", "5", "--seed", "7"});
  const auto b = run({"simulate", "xi", "--a", "1", "--lambda", "1", "--n", "5", "--seed", "7"});
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out).size(), 5u);
  const auto c = run({"simulate", "xi", "--a", "1", "--lambda", "1", "--n", "5", "--seed", "8"});
  EXPECT_NE(a.out, c.out);
  for (const char* target : {"tau", "erlang"}) {
    const auto r = run({"simulate", target, "--a", "1", "--lambda", "1", "--n", "3", "--order", "2"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(lines(r.out).size(), 3u);
  }
}

TEST_F(CliTest, SimulatePath) {
  const auto r = run({"simulate", "path", "--a", "1", "--lambda", "1", "--horizon", "2", "--mu",
                      "power:1", "--seed", "3"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 2u);
  EXPECT_EQ(ls[0].rfind("# xi=", 0), 0u);
  EXPECT_EQ(ls[1], "event_index,time");
  double prev = 0.0;
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const auto comma = ls[i].find(',');
    EXPECT_EQ(std::stoul(ls[i].substr(0, comma)), i - 1);
    const double t = std::stod(ls[i].substr(comma + 1));
    EXPECT_GE(t, prev);
    EXPECT_LE(t, 2.0);
    prev = t;
  }
}

TEST_F(CliTest, SimulatePathTableClock) {
  const auto good = write("good.csv", "t,mu\n0,0\n1,2\n3,4\n");
  const auto r = run({"simulate", "path", "--a", "1", "--lambda", "1", "--horizon", "3", "--mu",
                      "table:" + good});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const auto bad = write("bad.csv", "t,mu\n0,0\n1,2\n2,1\n");
  const auto e = run({"simulate", "path", "--a", "1", "--lambda", "1", "--horizon", "1", "--mu",
                      "table:" + bad});
  EXPECT_EQ(e.code, cli::kExitUsage);
  EXPECT_FALSE(e.err.empty());
  EXPECT_EQ(run({"simulate", "path", "--a", "1", "--lambda", "1", "--horizon", "1", "--mu", "log:2"}).code,
            cli::kExitUsage);
}

TEST_F(CliTest, MomCurve) {
  const auto r = run({"momcurve", "--lo", "0.1", "--hi", "10", "--steps", "1000"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "# argmin=4.0232 min=1.2452");
  EXPECT_EQ(ls[1], "x,g");
  ASSERT_EQ(ls.size(), 1002u);
  double prev = 3.0;
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const auto comma = ls[i].find(',');
    const double x = std::stod(ls[i].substr(0, comma));
    const double g = std::stod(ls[i].substr(comma + 1));
    if (x < 4.0232) {
      EXPECT_LT(g, prev) << x;
    }
    prev = g;
  }
  const auto far = run({"momcurve", "--lo", "1", "--hi", "1000", "--steps", "10"});
  const auto fl = lines(far.out);
  const double g_end = std::stod(fl.back().substr(fl.back().find(',') + 1));
  EXPECT_NEAR(g_end, 4.0 / 3.0, 1e-3);
  EXPECT_EQ(run({"momcurve", "--lo", "2", "--hi", "1"}).code, cli::kExitUsage);
}

TEST_F(CliTest, VerifyWritesLedger) {
  const auto path = (dir_ / "ledger.json").string();
  const auto r = run({"verify", "--ledger", path});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out << r.err;
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  ASSERT_TRUE(j.is_array());
  EXPECT_GE(j.size(), 5u);
  for (const auto& rec : j) EXPECT_TRUE(rec.contains("verdict"));
}

TEST_F(CliTest, VerifyZeroToleranceFails) {
  const auto path = (dir_ / "ledger.json").string();
  ::setenv("MPMUE_TOL", "0", 1);
  const auto r = run({"verify", "--ledger", path});
  ::unsetenv("MPMUE_TOL");
  EXPECT_EQ(r.code, cli::kExitCheckFailed);
  EXPECT_TRUE(fs::exists(path));
  ::setenv("MPMUE_TOL", "abc", 1);
  const auto bad = run({"verify", "--ledger", path});
  ::unsetenv("MPMUE_TOL");
  EXPECT_EQ(bad.code, cli::kExitUsage);
}

}  // namespace
