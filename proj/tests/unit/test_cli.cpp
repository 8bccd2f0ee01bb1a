// Copyright 2026 The blochflow Authors
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
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "blochflow/cli/app.hpp"
#include "blochflow/cli/commands.hpp"
#include "blochflow/core.hpp"

namespace blochflow::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("blochflow_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "blochflow");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  std::ostringstream out_, err_;

 private:
  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

Json read_json(const std::string& p) { return Json::parse(slurp(p)); }

TEST(FormatNumber, RoundTripsAndNonFinite) {
  for (double x : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23, kPi}) EXPECT_EQ(std::stod(format_number(x)), x);
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(cli({"--help"}), kExitOk);
  EXPECT_EQ(cli({"ensemble", "--help"}), kExitOk);
  EXPECT_EQ(cli({}), kExitUsage);
  EXPECT_EQ(cli({"bogus"}), kExitUsage);
  EXPECT_EQ(cli({"ensemble", "--out", path("e.json")}), kExitUsage);  // no seed
  EXPECT_EQ(cli({"trajectory", "--out", path("t.csv")}), kExitUsage);
  EXPECT_EQ(cli({"nonlinear", "--out", path("n.json")}), kExitUsage);
  EXPECT_EQ(cli({"ensemble", "--out", path("e.json"), "--seed", "1", "--runs", "0"}), kExitUsage);
  EXPECT_EQ(cli({"envariance", "--out", path("v.json"), "--n", "0", "--m", "1"}), kExitUsage);
  EXPECT_EQ(cli({"flow-field", "--out", path("f.csv"), "--preset", "fig9"}), kExitUsage);
  EXPECT_EQ(cli({"flow-field", "--out", path("f.csv"), "--preset", "fig4"}), kExitUsage);
  EXPECT_EQ(cli({"ensemble", "--out", path("e.json"), "--seed", "1", "--weights", "0.5", "--thetas", "1"}),
            kExitUsage);
  EXPECT_EQ(cli({"ensemble", "--out", path("e.json"), "--seed", "1", "--weights", "1.5"}), kExitUsage);
  EXPECT_EQ(cli({"ensemble", "--out", path("e.json"), "--seed", "1", "--noise-sigma", "2"}), kExitUsage);
  EXPECT_EQ(cli({"nonlinear", "--out", path("n.json"), "--seed", "1", "--mode", "guess"}), kExitUsage);
  // Unwritable output is a runtime failure, not a usage error.
  EXPECT_EQ(cli({"envariance", "--out", path("missing/dir/v.json"), "--n", "1", "--m", "1"}), kExitRuntime);
}

TEST_F(CliTest, FlowFieldFixedPointCellIsSlowest) {
  ASSERT_EQ(cli({"flow-field", "--out", path("f.csv")}), kExitOk) << err_.str();
  const auto rows = read_csv(path("f.csv"));
  ASSERT_EQ(rows.front(), (std::vector<std::string>{"theta", "phi", "theta_dot", "phi_dot", "speed", "pole"}));
  const std::size_t nt = 37, np = 72;
  ASSERT_EQ(rows.size(), 1 + nt * np);
  auto speed = [&](std::size_t i, std::size_t j) { return std::stod(rows[1 + i * np + j][4]); };

  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t j = 0; j < np; ++j)
      if (speed(i, j) < speed(bi, bj)) bi = i, bj = j;
  ASSERT_GT(bi, 0u);
  ASSERT_LT(bi, nt - 1);
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) {
      if (di == 0 && dj == 0) continue;
      const std::size_t j = (bj + np + dj) % np;
      EXPECT_LT(speed(bi, bj), speed(bi + di, j));
    }

  // The slowest cell sits next to a fixed point of the same generator.
  Generatord g;
  g.alpha_i = 0.5;
  g.delta_i = -0.5;
  g.gamma_i = 0.5;
  g.beta_r = 0.1;
  const auto report = classify_fixed_points(g);
  const double t = std::stod(rows[1 + bi * np + bj][0]), p = std::stod(rows[1 + bi * np + bj][1]);
  double best = 10;
  for (const auto& fp : report.points) {
    const double c = std::sin(t) * std::sin(fp.location.theta) * std::cos(p - fp.location.phi) +
                     std::cos(t) * std::cos(fp.location.theta);
    best = std::min(best, std::acos(std::clamp(c, -1.0, 1.0)));
  }
  EXPECT_LT(best, 0.1);
}

TEST_F(CliTest, ZeroGeneratorGivesZeroField) {
  ASSERT_EQ(cli({"flow-field", "--out", path("z.csv"), "--preset", "none", "--n-theta", "7", "--n-phi", "5"}),
            kExitOk)
      << err_.str();
  const auto rows = read_csv(path("z.csv"));
  ASSERT_EQ(rows.size(), 36u);
  for (std::size_t r = 1; r < rows.size(); ++r)
    for (std::size_t c = 2; c <= 4; ++c) EXPECT_EQ(std::stod(rows[r][c]), 0.0) << r;
}

TEST_F(CliTest, RabiPresetMatchesSigmaY) {
  ASSERT_EQ(cli({"flow-field", "--out", path("r.csv"), "--preset", "fig1", "--n-theta", "9", "--n-phi", "8"}),
            kExitOk);
  const auto rows = read_csv(path("r.csv"));
  const auto g = sigma_y_generator(1.0);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double t = std::stod(rows[r][0]), p = std::stod(rows[r][1]);
    const auto d = derivatives(BlochStated::canonical(t, p), g);
    EXPECT_NEAR(std::stod(rows[r][2]), d.theta_dot, 1e-15);
    EXPECT_NEAR(std::stod(rows[r][3]), d.phi_dot(), 1e-15);
  }
}

TEST_F(CliTest, AttractiveTrajectoryWithoutNoiseIsMonotone) {
  ASSERT_EQ(cli({"trajectory", "--out", path("a.csv"), "--seed", "1", "--preset", "none", "--alpha-i", "1",
                 "--dt", "0.01", "--steps", "2000", "--stride", "1", "--weights", "0.2,0.6"}),
            kExitOk)
      << err_.str();
  const auto rows = read_csv(path("a.csv"));
  ASSERT_EQ(rows.front(), (std::vector<std::string>{"ic", "t", "theta", "phi", "weight0"}));
  double prev = -1;
  std::string ic = "0";
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r][0] != ic) ic = rows[r][0], prev = -1;
    const double w = std::stod(rows[r][4]);
    EXPECT_GE(w, prev);
    prev = w;
  }
  EXPECT_GT(prev, 1 - 1e-9);
}

TEST_F(CliTest, SameSeedSameBytes) {
  const std::vector<std::string> tj = {"trajectory", "--seed", "7", "--steps", "500", "--stride", "5"};
  auto with = [](std::vector<std::string> v, std::initializer_list<std::string> extra) {
    v.insert(v.end(), extra);
    return v;
  };
  ASSERT_EQ(cli(with(tj, {"--out", path("t1.csv")})), kExitOk);
  ASSERT_EQ(cli(with(tj, {"--out", path("t2.csv"), "--threads", "3"})), kExitOk);
  EXPECT_EQ(slurp(path("t1.csv")), slurp(path("t2.csv")));

  const std::vector<std::string> en = {"ensemble", "--seed", "7", "--runs", "40", "--max-steps", "2000",
                                       "--weights", "0.2,0.5,0.8"};
  ASSERT_EQ(cli(with(en, {"--out", path("e1.json")})), kExitOk);
  ASSERT_EQ(cli(with(en, {"--out", path("e2.json"), "--threads", "4"})), kExitOk);
  EXPECT_EQ(slurp(path("e1.json")), slurp(path("e2.json")));
  EXPECT_EQ(slurp(path("e1.csv")), slurp(path("e2.csv")));

  const std::vector<std::string> nl = {"nonlinear", "--seed", "7", "--draws", "300"};
  ASSERT_EQ(cli(with(nl, {"--out", path("n1.json")})), kExitOk);
  ASSERT_EQ(cli(with(nl, {"--out", path("n2.json"), "--threads", "2"})), kExitOk);
  EXPECT_EQ(slurp(path("n1.json")), slurp(path("n2.json")));
  EXPECT_EQ(slurp(path("n1.csv")), slurp(path("n2.csv")));

  ASSERT_EQ(cli({"nonlinear", "--seed", "8", "--draws", "300", "--out", path("n3.json")}), kExitOk);
  EXPECT_NE(slurp(path("n1.csv")), slurp(path("n3.csv")));
}

TEST_F(CliTest, EnsembleHalfWeightIsFair) {
  ASSERT_EQ(cli({"ensemble", "--out", path("h.json"), "--seed", "3", "--runs", "2000", "--weights", "0.5"}),
            kExitOk)
      << err_.str();
  const Json j = read_json(path("h.json"));
  EXPECT_EQ(j["command"], "ensemble");
  const Json& p = j["points"][0];
  EXPECT_NEAR(p["born"].get<double>(), 0.5, 1e-15);
  EXPECT_NEAR(p["splitting"].get<double>(), 0.5, 1e-15);
  EXPECT_LT(std::abs(p["z_splitting"].get<double>()), 3.0);
  const Json& c = p["counts"];
  EXPECT_EQ(c["pointer0"].get<int>() + c["pointer1"].get<int>() + c["unresolved"].get<int>(), 2000);
}

TEST_F(CliTest, NonlinearFixedLambdaIsAStep) {
  ASSERT_EQ(cli({"nonlinear", "--out", path("s.json"), "--seed", "1", "--lambda", "0", "--draws", "50",
                 "--weights", "0.1,0.4,0.6,0.9"}),
            kExitOk)
      << err_.str();
  const Json j = read_json(path("s.json"));
  const std::vector<int> expect = {0, 0, 50, 50};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(j["points"][i]["counts"]["pointer0"].get<int>(), expect[i]);
    EXPECT_EQ(j["points"][i]["counts"]["pointer1"].get<int>(), 50 - expect[i]);
    EXPECT_EQ(j["points"][i]["born"].get<double>(), expect[i] / 50.0);
  }
}

TEST_F(CliTest, NonlinearCrossCheckAgrees) {
  ASSERT_EQ(cli({"nonlinear", "--out", path("c.json"), "--seed", "5", "--draws", "100", "--mode", "cross-check"}),
            kExitOk)
      << err_.str();
  const Json j = read_json(path("c.json"));
  const Json& cc = j["summary"]["cross_check"];
  EXPECT_EQ(cc["pairs"].get<int>(), 900);
  EXPECT_EQ(cc["decisive_disagreements"].get<int>(), 0);
  EXPECT_LT(j["summary"]["born"]["max_abs_z"].get<double>(), 4.0);
}

TEST_F(CliTest, EnvarianceReports) {
  ASSERT_EQ(cli({"envariance", "--out", path("v11.json"), "--n", "1", "--m", "1"}), kExitOk) << err_.str();
  const Json a = read_json(path("v11.json"));
  for (const auto& c : a["checks"]) EXPECT_TRUE(c["envariant"].get<bool>()) << c["name"];

  ASSERT_EQ(cli({"envariance", "--out", path("v21.json"), "--n", "2", "--m", "1"}), kExitOk);
  const Json b = read_json(path("v21.json"));
  EXPECT_NEAR(b["frobenius_distance"].get<double>(), std::sqrt(2.0) / 3, 1e-15);
  EXPECT_TRUE(b["system_marginal"]["agree"].get<bool>());
  EXPECT_LT(b["system_swap_alone"]["overlap"].get<double>(), 1);
  EXPECT_FALSE(b["checks"][0]["envariant"].get<bool>());
  EXPECT_TRUE(b["checks"][1]["envariant"].get<bool>());
}

}  // namespace
}  // namespace blochflow::cli
