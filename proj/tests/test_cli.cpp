// Copyright 2026 The catbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "catbell/phasespace.hpp"
#include "catbell/states.hpp"
#include "cli.hpp"

namespace catbell::cli {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const CliRun r = run(args);
  EXPECT_EQ(r.code, kOk) << r.err;
  return nlohmann::json::parse(r.out);
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("catbell_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

TEST(Helpers, ParseGrid) {
  EXPECT_EQ(parse_grid("0:1:3"), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(parse_grid("2:5:1"), (std::vector<double>{2.0}));
  EXPECT_EQ(parse_grid("0.5,1,2"), (std::vector<double>{0.5, 1.0, 2.0}));
  EXPECT_ANY_THROW(parse_grid("0:1"));
  EXPECT_ANY_THROW(parse_grid("0:1:2.5"));
  EXPECT_ANY_THROW(parse_grid("a,b"));
}

TEST(Helpers, CsvFieldAndNumbers) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(std::stod(format_number(2.0 / 3.0)), 2.0 / 3.0);
}

TEST(Eval, EvenCatAtOrigin) {
  const auto j = run_json({"eval", "--family", "scs-even", "--gamma", "1.2", "--points", "0,0"});
  EXPECT_EQ(j["format"], "catbell-table");
  EXPECT_EQ(j["version"], kTableVersion);
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_NEAR(j["rows"][0]["W"].get<double>(), 2.0 / kPi, 1e-14);
  const double n = 2.0 * (1.0 + std::exp(-2.0 * 1.44));
  EXPECT_NEAR(j["rows"][0]["Q"].get<double>(), 4.0 * std::exp(-1.44) / (kPi * n), 1e-14);
}

TEST(Eval, TwoModeRowsMatchLibrary) {
  const auto j = run_json({"eval", "--family", "ecs-psi-minus", "--gamma", "0.8", "--points",
                           "0.1,0.2,-0.3,0.4", "--points", "1,0,0,1"});
  const StateSpec spec = StateSpec::make(Family::EcsPsiMinus, 0.8);
  ASSERT_EQ(j["rows"].size(), 2u);
  for (const auto& r : j["rows"]) {
    const Complex a(r["a_re"].get<double>(), r["a_im"].get<double>());
    const Complex b(r["b_re"].get<double>(), r["b_im"].get<double>());
    EXPECT_EQ(r["W"].get<double>(), wigner_two_mode(spec, a, b));
    EXPECT_EQ(r["Q"].get<double>(), husimi_two_mode(spec, a, b));
  }
}

TEST(Eval, CsvAndJsonCarryTheSameNumbers) {
  const std::vector<std::string> args = {"eval", "--family", "sscs-odd", "--gamma", "1",
                                         "--s", "0.3", "--grid", "-1:1:3"};
  const auto j = run_json(args);
  const CliRun csv = run(args);
  ASSERT_EQ(csv.code, kOk);
  std::istringstream in(csv.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# catbell eval table v1", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "a_re,a_im,W,Q");
  std::size_t i = 0;
  while (std::getline(in, line) && line[0] != '#') {
    std::vector<double> v;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) v.push_back(std::stod(f));
    ASSERT_LT(i, j["rows"].size());
    EXPECT_EQ(v[2], j["rows"][i]["W"].get<double>());
    EXPECT_EQ(v[3], j["rows"][i]["Q"].get<double>());
    ++i;
  }
  EXPECT_EQ(i, 9u);
}

TEST(Bell, SeedOverrideIsStable) {
  const std::vector<std::string> base = {"bell", "--family", "ess-plus", "--gamma", "1.140175425099138",
                                         "--s", "0.4", "--scheme", "parity"};
  const auto a = run_json(base);
  auto reseeded = base;
  reseeded.insert(reseeded.end(), {"--seed", "99"});
  const auto b = run_json(reseeded);
  EXPECT_NEAR(a["rows"][0]["B"].get<double>(), b["rows"][0]["B"].get<double>(), 1e-4);
  EXPECT_NEAR(a["rows"][0]["B"].get<double>(), 2.419964, 1e-5);
}

TEST(Sweep, FailedRowsGiveExitThree) {
  const CliRun r = run({"--format", "json", "sweep", "--family", "ess-minus", "--gammas", "0,1",
                     "--s-grid", "0", "--n-starts", "8", "--n-anchor-starts", "8"});
  EXPECT_EQ(r.code, kNumerical);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_TRUE(j["rows"][0]["B"].is_null());
  EXPECT_FALSE(j["rows"][0]["error"].get<std::string>().empty());
  EXPECT_TRUE(j["rows"][1]["B"].is_number());
}

TEST(Errors, UnknownFamilyListsChoices) {
  const CliRun r = run({"eval", "--family", "cat", "--gamma", "1", "--points", "0,0"});
  EXPECT_EQ(r.code, kUsage);
  for (const Family f : kAllFamilies) {
    EXPECT_NE(r.err.find(std::string(family_name(f))), std::string::npos);
  }
  EXPECT_EQ(run({"eval", "--family", "scs-even", "--gamma", "-1", "--points", "0,0"}).code,
            kUsage);
  EXPECT_EQ(run({"bell", "--family", "scs-even", "--gamma", "1"}).code, kUsage);
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"eval", "--family", "scs-even", "--gamma", "1", "--points", "0"}).code, kUsage);
}

TEST(OracleCheck, PerturbationExitsFourWithValidJson) {
  const CliRun r = run({"--format", "json", "oracle-check", "--perturb-family", "ess-plus",
                     "--perturbation", "1e-6"});
  EXPECT_EQ(r.code, kOracleMismatch);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["summary"]["passed"], 0);
  ASSERT_FALSE(j["rows"].empty());
  for (const auto& row : j["rows"]) EXPECT_EQ(row["family"], "ess-plus");
}

TEST(Output, RepeatableAtomicAndConfigurable) {
  const auto dir = scratch_dir();
  const auto path = dir / "bell.csv";
  const std::vector<std::string> args = {"-o", path.string(), "bell", "--family",
                                         "ecs-phi-minus", "--gamma", "1", "--n-starts", "8",
                                         "--n-anchor-starts", "8"};
  ASSERT_EQ(run(args).code, kOk);
  const std::string first = slurp(path);
  ASSERT_EQ(run(args).code, kOk);
  EXPECT_EQ(slurp(path), first);
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    EXPECT_EQ(e.path().filename().string().find(".tmp"), std::string::npos);
  }

  // Config values apply; command-line flags override them.
  const auto cfg = dir / "run.ini";
  std::ofstream(cfg) << "format = json\n[bell]\nfamily = ecs-phi-minus\ngamma = 1\nscheme = onoff\n"
                        "n-starts = 8\nn-anchor-starts = 8\n";
  const CliRun from_cfg = run({"--config", cfg.string(), "bell"});
  ASSERT_EQ(from_cfg.code, kOk) << from_cfg.err;
  const auto j = nlohmann::json::parse(from_cfg.out);
  EXPECT_EQ(j["rows"][0]["scheme"], "onoff");
  const CliRun overridden = run({"--config", cfg.string(), "bell", "--scheme", "ch"});
  ASSERT_EQ(overridden.code, kOk) << overridden.err;
  EXPECT_EQ(nlohmann::json::parse(overridden.out)["rows"][0]["scheme"], "ch");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace catbell::cli
