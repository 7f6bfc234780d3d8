#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "twoiso/twoiso.hpp"

namespace twoiso::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result run_cli(const std::string& args) {
  const std::string command = std::string(TWOISO_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  Result result;
  if (!pipe) return result;
  std::array<char, 4096> buffer{};
  while (const auto n = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
    result.out.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("twoiso_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const json& doc) {
    const auto path = dir_ / name;
    std::ofstream(path) << doc.dump(2);
    return path.string();
  }

  fs::path dir_;
};

json c2_input() {
  const auto space = make_euclidean_space(2);
  const Op v(space, (Matrix(2, 2) << 0, 1, 1, 0).finished(), 0);
  return {{"operator", json_io::to_json(v)},
          {"u", json_io::to_json(Vec(-2.0 * space.monomial({0})))},
          {"v", json_io::to_json(space.monomial({1}))}};
}

TEST_F(CliTest, ReproduceExamplesPass) {
  for (const char* name : {"c2-example", "dirichlet-pper", "dirichlet-n0", "bidisc", "all"}) {
    const auto r = run_cli(std::string("reproduce ") + name);
    EXPECT_EQ(r.code, kExitOk) << name << "\n" << r.out;
    EXPECT_NE(r.out.find("all checks passed"), std::string::npos) << name;
  }
}

TEST_F(CliTest, ReproduceC2Json) {
  const auto r = run_cli("reproduce c2-example --format json");
  ASSERT_EQ(r.code, kExitOk);
  const json doc = json::parse(r.out);
  const auto& report = doc["results"][0]["data"]["report"];
  EXPECT_EQ(report["branch"], "II");
  EXPECT_EQ(report["verdict_theorem"], true);
  EXPECT_NEAR(report["gamma"].get<double>(), 0.0, 1e-12);
  EXPECT_LE(report["cond_iib_residual"].get<double>(), 1e-10);
}

TEST_F(CliTest, ReproduceBidiscIsBranchTwo) {
  const auto r = run_cli("reproduce bidisc --format json");
  ASSERT_EQ(r.code, kExitOk);
  const json report = json::parse(r.out)["results"][0]["data"]["report"];
  EXPECT_EQ(report["branch"], "II");
  EXPECT_EQ(report["verdict_oracle"], true);
}

TEST_F(CliTest, ReproduceDirichletN0ReportsQuarticDefect) {
  const auto r = run_cli("reproduce dirichlet-n0 --format json");
  ASSERT_EQ(r.code, kExitOk);
  const json result = json::parse(r.out)["results"][0];
  EXPECT_NEAR(result["data"]["defect_on_one"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(result["data"]["report"]["verdict_theorem"], false);
  EXPECT_FALSE(result["notes"].empty());

  const auto r2 = run_cli("reproduce dirichlet-n0 --alpha 0.5 -1 --format json");
  ASSERT_EQ(r2.code, kExitOk);
  EXPECT_NEAR(json::parse(r2.out)["results"][0]["data"]["defect_on_one"].get<double>(),
              1.5625, 1e-12);
}

TEST_F(CliTest, ReproduceRejectsUnknownName) {
  EXPECT_EQ(run_cli("reproduce nothing").code, kExitInputError);
  EXPECT_EQ(run_cli("").code, kExitInputError);
  EXPECT_EQ(run_cli("reproduce c2-example --tol-defect -1").code, kExitInputError);
}

TEST_F(CliTest, AnalyzeMatchesReproduce) {
  const auto path = write("c2.json", c2_input());
  const auto analyzed = run_cli("analyze " + path + " --format json");
  ASSERT_EQ(analyzed.code, kExitOk);
  const json a = json::parse(analyzed.out);
  const json b = json::parse(run_cli("reproduce c2-example --format json").out)["results"][0]["data"]["report"];
  for (const char* key : {"branch", "gamma", "kernel_residual", "cond_iia_residual",
                          "cond_iib_residual", "oracle_defect", "verdict_theorem"}) {
    EXPECT_EQ(a[key], b[key]) << key;
  }
  // Stable across runs.
  EXPECT_EQ(run_cli("analyze " + path + " --format json").out, analyzed.out);
}

TEST_F(CliTest, AnalyzeIdentityBase) {
  const auto space = make_euclidean_space(3);
  Vec v = space.monomial({1});
  json doc = {{"operator", json_io::to_json(identity(space))},
              {"u", json_io::to_json(Vec(-2.0 * v))},
              {"v", json_io::to_json(v)},
              {"expected_verdict", true}};
  const auto r = run_cli("analyze " + write("id.json", doc) + " --format json");
  ASSERT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(json::parse(r.out)["branch"], "I");

  doc["u"] = json_io::to_json(space.monomial({0}));
  doc["expected_verdict"] = true;
  EXPECT_EQ(run_cli("analyze " + write("id_bad.json", doc)).code, kExitMismatch);
}

TEST_F(CliTest, AnalyzeInputErrors) {
  json doc = c2_input();
  doc["v"] = json::array({{0, 0}, {0, 0}});
  EXPECT_EQ(run_cli("analyze " + write("zero.json", doc)).code, kExitInputError);

  std::ofstream(dir_ / "broken.json") << "{ not json";
  EXPECT_EQ(run_cli("analyze " + (dir_ / "broken.json").string()).code, kExitInputError);
  EXPECT_EQ(run_cli("analyze " + (dir_ / "missing.json").string()).code, kExitInputError);

  json scaled = c2_input();
  scaled["operator"] = json_io::to_json(Complex(2.0) * json_io::op_from_json(c2_input()["operator"]));
  const auto path = write("scaled.json", scaled);
  EXPECT_EQ(run_cli("analyze " + path).code, kExitInputError);
  EXPECT_EQ(run_cli("analyze " + path + " --allow-non-2iso-base").code, kExitOk);
}

TEST_F(CliTest, AnalyzeReportsZeroVectorAsNotRankOne) {
  RunConfig config;
  config.command = "analyze";
  json doc = c2_input();
  doc["v"] = json::array({{0, 0}, {0, 0}});
  config.target = write("zero.json", doc);
  std::ostringstream out, err;
  EXPECT_EQ(run(config, out, err), kExitInputError);
  EXPECT_NE(err.str().find("not rank one"), std::string::npos);
}

TEST_F(CliTest, SearchDirichletAlphaFindsCircle) {
  const auto r = run_cli("search dirichlet-alpha --format json");
  ASSERT_EQ(r.code, kExitOk);
  const json doc = json::parse(r.out);
  EXPECT_GE(doc["hits"].size(), 4u);
  for (const auto& hit : doc["hits"]) {
    EXPECT_NEAR(hit["abs_alpha_plus_1"].get<double>(), 1.0, 1e-6);
  }
  for (const char* power : {"0", "2"}) {
    const auto none = run_cli(std::string("search dirichlet-alpha --power ") + power + " --format json");
    ASSERT_EQ(none.code, kExitOk);
    EXPECT_TRUE(json::parse(none.out)["hits"].empty());
  }
}

TEST_F(CliTest, SearchEmptyGrid) {
  const auto r = run_cli("search dirichlet-alpha --re-min 1 --re-max 0 --format json");
  ASSERT_EQ(r.code, kExitOk);
  const json doc = json::parse(r.out);
  EXPECT_TRUE(doc["hits"].empty());
  EXPECT_EQ(doc["scanned"], 0);
}

TEST_F(CliTest, SearchC2RankOneIsReproducible) {
  const auto a = run_cli("search c2-rankone --seed 7 --trials 3 --format json");
  const auto b = run_cli("search c2-rankone --seed 7 --trials 3 --format json");
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  const json doc = json::parse(a.out);
  // |1 + r e^{i phi}| = 1 on the grid: (r, phi) = (1, 2pi/3), (2, pi), (1, 4pi/3).
  EXPECT_EQ(doc["hits"].size(), 9u);
  EXPECT_NE(run_cli("search c2-rankone --seed 8 --trials 3 --format json").out, a.out);
  EXPECT_EQ(run_cli("search nowhere").code, kExitInputError);
}

TEST_F(CliTest, DefectCommand) {
  const Op mz = dirichlet_shift(6);
  const auto& d = mz.space();
  auto defect_of = [&](const Op& t, const Vec& x, const std::string& name) {
    const auto r = run_cli("defect " + write(name, {{"operator", json_io::to_json(t)},
                                                    {"x", json_io::to_json(x)}}) +
                           " --format json");
    EXPECT_EQ(r.code, kExitOk);
    return json::parse(r.out);
  };
  const json safe = defect_of(mz, d.monomial({2}), "z2.json");
  EXPECT_NEAR(safe["defect"].get<double>(), 0.0, 1e-12);
  EXPECT_EQ(safe["safe"], true);

  const json alpha = defect_of(perturbed_dirichlet_monomial(6, 1.0, 0), d.monomial({0}), "a.json");
  EXPECT_NEAR(alpha["defect"].get<double>(), 1.0, 1e-12);

  const json top = defect_of(mz, d.monomial({6}), "top.json");
  EXPECT_EQ(top["safe"], false);

  const auto text = run_cli("defect " + (dir_ / "top.json").string());
  EXPECT_NE(text.out.find("unsafe"), std::string::npos);
  EXPECT_EQ(run_cli("defect " + write("bad.json", {{"x", {}}})).code, kExitInputError);
}

}  // namespace
}  // namespace twoiso::cli
