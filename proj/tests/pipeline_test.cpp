#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "test_support.hpp"
#include "vnep/instance_io.hpp"
#include "vnep/pipeline.hpp"
#include "vnep/scenario.hpp"

namespace vnep {
namespace {

namespace fs = std::filesystem;

TEST(Pipeline, Fig3ProfitGivesZeroAndEmptyRounding) {
  auto rep = run_pipeline(fig3_instance(), PipelineConfig{});
  EXPECT_NEAR(rep.lp_objective, 0.0, 1e-6);
  EXPECT_TRUE(rep.rounding.accepted);
  EXPECT_EQ(rep.rounding.objective, 0.0);
  ASSERT_EQ(rep.requests.size(), 1u);
  EXPECT_FALSE(rep.requests[0].kept);
  EXPECT_TRUE(rep.to_json()["rounding"]["selection"]["r"].is_null());
}

TEST(Pipeline, TreeCorpusWithinBounds) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Instance inst = testing::tiny_random_instance(seed, "tree", 3, 4, 6);
    PipelineConfig cfg;
    cfg.seed = seed;
    auto rep = run_pipeline(inst, cfg);
    EXPECT_TRUE(rep.rounding.accepted) << seed;
    if (!rep.rounding.accepted) continue;
    EXPECT_LE(rep.rounding.loads.max_node_utilization, rep.rounding.bounds.beta + 1e-9);
    EXPECT_LE(rep.rounding.loads.max_edge_utilization, rep.rounding.bounds.gamma + 1e-9);
    EXPECT_NEAR(rep.recomputed_objective, rep.rounding.objective, 1e-6);
  }
}

TEST(Pipeline, CactusWidthsAtMostTwo) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto rep = run_pipeline(testing::tiny_random_instance(seed, "cactus", 2, 5, 6), PipelineConfig{});
    for (const auto& r : rep.requests) {
      if (r.kept) {
        EXPECT_LE(r.width, 2);
      }
    }
  }
}

TEST(Pipeline, CostVariantEmbedsEverything) {
  Instance inst = testing::tiny_random_instance(3, "cactus", 2, 4, 6);
  PipelineConfig cfg;
  cfg.variant = Objective::kCost;
  auto rep = run_pipeline(inst, cfg);
  for (const auto& sel : rep.rounding.selection) EXPECT_TRUE(sel.has_value());
  EXPECT_LE(rep.rounding.objective, 2 * rep.lp_objective + 1e-6 * std::max(1.0, rep.lp_objective));
  for (const auto& r : rep.requests) EXPECT_GE(r.surviving_weight, 0.5);
}

TEST(Pipeline, StageErrors) {
  Instance bad = fig3_instance();
  RequestBuilder b(bad.substrate, "zz", 1.0);
  b.add_node("i", "cpu", 1).add_node("j", "cpu", 1);
  bad.requests.push_back(b.build());
  try {
    run_pipeline(bad, PipelineConfig{});
    FAIL();
  } catch (const PipelineError& e) {
    EXPECT_EQ(e.stage(), "validate");
    EXPECT_EQ(e.exit_code(), 2);
  }

  PipelineConfig cost;
  cost.variant = Objective::kCost;
  try {
    run_pipeline(fig3_instance(), cost);
    FAIL();
  } catch (const PipelineError& e) {
    EXPECT_EQ(e.stage(), "lp");
    EXPECT_EQ(e.exit_code(), 3);
  }

  PipelineConfig tight;
  tight.variable_budget = 3;
  EXPECT_THROW(run_pipeline(testing::tiny_random_instance(1, "tree", 1, 3, 4), tight), PipelineError);
}

TEST(Pipeline, ReportsAreDeterministic) {
  Instance inst = testing::tiny_random_instance(21, "parallel", 3, 4, 6);
  PipelineConfig cfg;
  cfg.seed = 5;
  EXPECT_EQ(run_pipeline(inst, cfg).to_json().dump(), run_pipeline(inst, cfg).to_json().dump());
  cfg.variant = Objective::kCost;
  EXPECT_EQ(run_pipeline(inst, cfg).to_json().dump(), run_pipeline(inst, cfg).to_json().dump());
}

TEST(Pipeline, LongCsv) {
  std::vector<TryRecord> tries{{0, 1.0, 0.5, 0.5, true}};
  std::string csv = tries_to_long_csv(tries);
  EXPECT_EQ(csv, "trial,metric,value\n0,objective,1\n0,max_node_utilization,0.5\n0,max_edge_utilization,0.5\n"
                 "0,accepted,1\n");
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("vnep_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    std::string cmd = std::string(VNEP_CLI_PATH) + " " + args + " > " + (dir_ / "stdout").string() + " 2> " +
                      (dir_ / "stderr").string();
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string slurp(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(Cli, ExitCodes) {
  ASSERT_EQ(run("generate --fixture fig3 -o " + path("fig3.json")), 0);
  ASSERT_EQ(run("generate --fixture tree:4 -o " + path("tree.json")), 0);
  EXPECT_EQ(run("validate " + path("fig3.json")), 0);
  EXPECT_EQ(run("run " + path("fig3.json")), 0);
  EXPECT_EQ(run("round " + path("fig3.json") + " --variant cost"), 3);
  EXPECT_EQ(run("round " + path("tree.json") + " --alpha 1000"), 4);

  std::ofstream(path("broken.json")) << "{ not json";
  EXPECT_EQ(run("validate " + path("broken.json")), 2);

  Json doc = read_json_file(path("fig3.json"));
  doc["requests"][0]["nodes"][0]["allowed_nodes"] = Json::array();
  std::ofstream(path("empty_allowed.json")) << doc.dump();
  EXPECT_EQ(run("validate " + path("empty_allowed.json")), 2);
  EXPECT_NE(slurp("stdout").find("empty allowed set") + slurp("stderr").find("empty allowed set"),
            2 * std::string::npos);

  EXPECT_EQ(run("generate --fixture nonsense"), 1);
}

TEST_F(Cli, SolveDecomposeRoundTrip) {
  ASSERT_EQ(run("generate --shape cactus --requests 2 --seed 4 -o " + path("inst.json")), 0);
  ASSERT_EQ(run("solve-lp " + path("inst.json") + " -o " + path("lp.json") + " --export-lp " + path("model.lp")), 0);
  EXPECT_NE(slurp("model.lp").find("Subject To"), std::string::npos);
  ASSERT_EQ(run("decompose " + path("inst.json") + " --solution " + path("lp.json") + " -o " + path("dec.json")), 0);
  Json dec = read_json_file(path("dec.json"));
  EXPECT_FALSE(dec.empty());
  ASSERT_EQ(run("round " + path("inst.json") + " --seed 9 --csv " + path("tries.csv") + " --plot-data " +
                path("plot.csv") + " -o " + path("a.json")),
            0);
  ASSERT_EQ(run("round " + path("inst.json") + " --seed 9 -o " + path("b.json")), 0);
  EXPECT_EQ(slurp("a.json"), slurp("b.json"));
  EXPECT_EQ(slurp("tries.csv").substr(0, 5), "trial");
  EXPECT_EQ(slurp("plot.csv").substr(0, 18), "trial,metric,value");
  EXPECT_EQ(run("exact " + path("inst.json") + " --relaxation ip"), 0);
  EXPECT_EQ(run("width " + path("inst.json") + " --strategy exhaustive"), 0);
}

TEST_F(Cli, ParallelRunMatchesSequential) {
  std::string files;
  for (int k = 1; k <= 3; ++k) {
    std::string p = path("i" + std::to_string(k) + ".json");
    ASSERT_EQ(run("generate --shape tree --requests 2 --seed " + std::to_string(k) + " -o " + p), 0);
    files += " " + p;
  }
  ASSERT_EQ(run("run" + files + " --jobs 3 -o " + path("par.json")), 0);
  ASSERT_EQ(run("run" + files + " --jobs 1 -o " + path("seq.json")), 0);
  EXPECT_EQ(slurp("par.json"), slurp("seq.json"));
}

}  // namespace
}  // namespace vnep
