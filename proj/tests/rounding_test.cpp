#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_support.hpp"
#include "vnep/rounding.hpp"
#include "vnep/scenario.hpp"

namespace vnep {
namespace {

TEST(Bounds, ProfitClosedForm) {
  auto b = bounds_from_parameters(Objective::kProfit, 0.5, 1.0, 1.0, 10, 1);
  double expect = 1.0 + 0.5 * std::sqrt(2.0 * std::log(10.0));
  EXPECT_NEAR(b.beta, expect, 1e-12);
  EXPECT_NEAR(b.beta, 2.0730, 1e-4);
  EXPECT_NEAR(b.gamma, expect, 1e-12);
  EXPECT_NEAR(b.alpha, 1.0 / 3.0, 1e-15);
}

TEST(Bounds, CostAddsTwo) {
  auto b = bounds_from_parameters(Objective::kCost, 0.5, 1.0, 1.0, 10, 1);
  EXPECT_NEAR(b.beta, 2.0 + 0.5 * std::sqrt(2.0 * std::log(10.0)), 1e-12);
  EXPECT_NEAR(b.beta, 3.0730, 1e-4);
  EXPECT_EQ(b.alpha, 2.0);
}

TEST(Bounds, EpsilonToZero) {
  auto p = bounds_from_parameters(Objective::kProfit, 0.0, 3.0, 2.0, 8, 2);
  EXPECT_EQ(p.beta, 1.0);
  EXPECT_EQ(p.gamma, 1.0);
  auto c = bounds_from_parameters(Objective::kCost, 0.0, 3.0, 2.0, 8, 2);
  EXPECT_EQ(c.beta, 2.0);
  EXPECT_EQ(c.gamma, 2.0);
}

TEST(Bounds, TypesEnterOnlyNodeBound) {
  auto b = bounds_from_parameters(Objective::kProfit, 0.25, 2.0, 3.0, 6, 3);
  EXPECT_NEAR(b.beta, 1.0 + 0.25 * std::sqrt(2.0 * 2.0 * std::log(18.0)), 1e-12);
  EXPECT_NEAR(b.gamma, 1.0 + 0.25 * std::sqrt(2.0 * 3.0 * std::log(6.0)), 1e-12);
}

TEST(Bounds, ComputedFromInstance) {
  // Single request, A_max = d_max everywhere, 10 substrate nodes, eps 1/2.
  testing::TinySubstrate t;
  for (int k = 0; k < 10; ++k) t.nodes.push_back("n" + std::to_string(k));
  t.node_capacity = 2.0;
  Substrate s = t.build();
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 1.0);
  Instance inst{s, {b.build()}};
  auto bounds = compute_bounds(inst, resource_stats(s, inst.requests), Objective::kProfit);
  EXPECT_NEAR(bounds.epsilon, 0.5, 1e-15);
  EXPECT_NEAR(bounds.delta_nodes, 1.0, 1e-12);
  EXPECT_NEAR(bounds.beta, 1.0 + 0.5 * std::sqrt(2.0 * std::log(10.0)), 1e-9);
}

TEST(Bounds, DemandBeyondCapacityRejected) {
  testing::TinySubstrate t;
  t.nodes = {"a"};
  t.node_capacity = 1.0;
  Substrate s = t.build();
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 3.0, std::vector<std::string>{"a"});
  Instance inst{s, {b.build()}};
  EXPECT_THROW(compute_bounds(inst, resource_stats(s, inst.requests), Objective::kProfit), std::domain_error);
}

TEST(PruneWeights, EqualCostsKeepEverything) {
  auto p = prune_weights({0.25, 0.25, 0.5}, {3, 3, 3});
  EXPECT_EQ(p.kept.size(), 3u);
  EXPECT_NEAR(p.surviving_weight, 1.0, 1e-12);
}

TEST(PruneWeights, ThresholdExamples) {
  // WC = 10.9; the cost-100 entry is above 21.8 and goes.
  auto a = prune_weights({0.9, 0.1}, {1, 100});
  EXPECT_NEAR(a.weighted_cost, 10.9, 1e-12);
  EXPECT_EQ(a.kept, (std::vector<int>{0}));
  EXPECT_NEAR(a.surviving_weight, 0.9, 1e-12);

  auto below = prune_weights({0.9, 0.1}, {1, 20});
  EXPECT_NEAR(below.weighted_cost, 2.9, 1e-12);
  EXPECT_EQ(below.kept, (std::vector<int>{0}));
  auto kept_all = prune_weights({0.9, 0.1}, {10, 20});
  EXPECT_EQ(kept_all.kept.size(), 2u);

  auto b = prune_weights({0.5, 0.5}, {1, 3});
  EXPECT_NEAR(b.weighted_cost, 2.0, 1e-12);
  EXPECT_EQ(b.kept.size(), 2u);

  auto c = prune_weights({0.6, 0.4}, {1, 10});
  EXPECT_NEAR(c.weighted_cost, 4.6, 1e-12);
  ASSERT_EQ(c.kept, (std::vector<int>{0}));
  EXPECT_NEAR(c.surviving_weight, 0.6, 1e-12);
  EXPECT_NEAR(c.weights[0], 1.0, 1e-12);
}

TEST(PruneWeights, RejectsUnnormalizedInput) {
  EXPECT_THROW(prune_weights({0.5, 0.3}, {1, 1}), std::invalid_argument);
}

// Markov: the weight above twice the mean is always below 1/2.
TEST(PruneWeights, SurvivalOnRandomInputs) {
  Rng rng(77);
  for (int k = 0; k < 500; ++k) {
    int n = 1 + rng.below(8);
    std::vector<double> w(n), c(n);
    double total = 0;
    for (int i = 0; i < n; ++i) {
      w[i] = rng.uniform(0.01, 1.0);
      c[i] = rng.coin(0.2) ? rng.uniform(0, 1000) : rng.uniform(0, 5);
      total += w[i];
    }
    for (double& x : w) x /= total;
    auto p = prune_weights(w, c);
    EXPECT_GE(p.surviving_weight, 0.5 - 1e-12);
    double sum = 0;
    for (double x : p.weights) sum += x;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(CheckTriCriteria, EmptySolutionFailsAgainstPositiveProfit) {
  FeasibilityReport loads;
  RoundingBounds b = bounds_from_parameters(Objective::kProfit, 0.5, 1, 1, 4, 1);
  EXPECT_FALSE(check_tri_criteria(0.0, loads, b, 3.0, Objective::kProfit).ok);
  auto at_opt = check_tri_criteria(3.0, loads, b, 3.0, Objective::kProfit);
  EXPECT_TRUE(at_opt.ok);
  EXPECT_NEAR(at_opt.objective_margin, 2.0, 1e-12);
}

TEST(CheckTriCriteria, LoadsBeyondBetaFail) {
  FeasibilityReport loads;
  loads.max_node_utilization = 2.5;
  RoundingBounds b;
  b.alpha = 2.0;
  b.beta = 2.0;
  b.gamma = 2.0;
  auto c = check_tri_criteria(1.0, loads, b, 1.0, Objective::kCost);
  EXPECT_FALSE(c.ok);
  EXPECT_NEAR(c.node_margin, -0.5, 1e-12);
}

ConvexDecomposition single_entry(const Mapping& m, double w) {
  ConvexDecomposition d;
  d.entries.push_back({w, m});
  return d;
}

class RoundingFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::TinySubstrate t;
    t.nodes = {"a", "b"};
    t.edges = {{"a", "b", 10, 1}};
    s_ = t.build();
    RequestBuilder b(s_, "r", 4.0);
    b.add_node("i", "cpu", 1.0);
    inst_ = Instance{s_, {b.build()}};
    ma_ = Mapping{{0}, {}};
    mb_ = Mapping{{1}, {}};
  }
  Substrate s_;
  Instance inst_;
  Mapping ma_, mb_;
};

TEST_F(RoundingFixture, SingleEntryAlwaysSelected) {
  auto bounds = bounds_from_parameters(Objective::kProfit, 0.1, 1, 1, 2, 1);
  std::vector<ConvexDecomposition> decs{single_entry(ma_, 1.0)};
  auto sol = round_profit(s_, inst_.requests, decs, bounds, 4.0, 16, 3);
  EXPECT_TRUE(sol.accepted);
  EXPECT_EQ(sol.tries_used, 1);
  ASSERT_TRUE(sol.selection[0].has_value());
  EXPECT_EQ(*sol.selection[0], ma_);
  EXPECT_EQ(sol.objective, 4.0);
}

TEST_F(RoundingFixture, EmptyDecompositionSelectsNothing) {
  auto bounds = bounds_from_parameters(Objective::kProfit, 0.1, 1, 1, 2, 1);
  std::vector<ConvexDecomposition> decs{ConvexDecomposition{}};
  auto sol = round_profit(s_, inst_.requests, decs, bounds, 0.0, 4, 3);
  EXPECT_FALSE(sol.selection[0].has_value());
  EXPECT_EQ(sol.objective, 0.0);
  EXPECT_TRUE(sol.accepted);
}

TEST_F(RoundingFixture, SamplingMarginalsAndDeterminism) {
  ConvexDecomposition d;
  d.entries = {{0.3, ma_}, {0.5, mb_}};
  std::vector<ConvexDecomposition> decs{d};
  const int trials = 20000;
  int hits_a = 0, hits_b = 0, none = 0;
  for (int t = 0; t < trials; ++t) {
    int pick = sample_selection(decs, 11, t)[0];
    hits_a += pick == 0;
    hits_b += pick == 1;
    none += pick == -1;
    EXPECT_EQ(pick, sample_selection(decs, 11, t)[0]);
  }
  auto within = [&](int hits, double p) {
    double sigma = std::sqrt(trials * p * (1 - p));
    return std::abs(hits - trials * p) <= 3 * sigma;
  };
  EXPECT_TRUE(within(hits_a, 0.3)) << hits_a;
  EXPECT_TRUE(within(hits_b, 0.5)) << hits_b;
  EXPECT_TRUE(within(none, 0.2)) << none;
}

TEST_F(RoundingFixture, SeedsChangeTheStream) {
  ConvexDecomposition d;
  d.entries = {{0.5, ma_}, {0.5, mb_}};
  std::vector<ConvexDecomposition> decs{d};
  int differ = 0;
  for (int t = 0; t < 64; ++t) differ += sample_selection(decs, 1, t) != sample_selection(decs, 2, t);
  EXPECT_GT(differ, 0);
}

TEST_F(RoundingFixture, CostRoundingPicksWithinCap) {
  // Node a costs 1 per unit, node b costs 3.
  SubstrateBuilder sb;
  sb.add_node("a").add_node_type("a", "cpu", 10, 1.0);
  sb.add_node("b").add_node_type("b", "cpu", 10, 3.0);
  Substrate s = sb.build();
  RequestBuilder rb(s, "r", 1.0);
  rb.add_node("i", "cpu", 1.0);
  std::vector<Request> reqs{rb.build()};
  ConvexDecomposition d;
  d.entries = {{0.5, ma_}, {0.5, mb_}};
  auto pruned = prune_costly_mappings(s, reqs[0], d);
  EXPECT_NEAR(pruned.weighted_cost, 2.0, 1e-12);
  EXPECT_EQ(pruned.decomposition.entries.size(), 2u);
  auto bounds = bounds_from_parameters(Objective::kCost, 0.1, 1, 1, 2, 1);
  auto sol = round_cost(s, reqs, {pruned.decomposition}, bounds, 2.0, 32, 5);
  ASSERT_TRUE(sol.selection[0].has_value());
  EXPECT_LE(sol.objective, 4.0 + 1e-9);
  for (const auto& t : sol.tries) EXPECT_LE(t.objective, 4.0 + 1e-9);
}

TEST(TriesCsv, HeaderAndRows) {
  std::vector<TryRecord> tries{{0, 1.5, 0.5, 0.25, false}, {1, 2.0, 1.0, 0.5, true}};
  std::string csv = tries_to_csv(tries);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "trial,objective,max_node_utilization,max_edge_utilization,accepted");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(PreprocessProfit, Fig3DroppedAndOverprovisionedKept) {
  Instance fig3 = fig3_instance();
  auto res = preprocess_profit(fig3);
  EXPECT_TRUE(res.kept.requests.empty());
  EXPECT_EQ(res.dropped, (std::vector<std::string>{"r"}));

  Substrate s = ring_substrate(4, 100, 100);
  Digraph g = make_digraph({"x", "y"}, {{"x", "y"}});
  Instance easy{s, {request_from_digraph(s, g, "easy", 2.0)}};
  auto kept = preprocess_profit(easy);
  EXPECT_EQ(kept.kept.requests.size(), 1u);
  EXPECT_TRUE(kept.dropped.empty());
}

}  // namespace
}  // namespace vnep
