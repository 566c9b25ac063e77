#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"
#include "vnep/oracle.hpp"
#include "vnep/scenario.hpp"

namespace vnep {
namespace {

// Directed n-cycle "c0".."c{n-1}", one type, costs 1.
Substrate directed_cycle(int n, double node_cap = 10, double edge_cap = 10) {
  testing::TinySubstrate t;
  for (int k = 0; k < n; ++k) t.nodes.push_back("c" + std::to_string(k));
  t.node_capacity = node_cap;
  for (int k = 0; k < n; ++k) t.edges.emplace_back(t.nodes[k], t.nodes[(k + 1) % n], edge_cap, 1.0);
  return t.build();
}

TEST(Enumerate, SingleNodeThreeLocations) {
  Substrate s = directed_cycle(4);
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 1, std::vector<std::string>{"c0", "c1", "c3"});
  auto en = enumerate_valid_mappings(s, b.build());
  EXPECT_EQ(en.mappings.size(), 3u);
  EXPECT_FALSE(en.truncated);
}

// On a directed n-cycle every ordered pair of placements has exactly one
// simple path, including the empty one for co-location: n^2 mappings.
TEST(Enumerate, SingleEdgeOnDirectedCycle) {
  for (int n = 3; n <= 6; ++n) {
    Substrate s = directed_cycle(n);
    RequestBuilder b(s, "r", 1.0);
    b.add_node("i", "cpu", 1).add_node("j", "cpu", 1).add_edge("i", "j", 1);
    Request r = b.build();
    auto en = enumerate_valid_mappings(s, r);
    EXPECT_EQ(static_cast<int>(en.mappings.size()), n * n);
    std::set<Mapping> unique(en.mappings.begin(), en.mappings.end());
    EXPECT_EQ(unique.size(), en.mappings.size());
    for (const auto& m : en.mappings) EXPECT_TRUE(check_valid_mapping(s, r, m).valid);
  }
}

TEST(Enumerate, Fig3HasNoMappingAndGadgetHasOne) {
  Instance plain = fig3_instance();
  EXPECT_TRUE(enumerate_valid_mappings(plain.substrate, plain.requests[0]).mappings.empty());
  Instance gadget = fig3_instance(true);
  EXPECT_EQ(enumerate_valid_mappings(gadget.substrate, gadget.requests[0]).mappings.size(), 1u);
}

TEST(Enumerate, CapTruncates) {
  Substrate s = directed_cycle(5);
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 1).add_node("j", "cpu", 1).add_edge("i", "j", 1);
  Request r = b.build();
  auto en = enumerate_valid_mappings(s, r, 7);
  EXPECT_TRUE(en.truncated);
  EXPECT_LE(en.mappings.size(), 7u);
  std::vector<Request> rs{r};
  EXPECT_THROW(solve_enumerative(s, rs, {en}, Objective::kProfit, Relaxation::kLp), std::invalid_argument);
}

TEST(SolveEnumerative, SingleMappingProfitFive) {
  Substrate s = directed_cycle(3);
  RequestBuilder b(s, "r", 5.0);
  b.add_node("i", "cpu", 1, std::vector<std::string>{"c1"});
  std::vector<Request> rs{b.build()};
  std::vector<MappingEnumeration> en{enumerate_valid_mappings(s, rs[0])};
  auto lp = solve_enumerative(s, rs, en, Objective::kProfit, Relaxation::kLp);
  auto ip = solve_enumerative(s, rs, en, Objective::kProfit, Relaxation::kIp);
  EXPECT_NEAR(lp.objective, 5.0, 1e-7);
  EXPECT_NEAR(ip.objective, 5.0, 1e-12);
}

TEST(SolveEnumerative, Fig3ProfitIsZeroAndCostInfeasible) {
  Instance inst = fig3_instance();
  std::vector<MappingEnumeration> en{enumerate_valid_mappings(inst.substrate, inst.requests[0])};
  for (auto rel : {Relaxation::kLp, Relaxation::kIp}) {
    auto res = solve_enumerative(inst.substrate, inst.requests, en, Objective::kProfit, rel);
    EXPECT_EQ(res.status, LpStatus::kOptimal) << to_string(rel);
    EXPECT_NEAR(res.objective, 0.0, 1e-9);
    EXPECT_EQ(solve_enumerative(inst.substrate, inst.requests, en, Objective::kCost, rel).status,
              LpStatus::kInfeasible);
  }
}

TEST(SolveEnumerative, IpRespectsCapacities) {
  // Two requests each needing the only node fully: only one fits.
  testing::TinySubstrate t;
  t.nodes = {"a"};
  t.node_capacity = 1.0;
  Substrate s = t.build();
  RequestBuilder b1(s, "p", 3.0), b2(s, "q", 2.0);
  b1.add_node("i", "cpu", 1.0);
  b2.add_node("i", "cpu", 1.0);
  std::vector<Request> rs{b1.build(), b2.build()};
  std::vector<MappingEnumeration> en{enumerate_valid_mappings(s, rs[0]), enumerate_valid_mappings(s, rs[1])};
  auto ip = solve_enumerative(s, rs, en, Objective::kProfit, Relaxation::kIp);
  EXPECT_NEAR(ip.objective, 3.0, 1e-12);
  auto lp = solve_enumerative(s, rs, en, Objective::kProfit, Relaxation::kLp);
  EXPECT_NEAR(lp.objective, 3.0, 1e-7);
}

// LP dominates IP (profit), IP dominates LP (cost), on random tiny instances.
TEST(SolveEnumerative, RelaxationOrdering) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Instance inst = testing::tiny_random_instance(seed, seed % 2 ? "tree" : "cactus", 2, 3, 5);
    std::vector<MappingEnumeration> en;
    for (const auto& r : inst.requests) en.push_back(enumerate_valid_mappings(inst.substrate, r));
    auto lp = solve_enumerative(inst.substrate, inst.requests, en, Objective::kProfit, Relaxation::kLp);
    auto ip = solve_enumerative(inst.substrate, inst.requests, en, Objective::kProfit, Relaxation::kIp);
    EXPECT_GE(lp.objective, ip.objective - 1e-7);
    auto lc = solve_enumerative(inst.substrate, inst.requests, en, Objective::kCost, Relaxation::kLp);
    auto ic = solve_enumerative(inst.substrate, inst.requests, en, Objective::kCost, Relaxation::kIp);
    if (lc.status == LpStatus::kOptimal && ic.status == LpStatus::kOptimal) {
      EXPECT_LE(lc.objective, ic.objective + 1e-7);
    }
    // IP assignments are integral and feasible.
    std::vector<PlacedMapping> placed;
    for (std::size_t k = 0; k < ip.assignment.size(); ++k) {
      for (auto [idx, w] : ip.assignment[k]) {
        EXPECT_EQ(w, 1.0);
        placed.push_back({&inst.requests[k], &en[k].mappings[idx]});
      }
    }
    EXPECT_TRUE(collection_feasible(inst.substrate, placed).feasible);
  }
}

}  // namespace
}  // namespace vnep
