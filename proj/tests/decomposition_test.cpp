#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_support.hpp"
#include "vnep/decomposition.hpp"
#include "vnep/oracle.hpp"
#include "vnep/scenario.hpp"

namespace vnep {
namespace {

// Fig3's symmetric MCF point: every allowed y and z at 1/2, x = 1.
std::vector<double> fig3_half_solution(const Instance& inst, const McfModel& mcf) {
  std::vector<double> v(mcf.model.num_variables(), 0.0);
  const auto& idx = mcf.requests[0];
  const Request& r = inst.requests[0];
  v[idx.x] = 1.0;
  std::vector<double> alloc(inst.substrate.num_resources(), 0.0);
  for (int i = 0; i < r.num_nodes(); ++i) {
    for (int u : r.node(i).allowed) {
      v[idx.y[i][u]] = 0.5;
      alloc[inst.substrate.node_resource_index(r.node(i).type, u)] += 0.5 * r.node(i).demand;
    }
  }
  for (int e = 0; e < r.num_edges(); ++e) {
    for (int se : r.edge(e).allowed) {
      v[idx.z[e][se]] = 0.5;
      alloc[inst.substrate.edge_resource(se)] += 0.5 * r.edge(e).demand;
    }
  }
  for (int res = 0; res < inst.substrate.num_resources(); ++res) {
    if (idx.a[res] >= 0) v[idx.a[res]] = alloc[res];
  }
  return v;
}

TEST(FindConnectivityPath, CoLocationGivesEmptyPath) {
  testing::TinySubstrate t;
  t.nodes = {"a", "b"};
  t.edges = {{"a", "b", 1, 1}};
  Substrate s = t.build();
  // values: y_head at a = 1, z = 0.
  std::vector<double> values{1.0, 0.0};
  std::vector<int> target_y{0, -1};
  std::vector<int> z{1};
  EXPECT_TRUE(find_connectivity_path(s, values, z, target_y, 0, SearchDirection::kForward).empty());
}

TEST(FindConnectivityPath, TwoHopChainAndReverse) {
  testing::TinySubstrate t;
  t.nodes = {"a", "b", "c"};
  t.edges = {{"a", "b", 1, 1}, {"b", "c", 1, 1}, {"a", "c", 1, 1}};
  Substrate s = t.build();
  int ab = *s.find_edge(0, 1), bc = *s.find_edge(1, 2), ac = *s.find_edge(0, 2);
  // Variables: 0..2 z per edge id, 3..5 head y, 6..8 tail y.
  std::vector<double> v(9, 0.0);
  std::vector<int> z{0, 1, 2};
  std::vector<int> y_head{3, 4, 5}, y_tail{6, 7, 8};
  v[ab] = v[bc] = 1.0;
  v[ac] = 0.0;
  v[5] = 1.0;  // head at c
  v[6] = 1.0;  // tail at a
  EXPECT_EQ(find_connectivity_path(s, v, z, y_head, 0, SearchDirection::kForward), (std::vector<int>{ab, bc}));
  EXPECT_EQ(find_connectivity_path(s, v, z, y_tail, 2, SearchDirection::kReverse), (std::vector<int>{ab, bc}));
  v[bc] = 0.0;
  EXPECT_THROW(find_connectivity_path(s, v, z, y_head, 0, SearchDirection::kForward), DecompositionError);
}

TEST(FindConnectivityPath, Fig3FirstHop) {
  Instance inst = fig3_instance();
  auto mcf = build_mcf(inst, Objective::kProfit);
  auto v = fig3_half_solution(inst, mcf);
  const Substrate& s = inst.substrate;
  const Request& r = inst.requests[0];
  int i = *r.find_node("i"), j = *r.find_node("j");
  int e = *r.find_edge(i, j);
  int u1 = *s.find_node("u1"), u2 = *s.find_node("u2");
  auto path = find_connectivity_path(s, v, mcf.requests[0].z[e], mcf.requests[0].y[j], u1, SearchDirection::kForward);
  EXPECT_EQ(path, (std::vector<int>{*s.find_edge(u1, u2)}));
}

TEST(DecomposeMcfTree, ZeroEmbeddingGivesEmptyDecomposition) {
  Instance inst = testing::tiny_random_instance(1, "tree", 1, 3, 4);
  auto mcf = build_mcf(inst, Objective::kProfit);
  std::vector<double> zeros(mcf.model.num_variables(), 0.0);
  auto order = build_extraction_order(inst.requests[0], 0);
  auto d = decompose_mcf_tree(inst.substrate, inst.requests[0], order, mcf.requests[0], zeros);
  EXPECT_TRUE(d.entries.empty());
  auto rep = verify_decomposition(inst.substrate, inst.requests[0], d, slice_of(mcf.requests[0], zeros));
  EXPECT_TRUE(rep.ok());
}

TEST(DecomposeMcfTree, IntegralSolutionGivesItsMapping) {
  Instance inst = testing::tiny_random_instance(6, "tree", 1, 3, 5);
  const Substrate& s = inst.substrate;
  const Request& r = inst.requests[0];
  auto en = enumerate_valid_mappings(s, r, 100);
  ASSERT_FALSE(en.mappings.empty());
  const Mapping& m = en.mappings.back();
  auto mcf = build_mcf(inst, Objective::kProfit);
  const auto& idx = mcf.requests[0];
  std::vector<double> v(mcf.model.num_variables(), 0.0);
  v[idx.x] = 1.0;
  for (int i = 0; i < r.num_nodes(); ++i) v[idx.y[i][m.nodes[i]]] = 1.0;
  for (int e = 0; e < r.num_edges(); ++e) {
    for (int se : m.edges[e]) v[idx.z[e][se]] = 1.0;
  }
  auto alloc = compute_allocations(s, r, m);
  for (int res = 0; res < s.num_resources(); ++res) {
    if (idx.a[res] >= 0) v[idx.a[res]] = alloc[res];
  }
  auto d = decompose_mcf_tree(s, r, build_extraction_order(r, 0), idx, v);
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_NEAR(d.entries[0].weight, 1.0, 1e-12);
  EXPECT_EQ(d.entries[0].mapping, m);
}

TEST(DecomposeMcfTree, RejectsCyclicRequests) {
  Instance inst = fig3_instance();
  auto mcf = build_mcf(inst, Objective::kProfit);
  auto v = fig3_half_solution(inst, mcf);
  EXPECT_THROW(decompose_mcf_tree(inst.substrate, inst.requests[0], build_extraction_order(inst.requests[0], 0),
                                  mcf.requests[0], v),
               std::invalid_argument);
}

TEST(NaiveCycleDecomposition, Fig3HitsAContradiction) {
  Instance inst = fig3_instance();
  auto mcf = build_mcf(inst, Objective::kProfit);
  auto v = fig3_half_solution(inst, mcf);
  const Request& r = inst.requests[0];
  auto results = detect_naive_cycle_conflict(inst.substrate, r, *r.find_node("i"), mcf.requests[0], v);
  ASSERT_EQ(results.size(), 2u);
  for (const auto& c : results) {
    EXPECT_TRUE(c.conflict);
    EXPECT_NE(c.first, c.second);
    EXPECT_GE(c.node, 0);
  }
}

TEST(VerifyDecomposition, CorruptedWeightIsReported) {
  Instance inst = testing::tiny_random_instance(9, "tree", 1, 3, 5);
  auto mcf = build_mcf(inst, Objective::kProfit);
  auto sol = solve(mcf.model);
  ASSERT_TRUE(sol.optimal());
  const Request& r = inst.requests[0];
  auto d = decompose_mcf_tree(inst.substrate, r, build_extraction_order(r, 0), mcf.requests[0], sol.values);
  ASSERT_FALSE(d.entries.empty());
  auto slice = slice_of(mcf.requests[0], sol.values);
  EXPECT_TRUE(verify_decomposition(inst.substrate, r, d, slice).ok());
  d.entries[0].weight += 0.25;
  auto rep = verify_decomposition(inst.substrate, r, d, slice);
  EXPECT_FALSE(rep.complete);
  EXPECT_NEAR(rep.completeness_gap, 0.25, 1e-6);
}

std::vector<LabeledExtractionOrder> bfs_orders(const Instance& inst) {
  std::vector<LabeledExtractionOrder> out;
  for (const auto& r : inst.requests) out.push_back(min_width_order_search(r, OrderSearch::kPerRootBfs));
  return out;
}

TEST(DecomposeNovel, Fig3DecomposesToNothing) {
  Instance inst = fig3_instance();
  auto orders = bfs_orders(inst);
  auto novel = build_novel(inst, orders, Objective::kProfit);
  auto sol = solve(novel.model);
  ASSERT_TRUE(sol.optimal());
  auto d = decompose_novel(inst.substrate, inst.requests[0], orders[0], novel.requests[0], sol.values);
  EXPECT_TRUE(d.entries.empty());
}

// Unrestricted triangle on a directed 6-cycle: one node per location, and
// every embedding wraps around the ring.
TEST(DecomposeNovel, TriangleOnRingDecomposesFully) {
  SubstrateBuilder sb;
  for (int k = 1; k <= 6; ++k) {
    std::string u = "u" + std::to_string(k);
    sb.add_node(u).add_node_type(u, "cpu", 0.5, 1.0);
  }
  for (int k = 1; k <= 6; ++k) {
    sb.add_edge("u" + std::to_string(k), "u" + std::to_string(k % 6 + 1), 1.0, 1.0);
  }
  Substrate s = sb.build();
  RequestBuilder rb(s, "r", 1.0);
  rb.add_node("i", "cpu", 0.5).add_node("j", "cpu", 0.5).add_node("k", "cpu", 0.5);
  rb.add_edge("i", "j", 0.5).add_edge("j", "k", 0.5).add_edge("k", "i", 0.5);
  Instance inst{s, {rb.build()}};
  auto orders = bfs_orders(inst);
  auto novel = build_novel(inst, orders, Objective::kProfit);
  auto sol = solve(novel.model);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 1.0, 1e-6);
  auto d = decompose_novel(s, inst.requests[0], orders[0], novel.requests[0], sol.values);
  EXPECT_TRUE(verify_decomposition(s, inst.requests[0], d, slice_of(novel.requests[0], sol.values)).ok());
  EXPECT_NEAR(d.total_weight(), 1.0, 1e-6);
  for (const auto& e : d.entries) EXPECT_TRUE(check_valid_mapping(s, inst.requests[0], e.mapping).valid);
}

TEST(DecompositionProperties, TreePathsAgree) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = testing::tiny_random_instance(seed, "tree", 1, 4, 5);
    const Substrate& s = inst.substrate;
    const Request& r = inst.requests[0];
    auto orders = bfs_orders(inst);
    auto mcf = build_mcf(inst, Objective::kProfit);
    auto msol = solve(mcf.model);
    auto novel = build_novel(inst, orders, Objective::kProfit);
    auto nsol = solve(novel.model);
    ASSERT_TRUE(msol.optimal() && nsol.optimal());
    auto dm = decompose_mcf_tree(s, r, orders[0].order, mcf.requests[0], msol.values);
    auto dn = decompose_novel(s, r, orders[0], novel.requests[0], nsol.values);
    EXPECT_TRUE(verify_decomposition(s, r, dm, slice_of(mcf.requests[0], msol.values)).ok());
    EXPECT_TRUE(verify_decomposition(s, r, dn, slice_of(novel.requests[0], nsol.values)).ok());
    EXPECT_NEAR(dm.total_weight(), dn.total_weight(), 1e-6);
  }
}

// Tree consistency on one and the same LP point: the novel solution of a tree
// request is an edge-wise MCF point, so both decompositions see identical
// flows.
TEST(DecompositionProperties, TreeAllocationsAgreeOnSharedPoint) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Instance inst = testing::tiny_random_instance(seed, "tree", 1, 4, 5);
    const Substrate& s = inst.substrate;
    const Request& r = inst.requests[0];
    auto orders = bfs_orders(inst);
    auto novel = build_novel(inst, orders, Objective::kProfit);
    auto nsol = solve(novel.model);
    ASSERT_TRUE(nsol.optimal());
    const auto& ni = novel.requests[0];
    McfRequestIndex mi;
    mi.x = ni.x;
    mi.y = ni.y;
    mi.a = ni.a;
    mi.z.resize(r.num_edges());
    for (int e = 0; e < r.num_edges(); ++e) mi.z[e] = ni.edges[e].copies.at(0).z;
    auto dm = decompose_mcf_tree(s, r, orders[0].order, mi, nsol.values);
    auto dn = decompose_novel(s, r, orders[0], ni, nsol.values);
    EXPECT_NEAR(dm.total_weight(), dn.total_weight(), 1e-6);
    auto am = fractional_allocation(s, r, dm), an = fractional_allocation(s, r, dn);
    for (int res = 0; res < s.num_resources(); ++res) EXPECT_NEAR(am[res], an[res], 1e-6) << s.resource_label(res);
  }
}

TEST(DecompositionProperties, NovelEntriesAreOracleMappings) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const char* shape = seed % 3 == 0 ? "tree" : (seed % 3 == 1 ? "cactus" : "parallel");
    Instance inst = testing::tiny_random_instance(seed, shape, 2, 4, 5);
    const Substrate& s = inst.substrate;
    auto orders = bfs_orders(inst);
    auto novel = build_novel(inst, orders, Objective::kProfit);
    auto sol = solve(novel.model);
    ASSERT_TRUE(sol.optimal());
    for (std::size_t k = 0; k < inst.requests.size(); ++k) {
      const Request& r = inst.requests[k];
      auto d = decompose_novel(s, r, orders[k], novel.requests[k], sol.values);
      auto rep = verify_decomposition(s, r, d, slice_of(novel.requests[k], sol.values));
      EXPECT_TRUE(rep.ok()) << shape << " seed " << seed << ": " << rep.first_invalid;
      EXPECT_LE(d.iterations, novel.model.num_variables());
      auto en = enumerate_valid_mappings(s, r);
      for (const auto& e : d.entries) {
        EXPECT_GT(e.weight, 0.0);
        EXPECT_TRUE(std::binary_search(en.mappings.begin(), en.mappings.end(), e.mapping) ||
                    std::find(en.mappings.begin(), en.mappings.end(), e.mapping) != en.mappings.end());
      }
    }
  }
}

}  // namespace
}  // namespace vnep
