#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "vnep/lp_model.hpp"
#include "vnep/mcf_formulation.hpp"
#include "vnep/novel_formulation.hpp"
#include "vnep/oracle.hpp"
#include "vnep/scenario.hpp"

namespace vnep {
namespace {

std::vector<LabeledExtractionOrder> bfs_orders(const Instance& inst) {
  std::vector<LabeledExtractionOrder> out;
  for (const auto& r : inst.requests) out.push_back(min_width_order_search(r, OrderSearch::kPerRootBfs));
  return out;
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(LpModel, TrivialBoundedMax) {
  LpModel m;
  int x = m.add_variable("x", 0, 1, 1.0);
  m.add_constraint("cap", {{x, 1.0}}, Relation::kLessEqual, 0.5);
  auto sol = solve(m);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 0.5, 1e-7);
  EXPECT_NEAR(sol.values[x], 0.5, 1e-7);
}

TEST(LpModel, InfeasibleAndUnbounded) {
  LpModel inf;
  int x = inf.add_variable("x", 0, 1, 1.0);
  inf.add_constraint("c", {{x, 1.0}}, Relation::kGreaterEqual, 2.0);
  EXPECT_EQ(solve(inf).status, LpStatus::kInfeasible);

  LpModel unb;
  int y = unb.add_variable("y", 0, kInfinity, 1.0);
  unb.add_constraint("c", {{y, 1.0}}, Relation::kGreaterEqual, 0.0);
  auto s = solve(unb);
  EXPECT_TRUE(s.status == LpStatus::kUnbounded || s.status == LpStatus::kInfeasible) << to_string(s.status);
}

TEST(LpModel, TermsMergedAndUndeclaredRejected) {
  LpModel m;
  int x = m.add_variable("x", 0, 1);
  m.add_constraint("c", {{x, 1.0}, {x, 2.0}}, Relation::kLessEqual, 1.0);
  ASSERT_EQ(m.constraints()[0].terms.size(), 1u);
  EXPECT_EQ(m.constraints()[0].terms[0].coef, 3.0);
  EXPECT_THROW(m.add_constraint("bad", {{7, 1.0}}, Relation::kEqual, 0.0), std::invalid_argument);
  EXPECT_THROW(make_solver("no-such-backend"), std::invalid_argument);
}

TEST(LpModel, LpFormatMentionsEveryVariable) {
  LpModel m;
  m.set_sense(Sense::kMinimize);
  m.add_variable("alpha var", 0, 1, 2.0);
  m.add_variable("beta", 0, kInfinity, 1.0);
  m.add_constraint("row", {{0, 1.0}, {1, 1.0}}, Relation::kGreaterEqual, 1.0);
  std::string text = m.to_lp_format();
  EXPECT_NE(text.find("alpha_var"), std::string::npos);
  EXPECT_NE(text.find("beta"), std::string::npos);
  EXPECT_NE(text.find("Minimize"), std::string::npos);
}

TEST(LpModel, BackendsAgree) {
  auto names = available_solvers();
  ASSERT_FALSE(names.empty());
  Instance inst = testing::tiny_random_instance(4, "cactus", 2, 4, 5);
  auto model = build_novel(inst, bfs_orders(inst), Objective::kProfit).model;
  double first = solve(model, names.front()).objective;
  for (const auto& n : names) EXPECT_NEAR(solve(model, n).objective, first, 1e-6) << n;
}

TEST(BuildMcf, SingleNodeRequestCounts) {
  testing::TinySubstrate t;
  t.nodes = {"a", "b", "c"};
  Substrate s = t.build();
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 1, std::vector<std::string>{"a", "c"});
  Instance inst{s, {b.build()}};
  auto mcf = build_mcf(inst, Objective::kProfit);
  const auto& idx = mcf.requests[0];
  EXPECT_GE(idx.x, 0);
  int ys = 0;
  for (int v : idx.y[0]) ys += v >= 0;
  EXPECT_EQ(ys, 2);
  int as = 0;
  for (int v : idx.a) as += v >= 0;
  EXPECT_EQ(as, 2);
  // x, two y, two a.
  EXPECT_EQ(mcf.model.num_variables(), 5);
}

TEST(BuildMcf, Fig3AdmitsHalfValuedSolution) {
  Instance inst = fig3_instance();
  auto mcf = build_mcf(inst, Objective::kProfit);
  std::vector<double> v(mcf.model.num_variables(), 0.0);
  const auto& idx = mcf.requests[0];
  const Request& r = inst.requests[0];
  v[idx.x] = 1.0;
  for (int i = 0; i < r.num_nodes(); ++i) {
    for (int u : r.node(i).allowed) v[idx.y[i][u]] = 0.5;
  }
  for (int e = 0; e < r.num_edges(); ++e) {
    for (int se : r.edge(e).allowed) v[idx.z[e][se]] = 0.5;
  }
  auto alloc = std::vector<double>(inst.substrate.num_resources(), 0.0);
  for (int i = 0; i < r.num_nodes(); ++i) {
    for (int u : r.node(i).allowed) alloc[inst.substrate.node_resource_index(r.node(i).type, u)] += 0.5;
  }
  for (int e = 0; e < r.num_edges(); ++e) {
    for (int se : r.edge(e).allowed) alloc[inst.substrate.edge_resource(se)] += 0.5;
  }
  for (int res = 0; res < inst.substrate.num_resources(); ++res) {
    if (idx.a[res] >= 0) v[idx.a[res]] = alloc[res];
  }
  EXPECT_LE(mcf.model.max_violation(v), 1e-9);
  EXPECT_DOUBLE_EQ(mcf.model.objective_value(v), r.profit());
}

TEST(BuildMcf, Fig3OptimumIsProfit) {
  Instance inst = fig3_instance();
  auto sol = solve(build_mcf(inst, Objective::kProfit).model);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, inst.requests[0].profit(), 1e-6);
}

TEST(BuildNovel, Fig3OptimumIsZero) {
  Instance inst = fig3_instance();
  auto sol = solve(build_novel(inst, bfs_orders(inst), Objective::kProfit).model);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 0.0, 1e-6);
}

TEST(BuildNovel, TreeRequestHasOneCopyPerEdge) {
  Instance inst = testing::tiny_random_instance(2, "tree", 1, 5, 5);
  auto orders = bfs_orders(inst);
  auto novel = build_novel(inst, orders, Objective::kProfit);
  for (const auto& block : novel.requests[0].edges) {
    EXPECT_EQ(block.space.size(), 1);
    EXPECT_EQ(block.copies.size(), 1u);
  }
}

TEST(BuildNovel, CopyCountIsProductOfLabelDomains) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Instance inst = testing::tiny_random_instance(seed, "cactus", 1, 5, 5);
    auto orders = bfs_orders(inst);
    auto novel = build_novel(inst, orders, Objective::kProfit);
    const Request& r = inst.requests[0];
    for (int e = 0; e < r.num_edges(); ++e) {
      std::int64_t expect = 1;
      for (int l : orders[0].arc_labels[e]) expect *= static_cast<std::int64_t>(r.node(l).allowed.size());
      EXPECT_EQ(novel.requests[0].edges[e].space.size(), expect);
    }
  }
}

TEST(BuildNovel, VariableBudget) {
  Instance inst = testing::tiny_random_instance(3, "cactus", 1, 5, 5);
  auto orders = bfs_orders(inst);
  std::int64_t need = novel_variable_count(inst.substrate, inst.requests[0], orders[0]);
  EXPECT_EQ(build_novel(inst, orders, Objective::kProfit).model.num_variables(), need);
  try {
    build_novel(inst, orders, Objective::kProfit, need - 1);
    FAIL() << "expected VariableBudgetError";
  } catch (const VariableBudgetError& e) {
    EXPECT_EQ(e.required(), need);
  }
}

TEST(MappingSpace, EncodeDecodeRoundTrip) {
  Instance inst = testing::tiny_random_instance(5, "tree", 1, 4, 6);
  const Request& r = inst.requests[0];
  MappingSpace space(r, {0, 2});
  for (std::int64_t k = 0; k < space.size(); ++k) {
    auto vals = space.decode(k);
    std::vector<int> node_map(r.num_nodes(), -1);
    node_map[0] = vals[0];
    node_map[2] = vals[1];
    EXPECT_EQ(space.encode(node_map), k);
    EXPECT_EQ(space.value(k, 2), vals[1]);
  }
}

// The novel relaxation only adds structure to the MCF one.
TEST(LpProperties, NovelWithinMcf) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = testing::tiny_random_instance(seed, seed % 2 ? "cactus" : "parallel", 2, 4, 5);
    auto orders = bfs_orders(inst);
    auto mcf_p = solve(build_mcf(inst, Objective::kProfit).model);
    auto nov_p = solve(build_novel(inst, orders, Objective::kProfit).model);
    ASSERT_TRUE(mcf_p.optimal() && nov_p.optimal());
    EXPECT_LE(nov_p.objective, mcf_p.objective + 1e-6);
    auto mcf_c = solve(build_mcf(inst, Objective::kCost).model);
    auto nov_c = solve(build_novel(inst, orders, Objective::kCost).model);
    if (mcf_c.optimal() && nov_c.optimal()) {
      EXPECT_GE(nov_c.objective, mcf_c.objective - 1e-6);
    }
  }
}

TEST(LpProperties, TreeMcfEqualsEnumerative) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Instance inst = testing::tiny_random_instance(seed, "tree", 2, 3, 5);
    std::vector<MappingEnumeration> en;
    for (const auto& r : inst.requests) en.push_back(enumerate_valid_mappings(inst.substrate, r));
    auto mcf = solve(build_mcf(inst, Objective::kProfit).model);
    auto ref = solve_enumerative(inst.substrate, inst.requests, en, Objective::kProfit, Relaxation::kLp);
    ASSERT_TRUE(mcf.optimal());
    EXPECT_LE(rel_gap(mcf.objective, ref.objective), 1e-5);
  }
}

TEST(LpProperties, NovelEqualsEnumerative) {
  for (std::uint64_t seed = 11; seed <= 16; ++seed) {
    Instance inst = testing::tiny_random_instance(seed, "cactus", 2, 4, 5);
    auto orders = bfs_orders(inst);
    std::vector<MappingEnumeration> en;
    for (const auto& r : inst.requests) en.push_back(enumerate_valid_mappings(inst.substrate, r));
    for (Objective v : {Objective::kProfit, Objective::kCost}) {
      auto nov = solve(build_novel(inst, orders, v).model);
      auto ref = solve_enumerative(inst.substrate, inst.requests, en, v, Relaxation::kLp);
      ASSERT_EQ(nov.status, ref.status) << to_string(v);
      if (nov.optimal()) {
        EXPECT_LE(rel_gap(nov.objective, ref.objective), 1e-5) << to_string(v) << " seed " << seed;
      }
    }
  }
}

}  // namespace
}  // namespace vnep
