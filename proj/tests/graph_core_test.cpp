#include <gtest/gtest.h>

#include "test_support.hpp"
#include "vnep/graph_core.hpp"
#include "vnep/oracle.hpp"
#include "vnep/scenario.hpp"

namespace vnep {
namespace {

using testing::TinySubstrate;

Substrate triangle_substrate() {
  TinySubstrate t;
  t.nodes = {"a", "b", "c"};
  t.edges = {{"a", "b", 5, 1}, {"b", "c", 5, 1}, {"c", "a", 5, 1}};
  return t.build();
}

Request triangle_request(const Substrate& s) {
  RequestBuilder b(s, "r", 2.0);
  b.add_node("i", "cpu", 1).add_node("j", "cpu", 1).add_node("k", "cpu", 1);
  b.add_edge("i", "j", 1).add_edge("j", "k", 1).add_edge("k", "i", 1);
  return b.build();
}

bool has_issue(const ValidationReport& rep, const std::string& needle) {
  for (const auto& i : rep.issues) {
    if (i.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(ValidateInstance, WellFormedTrianglePasses) {
  Substrate s = triangle_substrate();
  std::vector<Request> rs{triangle_request(s)};
  auto rep = validate_instance(s, rs);
  EXPECT_TRUE(rep.ok()) << rep.issues.front();
}

TEST(ValidateInstance, EmptyAllowedSet) {
  Substrate s = triangle_substrate();
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 1, std::vector<std::string>{});
  std::vector<Request> rs{b.build()};
  EXPECT_TRUE(has_issue(validate_instance(s, rs), "empty allowed set"));
}

TEST(ValidateInstance, CapacityFilter) {
  TinySubstrate t;
  t.nodes = {"a"};
  t.node_capacity = 3;
  Substrate s = t.build();
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 5, std::vector<std::string>{"a"});
  std::vector<Request> rs{b.build()};
  EXPECT_TRUE(has_issue(validate_instance(s, rs), "capacity filter"));
}

TEST(ValidateInstance, DefaultAllowedSetsDropSmallNodes) {
  TinySubstrate t;
  t.nodes = {"a", "b"};
  t.node_capacity = 3;
  t.edges = {{"a", "b", 1, 0}};
  Substrate s = t.build();
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 5);
  Request r = b.build();
  EXPECT_TRUE(r.node(0).allowed.empty());
}

TEST(ValidateInstance, RejectsSelfLoopsAndDisconnectedRequests) {
  Substrate s = triangle_substrate();
  RequestBuilder loop(s, "loop", 1.0);
  loop.add_node("i", "cpu", 1).add_edge("i", "i", 1);
  RequestBuilder split(s, "split", 1.0);
  split.add_node("i", "cpu", 1).add_node("j", "cpu", 1);
  std::vector<Request> rs{loop.build(), split.build()};
  auto rep = validate_instance(s, rs);
  EXPECT_TRUE(has_issue(rep, "self-loop"));
  EXPECT_TRUE(has_issue(rep, "not weakly connected"));
}

TEST(Builders, UnknownAndDuplicateIdsThrow) {
  SubstrateBuilder sb;
  sb.add_node("a").add_node("a");
  EXPECT_THROW(sb.build(), InstanceError);
  SubstrateBuilder dangling;
  dangling.add_node("a").add_edge("a", "zz", 1, 0);
  EXPECT_THROW(dangling.build(), InstanceError);

  Substrate s = triangle_substrate();
  RequestBuilder rb(s, "r", 1.0);
  rb.add_node("i", "cpu", 1, std::vector<std::string>{"nowhere"});
  EXPECT_THROW(rb.build(), InstanceError);
}

TEST(Builders, DenseIdsAreLexicographic) {
  SubstrateBuilder sb;
  sb.add_node("z").add_node("b").add_node("m");
  Substrate s = sb.build();
  EXPECT_EQ(s.node_id(0), "b");
  EXPECT_EQ(s.node_id(1), "m");
  EXPECT_EQ(s.node_id(2), "z");
}

TEST(CheckValidMapping, SingleNodeOnItsOnlyLocation) {
  Substrate s = triangle_substrate();
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 1, std::vector<std::string>{"b"});
  Request r = b.build();
  Mapping m{{*s.find_node("b")}, {}};
  EXPECT_TRUE(check_valid_mapping(s, r, m).valid);
}

TEST(CheckValidMapping, Fig3PathEndingAtWrongNode) {
  Instance inst = fig3_instance();
  const Substrate& s = inst.substrate;
  const Request& r = inst.requests[0];
  auto n = [&](const char* id) { return *s.find_node(id); };
  auto e = [&](const char* t, const char* h) { return *s.find_edge(n(t), n(h)); };
  Mapping m;
  m.nodes = {n("u1"), n("u2"), n("u3")};  // i, j, k
  m.edges.resize(3);
  m.edges[*r.find_edge(0, 1)] = {e("u1", "u2")};
  m.edges[*r.find_edge(1, 2)] = {e("u2", "u3")};
  m.edges[*r.find_edge(2, 0)] = {e("u3", "u4")};
  auto check = check_valid_mapping(s, r, m);
  EXPECT_FALSE(check.valid);
  EXPECT_NE(check.violation.find("ends at 'u4'"), std::string::npos) << check.violation;
}

TEST(CheckValidMapping, IncompleteAndNonSimple) {
  Substrate s = triangle_substrate();
  Request r = triangle_request(s);
  Mapping partial{{0, 1, -1}, {{}, {}, {}}};
  EXPECT_NE(check_valid_mapping(s, r, partial).violation.find("incomplete mapping"), std::string::npos);
  Mapping wrong_size{{0, 1}, {}};
  EXPECT_EQ(check_valid_mapping(s, r, wrong_size).violation, "incomplete mapping");

  // i and j both on a, edge (i,j) going around the whole triangle.
  int ab = *s.find_edge(0, 1), bc = *s.find_edge(1, 2), ca = *s.find_edge(2, 0);
  Mapping loop{{0, 0, 0}, {{ab, bc, ca}, {}, {}}};
  EXPECT_NE(check_valid_mapping(s, r, loop).violation.find("not simple"), std::string::npos);
}

TEST(ComputeAllocations, CoLocatedNodesAdd) {
  Substrate s = triangle_substrate();
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 1).add_node("j", "cpu", 1).add_edge("i", "j", 4);
  Request r = b.build();
  Mapping m{{0, 0}, {{}}};
  auto a = compute_allocations(s, r, m);
  EXPECT_DOUBLE_EQ(a[s.node_resource_index(0, 0)], 2.0);
  for (int e = 0; e < s.num_edges(); ++e) EXPECT_EQ(a[s.edge_resource(e)], 0.0);
}

TEST(ComputeAllocations, EdgeDemandOnEveryHop) {
  Substrate s = triangle_substrate();
  RequestBuilder b(s, "r", 1.0);
  b.add_node("i", "cpu", 1).add_node("j", "cpu", 1).add_edge("i", "j", 3);
  Request r = b.build();
  int ab = *s.find_edge(0, 1), bc = *s.find_edge(1, 2);
  Mapping m{{0, 2}, {{ab, bc}}};
  auto a = compute_allocations(s, r, m);
  EXPECT_DOUBLE_EQ(a[s.edge_resource(ab)], 3.0);
  EXPECT_DOUBLE_EQ(a[s.edge_resource(bc)], 3.0);
  EXPECT_DOUBLE_EQ(a[s.edge_resource(*s.find_edge(2, 0))], 0.0);
  Mapping bad{{0, 2}, {{ab}}};
  EXPECT_THROW(compute_allocations(s, r, bad), std::invalid_argument);
}

class CollectionFeasible : public ::testing::Test {
 protected:
  void SetUp() override {
    TinySubstrate t;
    t.nodes = {"a", "b"};
    t.edges = {{"a", "b", 10, 1}};
    s_ = t.build();
    RequestBuilder b(s_, "r", 1.0);
    b.add_node("i", "cpu", 0.1, std::vector<std::string>{"a"})
        .add_node("j", "cpu", 0.1, std::vector<std::string>{"b"})
        .add_edge("i", "j", 6);
    r_ = b.build();
    m_ = Mapping{{0, 1}, {{0}}};
  }
  Substrate s_;
  Request r_;
  Mapping m_;
};

TEST_F(CollectionFeasible, EmptyCollection) {
  auto rep = collection_feasible(s_, {});
  EXPECT_TRUE(rep.feasible);
  for (double u : rep.utilization) EXPECT_EQ(u, 0.0);
}

TEST_F(CollectionFeasible, EdgeSlack) {
  std::vector<PlacedMapping> two{{&r_, &m_}, {&r_, &m_}};
  EXPECT_FALSE(collection_feasible(s_, two).feasible);
  EXPECT_TRUE(collection_feasible(s_, two, 1.0, 1.3).feasible);
  EXPECT_NEAR(collection_feasible(s_, two).max_edge_utilization, 1.2, 1e-12);
}

TEST(MappingCost, ZeroCostsAndSimpleProduct) {
  TinySubstrate t;
  t.nodes = {"a"};
  t.node_cost = 0;
  Substrate free = t.build();
  RequestBuilder b(free, "r", 1.0);
  b.add_node("i", "cpu", 2);
  Request r = b.build();
  EXPECT_EQ(mapping_cost(free, r, Mapping{{0}, {}}), 0.0);

  t.node_cost = 3;
  Substrate priced = t.build();
  RequestBuilder b2(priced, "r", 1.0);
  b2.add_node("i", "cpu", 2);
  Request r2 = b2.build();
  EXPECT_DOUBLE_EQ(mapping_cost(priced, r2, Mapping{{0}, {}}), 6.0);
}

TEST(MappingCost, Fig3CostGadgetPaysTheExpensiveEdge) {
  Instance inst = fig3_instance(true);
  auto mappings = enumerate_valid_mappings(inst.substrate, inst.requests[0]);
  ASSERT_EQ(mappings.mappings.size(), 1u);
  EXPECT_GE(mapping_cost(inst.substrate, inst.requests[0], mappings.mappings[0]), kFig3GadgetCost);
}

TEST(ResourceStats, SingleNodeAndSharedType) {
  TinySubstrate t;
  t.nodes = {"a", "b"};
  Substrate s = t.build();
  RequestBuilder one(s, "one", 1.0);
  one.add_node("i", "cpu", 4, std::vector<std::string>{"a"});
  RequestBuilder two(s, "two", 1.0);
  two.add_node("i", "cpu", 1).add_node("j", "cpu", 2);
  std::vector<Request> rs{one.build(), two.build()};
  auto st = resource_stats(s, rs);
  int ra = s.node_resource_index(0, 0);
  EXPECT_EQ(st.d_max[0][ra], 4.0);
  EXPECT_EQ(st.a_max_upper[0][ra], 4.0);
  EXPECT_EQ(st.d_max[1][ra], 2.0);
  EXPECT_EQ(st.a_max_upper[1][ra], 3.0);
}

// Allocations recounted element by element, against the library and against
// the A_max upper bound, over every valid mapping of small random instances.
TEST(GraphCoreProperties, AllocationsAgainstRecountAndUpperBound) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Instance inst = testing::tiny_random_instance(seed, seed % 2 ? "tree" : "cactus", 1, 4, 5);
    const Substrate& s = inst.substrate;
    const Request& r = inst.requests[0];
    auto stats = resource_stats(s, inst.requests);
    auto en = enumerate_valid_mappings(s, r, 5000);
    for (const auto& m : en.mappings) {
      std::vector<double> recount(s.num_resources(), 0.0);
      for (int i = 0; i < r.num_nodes(); ++i) {
        for (int res = 0; res < s.num_node_resources(); ++res) {
          const auto& nr = s.node_resources()[res];
          if (nr.node == m.nodes[i] && nr.type == r.node(i).type) recount[res] += r.node(i).demand;
        }
      }
      for (int e = 0; e < r.num_edges(); ++e) {
        for (int se : m.edges[e]) recount[s.num_node_resources() + se] += r.edge(e).demand;
      }
      auto a = compute_allocations(s, r, m);
      for (int res = 0; res < s.num_resources(); ++res) {
        EXPECT_NEAR(a[res], recount[res], 1e-12);
        EXPECT_LE(a[res], stats.a_max_upper[0][res] + 1e-12);
      }
    }
  }
}

TEST(GraphCoreProperties, CostIsLinearInSubstrateCosts) {
  Instance inst = testing::tiny_random_instance(7, "tree", 1, 4, 5);
  const Request& r0 = inst.requests[0];
  auto en = enumerate_valid_mappings(inst.substrate, r0, 200);
  ASSERT_FALSE(en.mappings.empty());
  const double lambda = 2.5;
  const Substrate& s = inst.substrate;
  SubstrateBuilder scaled;
  for (int u = 0; u < s.num_nodes(); ++u) scaled.add_node(s.node_id(u));
  for (const auto& nr : s.node_resources()) {
    scaled.add_node_type(s.node_id(nr.node), s.type_id(nr.type), nr.capacity, lambda * nr.cost);
  }
  for (const auto& e : s.edges()) scaled.add_edge(s.node_id(e.tail), s.node_id(e.head), e.capacity, lambda * e.cost);
  Substrate s2 = scaled.build();
  for (const auto& m : en.mappings) {
    EXPECT_NEAR(mapping_cost(s2, r0, m), lambda * mapping_cost(s, r0, m), 1e-9);
  }
}

TEST(GraphCoreProperties, StrictFeasibilityBoundsUtilization) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = testing::tiny_random_instance(seed, "tree", 2, 3, 5);
    std::vector<Mapping> first;
    for (const auto& r : inst.requests) {
      auto en = enumerate_valid_mappings(inst.substrate, r, 50);
      ASSERT_FALSE(en.mappings.empty());
      first.push_back(en.mappings.front());
    }
    std::vector<PlacedMapping> placed;
    for (std::size_t k = 0; k < first.size(); ++k) placed.push_back({&inst.requests[k], &first[k]});
    auto rep = collection_feasible(inst.substrate, placed);
    if (!rep.feasible) continue;
    for (double u : rep.utilization) EXPECT_LE(u, 1.0 + 1e-9);
  }
}

}  // namespace
}  // namespace vnep
