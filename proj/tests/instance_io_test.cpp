#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"
#include "vnep/instance_io.hpp"
#include "vnep/oracle.hpp"
#include "vnep/scenario.hpp"

namespace vnep {
namespace {

TEST(InstanceIo, RoundTripOnFixtures) {
  for (const char* name : {"fig3", "fig3-cost-gadget", "fig4", "servicechain", "virtualcluster:3", "halfwheel:4",
                           "vc-gadget:triangle", "cactus:6", "tree:5", "tree:1"}) {
    Instance a = make_fixture(name, 7);
    Json doc = instance_to_json(a);
    Instance b = parse_instance(doc);
    EXPECT_TRUE(same_instance(a, b)) << name;
    EXPECT_EQ(instance_to_json(b).dump(), doc.dump()) << name;
  }
}

TEST(InstanceIo, RoundTripOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance a = testing::tiny_random_instance(seed, seed % 2 ? "parallel" : "cactus", 3, 5, 6);
    Instance b = parse_instance(Json::parse(instance_to_json(a).dump()));
    EXPECT_TRUE(same_instance(a, b));
  }
}

TEST(InstanceIo, UnknownIdsRaise) {
  Json doc = instance_to_json(fig3_instance());
  doc["requests"][0]["nodes"][0]["allowed_nodes"].push_back("nowhere");
  EXPECT_THROW(parse_instance(doc), InstanceError);
}

TEST(InstanceIo, MalformedDocumentRaises) {
  Json doc = instance_to_json(fig3_instance());
  doc["substrate"]["nodes"] = "not a list";
  EXPECT_ANY_THROW(parse_instance(doc));
}

TEST(InstanceIo, MappingRoundTrip) {
  Instance inst = fig3_instance(true);
  auto en = enumerate_valid_mappings(inst.substrate, inst.requests[0]);
  ASSERT_EQ(en.mappings.size(), 1u);
  Json j = mapping_to_json(inst.substrate, inst.requests[0], en.mappings[0]);
  EXPECT_EQ(mapping_from_json(inst.substrate, inst.requests[0], j), en.mappings[0]);
}

TEST(Fixtures, Fig3Restrictions) {
  Instance inst = fig3_instance();
  const Substrate& s = inst.substrate;
  const Request& r = inst.requests[0];
  EXPECT_EQ(s.num_nodes(), 6);
  auto names = [&](int i) {
    std::vector<std::string> out;
    for (int u : r.node(i).allowed) out.push_back(s.node_id(u));
    return out;
  };
  EXPECT_EQ(names(*r.find_node("i")), (std::vector<std::string>{"u1", "u4"}));
  EXPECT_EQ(names(*r.find_node("j")), (std::vector<std::string>{"u2", "u5"}));
  EXPECT_EQ(names(*r.find_node("k")), (std::vector<std::string>{"u3", "u6"}));
  int ki = *r.find_edge(*r.find_node("k"), *r.find_node("i"));
  std::set<std::pair<std::string, std::string>> allowed;
  for (int e : r.edge(ki).allowed) allowed.insert({s.node_id(s.edge(e).tail), s.node_id(s.edge(e).head)});
  EXPECT_EQ(allowed, (std::set<std::pair<std::string, std::string>>{{"u3", "u4"}, {"u6", "u1"}}));
}

TEST(Fixtures, ShapesAndErrors) {
  Instance vc = make_fixture("virtualcluster:5");
  EXPECT_EQ(vc.requests[0].num_nodes(), 6);
  EXPECT_EQ(make_fixture("tree:1").requests[0].num_nodes(), 1);
  Instance hw = make_fixture("halfwheel:3");
  EXPECT_EQ(hw.requests[0].num_nodes(), 4);
  EXPECT_EQ(hw.requests[0].num_edges(), 5);
  EXPECT_THROW(make_fixture("nonsense"), std::invalid_argument);
}

TEST(Fixtures, GenerationIsDeterministic) {
  RandomInstanceSpec spec;
  spec.shape = "cactus";
  spec.requests = 3;
  spec.seed = 99;
  EXPECT_EQ(instance_to_json(random_instance(spec)).dump(), instance_to_json(random_instance(spec)).dump());
  spec.seed = 100;
  Instance other = random_instance(spec);
  spec.seed = 99;
  EXPECT_NE(instance_to_json(other).dump(), instance_to_json(random_instance(spec)).dump());
}

TEST(Fixtures, RandomInstancesValidate) {
  for (const char* shape : {"tree", "cactus", "parallel"}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Instance inst = testing::tiny_random_instance(seed, shape, 3, 5, 6);
      auto rep = validate_instance(inst.substrate, inst.requests);
      EXPECT_TRUE(rep.ok()) << shape << seed << ": " << (rep.ok() ? "" : rep.issues.front());
    }
  }
}

}  // namespace
}  // namespace vnep
