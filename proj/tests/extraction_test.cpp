#include <gtest/gtest.h>

#include <map>
#include <set>

#include "test_support.hpp"
#include "vnep/extraction.hpp"
#include "vnep/gadgets.hpp"
#include "vnep/scenario.hpp"

namespace vnep {
namespace {

int node(const Digraph& g, const char* name) { return *g.find(name); }

int arc(const Digraph& g, const char* t, const char* h) {
  for (int a = 0; a < g.num_arcs(); ++a) {
    if (g.arcs[a] == std::pair{node(g, t), node(g, h)}) return a;
  }
  ADD_FAILURE() << "no arc " << t << "->" << h;
  return -1;
}

std::set<std::string> label_names(const Digraph& g, const std::vector<int>& labels) {
  std::set<std::string> out;
  for (int l : labels) out.insert(g.names[l]);
  return out;
}

TEST(BuildExtractionOrder, PathFromEitherEnd) {
  Digraph g = make_digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  auto from_a = build_extraction_order(g, node(g, "a"));
  for (const auto& a : from_a.arcs) EXPECT_FALSE(a.reversed);
  auto from_c = build_extraction_order(g, node(g, "c"));
  for (const auto& a : from_c.arcs) EXPECT_TRUE(a.reversed);
}

TEST(BuildExtractionOrder, TriangleReversesClosingEdge) {
  Digraph g = make_digraph({"i", "j", "k"}, {{"i", "j"}, {"j", "k"}, {"k", "i"}});
  auto o = build_extraction_order(g, node(g, "i"));
  int ki = arc(g, "k", "i");
  EXPECT_TRUE(o.arcs[ki].reversed);
  EXPECT_EQ(o.arcs[ki].tail, node(g, "i"));
  EXPECT_EQ(o.topological_order().front(), node(g, "i"));
}

TEST(BuildExtractionOrder, DisconnectedThrows) {
  Digraph g = make_digraph({"a", "b", "c"}, {{"a", "b"}});
  EXPECT_THROW(build_extraction_order(g, 0), ExtractionError);
}

TEST(OrderFromOrientation, RejectsCyclesAndSecondSources) {
  Digraph g = make_digraph({"i", "j", "k"}, {{"i", "j"}, {"j", "k"}, {"k", "i"}});
  EXPECT_THROW(order_from_orientation(g, {false, false, false}, 0), ExtractionError);
  Digraph p = make_digraph({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}});
  EXPECT_THROW(order_from_orientation(p, {false, false}, node(p, "a")), ExtractionError);
}

TEST(EdgeLabels, Fig4ConfluencesAndBags) {
  Digraph g = fig4_graph();
  auto labeled = label_order(fig4_order());

  // Expected confluences (source, target): (a,i) (i,j) (a,l) (b,l) (f,k).
  std::map<std::pair<std::string, std::string>, std::set<std::string>> expect = {
      {{"a", "b"}, {"i", "l"}}, {{"a", "e"}, {"i", "l"}}, {{"b", "i"}, {"i", "l"}}, {{"e", "i"}, {"i", "l"}},
      {{"b", "d"}, {"l"}},      {{"d", "l"}, {"l"}},      {{"i", "c"}, {"j"}},      {{"c", "j"}, {"j"}},
      {{"i", "f"}, {"j", "l"}}, {{"f", "j"}, {"j"}},      {{"f", "l"}, {"l"}},      {{"f", "g"}, {"k"}},
      {{"g", "k"}, {"k"}},      {{"f", "k"}, {"k"}}};
  for (const auto& [e, labels] : expect) {
    EXPECT_EQ(label_names(g, labeled.arc_labels[arc(g, e.first.c_str(), e.second.c_str())]), labels)
        << e.first << "->" << e.second;
  }

  const auto& f_bags = labeled.bags[node(g, "f")];
  ASSERT_EQ(f_bags.size(), 3u);
  std::set<std::pair<std::set<int>, std::set<std::string>>> got, want;
  for (const auto& b : f_bags) got.insert({{b.arcs.begin(), b.arcs.end()}, label_names(g, b.labels)});
  want.insert({{arc(g, "f", "j")}, {"j"}});
  want.insert({{arc(g, "f", "g"), arc(g, "f", "k")}, {"k"}});
  want.insert({{arc(g, "f", "l")}, {"l"}});
  EXPECT_EQ(got, want);

  const auto& i_bags = labeled.bags[node(g, "i")];
  ASSERT_EQ(i_bags.size(), 1u);
  EXPECT_EQ(label_names(g, i_bags[0].labels), (std::set<std::string>{"j", "l"}));
  EXPECT_EQ(i_bags[0].arcs.size(), 2u);
}

TEST(EdgeLabels, TreeOrdersHaveNoLabels) {
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    Digraph g = random_tree_graph(rng, 7);
    auto labeled = label_order(build_extraction_order(g, rng.below(7)));
    for (const auto& l : labeled.arc_labels) EXPECT_TRUE(l.empty());
    EXPECT_EQ(labeled.width, 1);
  }
}

TEST(EdgeLabels, MatchBruteForceOnRandomOrders) {
  Rng rng(17);
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    int n = 3 + rng.below(5);
    Digraph g = testing::random_connected_digraph(rng, n, rng.below(5));
    int root = rng.below(n);
    std::vector<ExtractionOrder> orders;
    for_each_extraction_order(g, root, [&](const ExtractionOrder& o) {
      orders.push_back(o);
      return orders.size() < 6;
    });
    for (const auto& o : orders) {
      EXPECT_EQ(compute_edge_labels(o), testing::brute_force_labels(o));
      ++checked;
    }
  }
  EXPECT_GT(checked, 60);
}

// Incoming arcs share their label set, and every label has a unique root
// from which all arcs carrying it are reachable.
TEST(EdgeLabels, IncomingEqualityAndUniqueLabelRoot) {
  Rng rng(29);
  for (int k = 0; k < 40; ++k) {
    int n = 4 + rng.below(4);
    Digraph g = testing::random_connected_digraph(rng, n, 1 + rng.below(4));
    auto orders = testing::all_orders(g, rng.below(n));
    for (const auto& o : orders) {
      auto lab = label_order(o);
      for (int v = 0; v < n; ++v) {
        auto in = o.in_arcs(v);
        for (int a : in) EXPECT_EQ(lab.arc_labels[a], lab.arc_labels[in.front()]);
      }
      for (int j = 0; j < n; ++j) {
        std::vector<int> carriers;
        for (int a = 0; a < static_cast<int>(o.arcs.size()); ++a) {
          const auto& l = lab.arc_labels[a];
          if (std::binary_search(l.begin(), l.end(), j)) carriers.push_back(a);
        }
        if (carriers.empty()) {
          EXPECT_EQ(lab.label_root[j], -1);
          continue;
        }
        int s = lab.label_root[j];
        ASSERT_GE(s, 0);
        // Exactly one carrier tail has no carrying in-arc, and it is s.
        std::set<int> tails, heads;
        for (int a : carriers) {
          tails.insert(o.arcs[a].tail);
          heads.insert(o.arcs[a].head);
        }
        std::vector<int> sources;
        for (int t : tails) {
          if (!heads.count(t)) sources.push_back(t);
        }
        ASSERT_EQ(sources.size(), 1u);
        EXPECT_EQ(sources[0], s);
        for (int a : carriers) {
          int t = o.arcs[a].tail;
          EXPECT_TRUE(t == s || !testing::all_paths(o, s, t).empty());
        }
      }
    }
  }
}

TEST(EdgeBags, TransitiveOverlapAndEmptySingletons) {
  // Root with four children; arcs a->x, a->y, a->z, a->w carry {x}, {x,y},
  // {z} and nothing, via hand-built labels.
  Digraph g = make_digraph({"a", "w", "x", "y", "z"}, {{"a", "w"}, {"a", "x"}, {"a", "y"}, {"a", "z"}});
  auto o = build_extraction_order(g, node(g, "a"));
  std::vector<std::vector<int>> labels(4);
  labels[arc(g, "a", "x")] = {node(g, "x")};
  labels[arc(g, "a", "y")] = {node(g, "x"), node(g, "y")};
  labels[arc(g, "a", "z")] = {node(g, "z")};
  auto bags = compute_edge_bags(o, labels);
  const auto& root_bags = bags[node(g, "a")];
  ASSERT_EQ(root_bags.size(), 3u);
  std::multiset<std::size_t> sizes;
  for (const auto& b : root_bags) sizes.insert(b.labels.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{0, 1, 2}));
  EXPECT_EQ(extraction_width(bags), 3);

  std::vector<std::vector<int>> none(4);
  auto singles = compute_edge_bags(o, none);
  EXPECT_EQ(singles[node(g, "a")].size(), 4u);
  EXPECT_EQ(extraction_width(singles), 1);
}

TEST(ExtractionWidth, SingleNodeIsOne) {
  Digraph g = make_digraph({"solo"}, {});
  EXPECT_EQ(min_width_order_search(g, OrderSearch::kExhaustive).width, 1);
}

TEST(ExtractionWidth, TriangleIsTwo) {
  Digraph g = make_digraph({"i", "j", "k"}, {{"i", "j"}, {"j", "k"}, {"k", "i"}});
  EXPECT_EQ(min_width_order_search(g, OrderSearch::kPerRootBfs).width, 2);
  EXPECT_EQ(min_width_order_search(g, OrderSearch::kExhaustive).width, 2);
}

TEST(ExtractionWidth, ExhaustiveRejectsLargeGraphs) {
  Rng rng(1);
  Digraph g = random_tree_graph(rng, kExhaustiveNodeLimit + 1);
  EXPECT_THROW(min_width_order_search(g, OrderSearch::kExhaustive), ExtractionError);
}

// The chain's solid edges form a cactus; the dashed ones run back from cache
// and LB2 to LB1. Keeping every dashed edge parallel to its solid partner and
// rooting at gw gives width 3. Rooting at LB2 does better.
TEST(ExtractionWidth, ServiceChain) {
  Digraph g = service_chain_graph();
  std::vector<bool> along_solid(g.num_arcs(), false);
  along_solid[arc(g, "cache", "LB1")] = true;
  along_solid[arc(g, "LB2", "LB1")] = true;
  EXPECT_EQ(label_order(order_from_orientation(g, along_solid, node(g, "gw"))).width, 3);

  auto best = min_width_order_search(g, OrderSearch::kExhaustive);
  EXPECT_LE(best.width, 3);
  int oracle = 1 << 20;
  for (const auto& o : testing::all_orders(g)) {
    auto labels = testing::brute_force_labels(o);
    oracle = std::min(oracle, extraction_width(compute_edge_bags(o, labels)));
  }
  EXPECT_EQ(best.width, oracle);
  EXPECT_EQ(oracle, 2);
}

TEST(ExtractionWidth, VirtualCluster) {
  for (int vms : {2, 4, 5}) {
    EXPECT_EQ(min_width_order_search(virtual_cluster_graph(vms), OrderSearch::kExhaustive).width, 2);
  }
}

TEST(ExtractionWidth, CactusAtMostTwoForEveryOrder) {
  Rng rng(41);
  for (int k = 0; k < 15; ++k) {
    Digraph g = random_cactus_graph(rng, 7);
    ASSERT_TRUE(is_cactus(g));
    for (const auto& o : testing::all_orders(g, rng.below(g.num_nodes()))) EXPECT_LE(label_order(o).width, 2);
  }
}

TEST(ExtractionWidth, ExhaustiveNeverWorseThanBfs) {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    Digraph g = testing::random_connected_digraph(rng, 6, 1 + rng.below(4));
    EXPECT_LE(min_width_order_search(g, OrderSearch::kExhaustive).width,
              min_width_order_search(g, OrderSearch::kPerRootBfs).width);
  }
}

// Every parallel augmentation next to a tree edge closes exactly one cycle,
// so these graphs stay cacti.
TEST(ExtractionWidth, ParallelAugmentationOfTreesStaysAtTwo) {
  Rng rng(8);
  for (int k = 0; k < 10; ++k) {
    Digraph g = add_parallel_edges(rng, random_tree_graph(rng, 5), 1);
    EXPECT_LE(min_width_order_search(g, OrderSearch::kPerRootBfs).width, 2);
  }
}

TEST(IsCactus, Examples) {
  EXPECT_TRUE(is_cactus(make_digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})));
  EXPECT_TRUE(is_cactus(make_digraph({"i", "j", "k"}, {{"i", "j"}, {"j", "k"}, {"k", "i"}})));
  EXPECT_TRUE(is_cactus(virtual_cluster_graph(3)));
  EXPECT_FALSE(is_cactus(service_chain_graph()));
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  named_undirected_graph("k4", names, edges);
  std::vector<std::pair<std::string, std::string>> arcs;
  for (auto [a, b] : edges) arcs.emplace_back(names[a], names[b]);
  EXPECT_FALSE(is_cactus(make_digraph(names, arcs)));
  named_undirected_graph("bowtie", names, edges);
  arcs.clear();
  for (auto [a, b] : edges) arcs.emplace_back(names[a], names[b]);
  EXPECT_TRUE(is_cactus(make_digraph(names, arcs)));
}

class HalfWheel : public ::testing::TestWithParam<int> {};

TEST_P(HalfWheel, CenterOrderHasWidthTwo) {
  int n = GetParam();
  Digraph g = generate_half_wheel(n);
  EXPECT_EQ(label_order(half_wheel_center_order(g, n)).width, 2);
}

TEST_P(HalfWheel, CentreRootedOrdersAreWide) {
  int n = GetParam();
  Digraph g = generate_half_wheel(n);
  int worst_low = 1 << 20;
  std::int64_t visited = for_each_extraction_order(g, node(g, "w_c"), [&](const ExtractionOrder& o) {
    worst_low = std::min(worst_low, label_order(o).width);
    return true;
  });
  EXPECT_GT(visited, 0);
  EXPECT_GE(worst_low, n / 2 + 1);
}

// Width of any centre-rooted order equals one plus the number of outer nodes
// entered by an outer arc.
TEST_P(HalfWheel, CentreRootedWidthMatchesCover) {
  int n = GetParam();
  Digraph g = generate_half_wheel(n);
  int centre = node(g, "w_c");
  int mismatches = 0;
  std::int64_t visited = for_each_extraction_order(g, centre, [&](const ExtractionOrder& o) {
    std::set<int> cover;
    for (const auto& a : o.arcs) {
      if (a.tail != centre && a.head != centre) cover.insert(a.head);
    }
    mismatches += label_order(o).width != static_cast<int>(cover.size()) + 1;
    mismatches += half_wheel_cover(g, o).size() != cover.size();
    return true;
  });
  EXPECT_GT(visited, 0);
  EXPECT_EQ(mismatches, 0);
}

INSTANTIATE_TEST_SUITE_P(Sizes, HalfWheel, ::testing::Values(6, 8));

class VcGadget : public ::testing::TestWithParam<std::string> {};

TEST_P(VcGadget, RootedWidthIsCoverPlusOne) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  named_undirected_graph(GetParam(), names, edges);
  Digraph g = generate_vc_gadget(names, edges);
  auto best = min_width_order_search(g, OrderSearch::kExhaustive, node(g, kVcGadgetRoot));
  EXPECT_EQ(best.width, testing::brute_force_vertex_cover(static_cast<int>(names.size()), edges) + 1);
}

INSTANTIATE_TEST_SUITE_P(Graphs, VcGadget, ::testing::Values("triangle", "c4", "c5", "path4", "star3", "k4"));

}  // namespace
}  // namespace vnep
