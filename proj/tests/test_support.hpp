#pragma once

// Test-side oracles and builders. Nothing here calls the code under test for
// the quantity it is meant to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "vnep/extraction.hpp"
#include "vnep/graph_core.hpp"
#include "vnep/scenario.hpp"

namespace vnep::testing {

// All simple directed paths from i to j in the order, as arc lists.
inline std::vector<std::vector<int>> all_paths(const ExtractionOrder& order, int i, int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<bool> on(order.num_nodes, false);
  std::function<void(int)> dfs = [&](int v) {
    if (v == j) {
      out.push_back(path);
      return;
    }
    for (int a = 0; a < static_cast<int>(order.arcs.size()); ++a) {
      if (order.arcs[a].tail != v || on[order.arcs[a].head]) continue;
      on[order.arcs[a].head] = true;
      path.push_back(a);
      dfs(order.arcs[a].head);
      path.pop_back();
      on[order.arcs[a].head] = false;
    }
  };
  on[i] = true;
  dfs(i);
  return out;
}

inline std::set<int> inner_nodes(const ExtractionOrder& order, const std::vector<int>& path) {
  std::set<int> inner;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) inner.insert(order.arcs[path[k]].head);
  return inner;
}

// Labels by exhaustive search: j labels every arc of every i -> j path when
// some pair of distinct i -> j paths shares no inner node.
inline std::vector<std::vector<int>> brute_force_labels(const ExtractionOrder& order) {
  std::vector<std::set<int>> labels(order.arcs.size());
  for (int i = 0; i < order.num_nodes; ++i) {
    for (int j = 0; j < order.num_nodes; ++j) {
      if (i == j) continue;
      auto paths = all_paths(order, i, j);
      bool confluence = false;
      for (std::size_t p = 0; p < paths.size() && !confluence; ++p) {
        for (std::size_t q = p + 1; q < paths.size() && !confluence; ++q) {
          auto a = inner_nodes(order, paths[p]), b = inner_nodes(order, paths[q]);
          bool disjoint = std::none_of(a.begin(), a.end(), [&](int v) { return b.count(v) > 0; });
          confluence = disjoint;
        }
      }
      if (!confluence) continue;
      for (const auto& p : paths) {
        for (int a : p) labels[a].insert(j);
      }
    }
  }
  std::vector<std::vector<int>> out;
  for (const auto& s : labels) out.emplace_back(s.begin(), s.end());
  return out;
}

inline int brute_force_vertex_cover(int nodes, const std::vector<std::pair<int, int>>& edges) {
  int best = nodes;
  for (std::uint32_t mask = 0; mask < (1u << nodes); ++mask) {
    bool covers = std::all_of(edges.begin(), edges.end(),
                              [&](auto e) { return ((mask >> e.first) & 1u) || ((mask >> e.second) & 1u); });
    if (covers) best = std::min(best, __builtin_popcount(mask));
  }
  return best;
}

// Random weakly connected digraph on n nodes with `extra` arcs beyond a
// spanning tree; no duplicate (tail, head) pairs, no self-loops.
inline Digraph random_connected_digraph(Rng& rng, int n, int extra) {
  std::set<std::pair<int, int>> arcs;
  for (int k = 1; k < n; ++k) {
    int p = rng.below(k);
    arcs.insert(rng.coin() ? std::pair{p, k} : std::pair{k, p});
  }
  for (int c = 0, tries = 0; c < extra && tries < 200; ++tries) {
    int a = rng.below(n), b = rng.below(n);
    if (a == b || arcs.count({a, b})) continue;
    arcs.insert({a, b});
    ++c;
  }
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back("v" + std::to_string(k));
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [a, b] : arcs) named.emplace_back(names[a], names[b]);
  return make_digraph(names, named);
}

// Every extraction order of a graph, over all roots.
inline std::vector<ExtractionOrder> all_orders(const Digraph& g, std::optional<int> root = std::nullopt) {
  std::vector<ExtractionOrder> out;
  for (int r = 0; r < g.num_nodes(); ++r) {
    if (root && r != *root) continue;
    for_each_extraction_order(g, r, [&](const ExtractionOrder& o) {
      out.push_back(o);
      return true;
    });
  }
  return out;
}

// Substrate a..: nodes "a".."<n>" with type cpu; explicit edge list.
struct TinySubstrate {
  std::vector<std::string> nodes;
  std::vector<std::tuple<std::string, std::string, double, double>> edges;  // tail, head, cap, cost
  double node_capacity = 10.0;
  double node_cost = 1.0;

  Substrate build() const {
    SubstrateBuilder b;
    for (const auto& n : nodes) {
      b.add_node(n);
      b.add_node_type(n, "cpu", node_capacity, node_cost);
    }
    for (const auto& [t, h, cap, cost] : edges) b.add_edge(t, h, cap, cost);
    return b.build();
  }
};

// Random small instances for LP-versus-oracle comparisons.
inline Instance tiny_random_instance(std::uint64_t seed, const std::string& shape, int requests, int request_nodes,
                                     int substrate_nodes) {
  RandomInstanceSpec spec;
  spec.shape = shape;
  spec.requests = requests;
  spec.request_nodes = request_nodes;
  spec.substrate_nodes = substrate_nodes;
  spec.substrate_chords = 1;
  spec.seed = seed;
  return random_instance(spec);
}

}  // namespace vnep::testing
