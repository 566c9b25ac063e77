#pragma once

// Extraction orders: rooted acyclic reorientations of request graphs, their
// confluence labels, edge bags and width.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vnep/graph_core.hpp"

namespace vnep {

class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OrderedArc {
  int tail;          // tail in the order
  int head;          // head in the order
  int request_edge;  // index into the graph's arcs
  bool reversed;     // true when (tail, head) flips the original direction
};

struct ExtractionOrder {
  int root = 0;
  int num_nodes = 0;
  std::vector<OrderedArc> arcs;  // arcs[e].request_edge == e

  std::vector<int> out_arcs(int i) const;
  std::vector<int> in_arcs(int i) const;
  // Nodes in a topological order of the DAG (Kahn, smallest index first).
  std::vector<int> topological_order() const;
  std::vector<bool> reversed_flags() const;
};

struct EdgeBag {
  std::vector<int> arcs;    // outgoing arcs of the node, ascending
  std::vector<int> labels;  // union of member labels, ascending
};

struct LabeledExtractionOrder {
  ExtractionOrder order;
  std::vector<std::vector<int>> arc_labels;  // per arc, ascending node ids
  std::vector<std::vector<EdgeBag>> bags;    // per node
  std::vector<int> label_root;               // per node: s_j, or -1 if j is no label
  int width = 1;
};

/// BFS over the undirected interpretation; neighbours visited in index order.
/// Every edge points from the earlier discovered endpoint to the later one.
ExtractionOrder build_extraction_order(const Digraph& graph, int root);
ExtractionOrder build_extraction_order(const Request& request, int root);

/// Orientation given explicitly by per-edge reversal flags. Throws
/// ExtractionError unless the result is a DAG in which everything is
/// reachable from root.
ExtractionOrder order_from_orientation(const Digraph& graph, const std::vector<bool>& reversed,
                                       int root);

std::vector<std::vector<int>> compute_edge_labels(const ExtractionOrder& order);
std::vector<std::vector<EdgeBag>> compute_edge_bags(const ExtractionOrder& order,
                                                    const std::vector<std::vector<int>>& labels);
int extraction_width(const std::vector<std::vector<EdgeBag>>& bags);
int extraction_width(const LabeledExtractionOrder& labeled);

/// Labels, bags, label roots and width in one go.
LabeledExtractionOrder label_order(const ExtractionOrder& order);

/// Arcs lying on some i -> j path in the order.
std::vector<bool> arcs_between(const ExtractionOrder& order, int i, int j);

enum class OrderSearch { kPerRootBfs, kExhaustive };

inline constexpr int kExhaustiveNodeLimit = 8;

/// Per-root BFS heuristic, or exhaustive search over all extraction orders
/// (|V| <= kExhaustiveNodeLimit). Ties go to the smallest root, then to the
/// first order enumerated. An optional root restricts the search.
LabeledExtractionOrder min_width_order_search(const Digraph& graph, OrderSearch strategy,
                                              std::optional<int> root = std::nullopt);
LabeledExtractionOrder min_width_order_search(const Request& request, OrderSearch strategy,
                                              std::optional<int> root = std::nullopt);

/// Visits every extraction order rooted at `root` (acyclic orientations with
/// root as unique source). Backtracks over edges in index order. The visitor
/// returns false to stop early. Returns the number of orders visited.
std::int64_t for_each_extraction_order(const Digraph& graph, int root,
                                       const std::function<bool(const ExtractionOrder&)>& visit);

/// Every biconnected block of the undirected multigraph is an edge or a cycle.
bool is_cactus(const Digraph& graph);

}  // namespace vnep
