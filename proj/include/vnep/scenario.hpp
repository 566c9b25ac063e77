#pragma once

// Named fixtures and seeded random instance generators.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vnep/gadgets.hpp"
#include "vnep/graph_core.hpp"

namespace vnep {

/// Small deterministic helper around mt19937_64. Draws do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Integer in [0, n).
  int below(int n) { return static_cast<int>(uniform() * n); }
  bool coin(double p = 0.5) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Bidirected ring "s00".."sNN" with type "cpu" on every node, plus `chords`
/// random extra bidirected links.
Substrate ring_substrate(int nodes, double node_capacity, double edge_capacity, int chords = 0,
                         std::uint64_t seed = 0);

/// Type "cpu", uniform demands, default (capacity-sufficient) allowed sets.
Request request_from_digraph(const Substrate& substrate, const Digraph& graph, const std::string& id,
                             double profit = 1.0, double node_demand = 1.0, double edge_demand = 1.0);

/// The integrality-gap triangle on a directed 6-cycle. With `cost_gadget`
/// the extra edge (u3,u1) of cost kFig3GadgetCost is allowed for (k,i).
Instance fig3_instance(bool cost_gadget = false);
inline constexpr double kFig3GadgetCost = 1000.0;

/// Extraction-order example graph on a..l (no h) and its reversal-free order
/// rooted at a.
Digraph fig4_graph();
ExtractionOrder fig4_order();

Digraph service_chain_graph();
/// Star of n VMs around "sw", every link in both directions.
Digraph virtual_cluster_graph(int vms);

/// Named undirected graphs for vertex-cover gadgets ("triangle", "c4", "c5",
/// "path4", "star3", "k4", "bowtie") or an edge list "a-b,b-c".
void named_undirected_graph(const std::string& spec, std::vector<std::string>& names,
                            std::vector<std::pair<int, int>>& edges);

/// Node names "n00", "n01", ...; random edge directions.
Digraph random_tree_graph(Rng& rng, int nodes);
/// Grows a cactus by attaching pendant edges and cycles of length 3..5.
Digraph random_cactus_graph(Rng& rng, int nodes);
/// Adds `count` parallel connections next to random existing edges: a
/// reverse edge where none exists yet, otherwise a 2-path via a new node.
Digraph add_parallel_edges(Rng& rng, const Digraph& graph, int count);

struct RandomInstanceSpec {
  std::string shape = "tree";  // tree | cactus | parallel
  int requests = 1;
  int substrate_nodes = 6;
  int substrate_chords = 2;
  int request_nodes = 4;
  std::uint64_t seed = 0;
};

/// Capacities are tight enough that requests compete; each request node may
/// go to 2-3 random substrate nodes, edges may use every substrate edge.
Instance random_instance(const RandomInstanceSpec& spec);

/// Fixture by name: fig3, fig3-cost-gadget, fig4, servicechain,
/// virtualcluster:n, halfwheel:n, vc-gadget:<graph>, cactus:n, tree:n.
/// Throws std::invalid_argument for unknown names.
Instance make_fixture(const std::string& name, std::uint64_t seed = 0);

}  // namespace vnep
