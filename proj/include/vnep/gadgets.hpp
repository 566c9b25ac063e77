#pragma once

// Graph families used to probe extraction width.

#include <string>
#include <utility>
#include <vector>

#include "vnep/extraction.hpp"

namespace vnep {

/// Digraph whose nodes are sorted by name and arcs by (tail, head), the same
/// dense layout a Request built from these names would get.
Digraph make_digraph(std::vector<std::string> names,
                     const std::vector<std::pair<std::string, std::string>>& arcs);

/// Half wheel with centre "w_c" and outer nodes "w01".."wNN". Spokes point
/// from the centre outwards, outer edges point to increasing index.
Digraph generate_half_wheel(int n);
std::string half_wheel_outer(int k);

/// Order rooted at the middle outer node with every outer edge oriented away
/// from it and every spoke pointing into the centre.
ExtractionOrder half_wheel_center_order(const Digraph& half_wheel, int n);

/// Outer nodes with an incoming outer arc in a centre-rooted order.
std::vector<int> half_wheel_cover(const Digraph& half_wheel, const ExtractionOrder& order);

/// Directed version of a connected undirected graph: each edge oriented from
/// the lower to the higher node index, plus a super node "rhat" pointing to
/// every node. `undirected` lists node names and unordered edges.
Digraph generate_vc_gadget(const std::vector<std::string>& names,
                           const std::vector<std::pair<int, int>>& edges);
inline constexpr const char* kVcGadgetRoot = "rhat";

}  // namespace vnep
