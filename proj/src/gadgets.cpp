#include "vnep/gadgets.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace vnep {

Digraph make_digraph(std::vector<std::string> names,
                     const std::vector<std::pair<std::string, std::string>>& arcs) {
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw std::invalid_argument("duplicate node name");
  }
  Digraph g;
  g.names = names;
  auto idx = [&](const std::string& s) {
    auto it = std::lower_bound(names.begin(), names.end(), s);
    if (it == names.end() || *it != s) throw std::invalid_argument("unknown node '" + s + "'");
    return static_cast<int>(it - names.begin());
  };
  for (const auto& [a, b] : arcs) g.arcs.emplace_back(idx(a), idx(b));
  std::sort(g.arcs.begin(), g.arcs.end());
  return g;
}

std::string half_wheel_outer(int k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "w%02d", k);
  return buf;
}

Digraph generate_half_wheel(int n) {
  if (n < 3 || n > 99) throw std::invalid_argument("half wheel needs 3 <= n <= 99");
  std::vector<std::string> names{"w_c"};
  std::vector<std::pair<std::string, std::string>> arcs;
  for (int k = 1; k <= n; ++k) {
    names.push_back(half_wheel_outer(k));
    arcs.emplace_back("w_c", half_wheel_outer(k));
    if (k < n) arcs.emplace_back(half_wheel_outer(k), half_wheel_outer(k + 1));
  }
  return make_digraph(names, arcs);
}

ExtractionOrder half_wheel_center_order(const Digraph& hw, int n) {
  const int root = *hw.find(half_wheel_outer(n / 2));
  const int centre = *hw.find("w_c");
  std::vector<bool> reversed(hw.num_arcs(), false);
  for (int e = 0; e < hw.num_arcs(); ++e) {
    auto [a, b] = hw.arcs[e];
    if (a == centre) {
      reversed[e] = true;  // spoke into the centre
    } else {
      // outer edge w_k -> w_{k+1}: flip it on the left of the root
      int k = std::stoi(hw.names[a].substr(1));
      reversed[e] = k + 1 <= n / 2;
    }
  }
  return order_from_orientation(hw, reversed, root);
}

std::vector<int> half_wheel_cover(const Digraph& hw, const ExtractionOrder& order) {
  const int centre = *hw.find("w_c");
  std::vector<int> cover;
  for (int v = 0; v < hw.num_nodes(); ++v) {
    if (v == centre) continue;
    for (const auto& a : order.arcs) {
      if (a.head == v && a.tail != centre) {
        cover.push_back(v);
        break;
      }
    }
  }
  return cover;
}

Digraph generate_vc_gadget(const std::vector<std::string>& names,
                           const std::vector<std::pair<int, int>>& edges) {
  Digraph undirected;
  undirected.names = names;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= static_cast<int>(names.size()) ||
        b >= static_cast<int>(names.size()) || a == b) {
      throw std::invalid_argument("bad edge in vertex cover gadget input");
    }
    undirected.arcs.emplace_back(a, b);
  }
  if (names.empty() || !undirected.weakly_connected()) {
    throw std::invalid_argument("vertex cover gadget input must be connected");
  }
  std::vector<std::string> all = names;
  all.push_back(kVcGadgetRoot);
  std::vector<std::pair<std::string, std::string>> arcs;
  for (auto [a, b] : edges) {
    arcs.emplace_back(names[std::min(a, b)], names[std::max(a, b)]);
  }
  for (const auto& v : names) arcs.emplace_back(kVcGadgetRoot, v);
  return make_digraph(all, arcs);
}

}  // namespace vnep
