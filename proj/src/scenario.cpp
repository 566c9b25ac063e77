#include "vnep/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vnep {

namespace {

std::string padded(char prefix, int k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%02d", prefix, k);
  return buf;
}

int parse_count(const std::string& name, const std::string& arg, int lo, int hi) {
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != arg.size() || n < lo || n > hi) {
    throw std::invalid_argument("fixture '" + name + "' needs a count in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
  return n;
}

// Fixture substrate: enough room for any single fixture request.
Substrate fixture_substrate(const Digraph& g) {
  double room = 2.0 * (g.num_nodes() + g.num_arcs());
  return ring_substrate(4, room, room);
}

Instance single_request(const Digraph& g, const std::string& id) {
  Instance inst{fixture_substrate(g), {}};
  inst.requests.push_back(request_from_digraph(inst.substrate, g, id));
  return inst;
}

Digraph digraph_with_names(int nodes, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<std::string> names;
  for (int k = 0; k < nodes; ++k) names.push_back(padded('n', k));
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [a, b] : arcs) named.emplace_back(names[a], names[b]);
  return make_digraph(names, named);
}

}  // namespace

Substrate ring_substrate(int nodes, double node_capacity, double edge_capacity, int chords, std::uint64_t seed) {
  if (nodes < 2) throw std::invalid_argument("ring substrate needs at least 2 nodes");
  SubstrateBuilder b;
  for (int k = 0; k < nodes; ++k) {
    b.add_node(padded('s', k));
    b.add_node_type(padded('s', k), "cpu", node_capacity, 1.0);
  }
  std::set<std::pair<int, int>> links;
  auto link = [&](int a, int c) {
    if (a == c || links.count({std::min(a, c), std::max(a, c)})) return;
    links.insert({std::min(a, c), std::max(a, c)});
    b.add_edge(padded('s', a), padded('s', c), edge_capacity, 1.0);
    b.add_edge(padded('s', c), padded('s', a), edge_capacity, 1.0);
  };
  for (int k = 0; k < nodes; ++k) link(k, (k + 1) % nodes);
  Rng rng(seed);
  for (int c = 0, attempts = 0; c < chords && attempts < 100 * (chords + 1); ++attempts) {
    int a = rng.below(nodes), d = rng.below(nodes);
    std::size_t before = links.size();
    link(a, d);
    if (links.size() > before) ++c;
  }
  return b.build();
}

Request request_from_digraph(const Substrate& s, const Digraph& g, const std::string& id, double profit,
                             double node_demand, double edge_demand) {
  RequestBuilder b(s, id, profit);
  for (const auto& name : g.names) b.add_node(name, "cpu", node_demand);
  for (auto [a, c] : g.arcs) b.add_edge(g.names[a], g.names[c], edge_demand);
  return b.build();
}

Instance fig3_instance(bool cost_gadget) {
  SubstrateBuilder sb;
  for (int k = 1; k <= 6; ++k) {
    std::string u = "u" + std::to_string(k);
    sb.add_node(u);
    sb.add_node_type(u, "cpu", 1.0, 1.0);
  }
  for (int k = 1; k <= 6; ++k) {
    sb.add_edge("u" + std::to_string(k), "u" + std::to_string(k % 6 + 1), 1.0, 1.0);
  }
  if (cost_gadget) sb.add_edge("u3", "u1", 1.0, kFig3GadgetCost);
  Instance inst{sb.build(), {}};
  RequestBuilder rb(inst.substrate, "r", 1.0);
  rb.add_node("i", "cpu", 1.0, std::vector<std::string>{"u1", "u4"});
  rb.add_node("j", "cpu", 1.0, std::vector<std::string>{"u2", "u5"});
  rb.add_node("k", "cpu", 1.0, std::vector<std::string>{"u3", "u6"});
  using Pairs = std::vector<std::pair<std::string, std::string>>;
  rb.add_edge("i", "j", 1.0, Pairs{{"u1", "u2"}, {"u4", "u5"}});
  rb.add_edge("j", "k", 1.0, Pairs{{"u2", "u3"}, {"u5", "u6"}});
  Pairs ki{{"u3", "u4"}, {"u6", "u1"}};
  if (cost_gadget) ki.emplace_back("u3", "u1");
  rb.add_edge("k", "i", 1.0, ki);
  inst.requests.push_back(rb.build());
  return inst;
}

Digraph fig4_graph() {
  return make_digraph({"a", "b", "c", "d", "e", "f", "g", "i", "j", "k", "l"},
                      {{"a", "b"}, {"a", "e"}, {"b", "i"}, {"b", "d"}, {"e", "i"}, {"i", "c"}, {"i", "f"},
                       {"c", "j"}, {"f", "j"}, {"f", "g"}, {"f", "k"}, {"g", "k"}, {"f", "l"}, {"d", "l"}});
}

ExtractionOrder fig4_order() {
  Digraph g = fig4_graph();
  return order_from_orientation(g, std::vector<bool>(g.num_arcs(), false), *g.find("a"));
}

Digraph service_chain_graph() {
  return make_digraph({"gw", "LB1", "cache", "LB2", "FW", "NAT", "inet"},
                      {{"gw", "LB1"},
                       {"LB1", "cache"},
                       {"cache", "LB2"},
                       {"LB1", "LB2"},
                       {"LB2", "FW"},
                       {"FW", "NAT"},
                       {"NAT", "inet"},
                       {"cache", "LB1"},
                       {"LB2", "LB1"}});
}

Digraph virtual_cluster_graph(int vms) {
  std::vector<std::string> names{"sw"};
  std::vector<std::pair<std::string, std::string>> arcs;
  for (int k = 1; k <= vms; ++k) {
    std::string vm = "vm" + std::to_string(k);
    names.push_back(vm);
    arcs.emplace_back("sw", vm);
    arcs.emplace_back(vm, "sw");
  }
  return make_digraph(names, arcs);
}

void named_undirected_graph(const std::string& spec, std::vector<std::string>& names,
                            std::vector<std::pair<int, int>>& edges) {
  static const std::map<std::string, std::string> kNamed = {
      {"triangle", "a-b,b-c,a-c"},       {"c4", "a-b,b-c,c-d,a-d"},
      {"c5", "a-b,b-c,c-d,d-e,a-e"},     {"path4", "a-b,b-c,c-d"},
      {"star3", "a-b,a-c,a-d"},          {"k4", "a-b,a-c,a-d,b-c,b-d,c-d"},
      {"bowtie", "a-b,b-c,a-c,c-d,d-e,c-e"}};
  auto it = kNamed.find(spec);
  const std::string& list = it == kNamed.end() ? spec : it->second;
  names.clear();
  edges.clear();
  std::vector<std::pair<std::string, std::string>> named;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == item.size()) {
      throw std::invalid_argument("bad edge '" + item + "' in graph spec");
    }
    named.emplace_back(item.substr(0, dash), item.substr(dash + 1));
    names.push_back(named.back().first);
    names.push_back(named.back().second);
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  auto idx = [&](const std::string& n) {
    return static_cast<int>(std::lower_bound(names.begin(), names.end(), n) - names.begin());
  };
  for (const auto& [a, b] : named) edges.emplace_back(idx(a), idx(b));
}

Digraph random_tree_graph(Rng& rng, int nodes) {
  std::vector<std::pair<int, int>> arcs;
  for (int k = 1; k < nodes; ++k) {
    int parent = rng.below(k);
    arcs.push_back(rng.coin() ? std::pair{parent, k} : std::pair{k, parent});
  }
  return digraph_with_names(nodes, arcs);
}

Digraph random_cactus_graph(Rng& rng, int nodes) {
  std::vector<std::pair<int, int>> arcs;
  int next = 1;
  auto orient = [&](int a, int b) { arcs.push_back(rng.coin() ? std::pair{a, b} : std::pair{b, a}); };
  while (next < nodes) {
    int anchor = rng.below(next);
    int room = nodes - next;
    if (room >= 2 && rng.coin(0.6)) {
      int len = std::min(room, 2 + rng.below(3));  // new nodes on the cycle
      int prev = anchor;
      for (int k = 0; k < len; ++k) {
        orient(prev, next);
        prev = next++;
      }
      orient(prev, anchor);
    } else {
      orient(anchor, next++);
    }
  }
  return digraph_with_names(nodes, arcs);
}

Digraph add_parallel_edges(Rng& rng, const Digraph& g, int count) {
  std::vector<std::string> names = g.names;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::set<std::pair<int, int>> present(g.arcs.begin(), g.arcs.end());
  for (auto [a, b] : g.arcs) arcs.emplace_back(g.names[a], g.names[b]);
  if (g.arcs.empty()) return g;
  int extra = 0;
  for (int c = 0; c < count; ++c) {
    auto [a, b] = g.arcs[rng.below(g.num_arcs())];
    if (!present.count({b, a})) {
      present.insert({b, a});
      arcs.emplace_back(g.names[b], g.names[a]);
    } else {
      std::string mid = "p" + std::to_string(extra++);
      names.push_back(mid);
      arcs.emplace_back(g.names[a], mid);
      arcs.emplace_back(mid, g.names[b]);
    }
  }
  return make_digraph(names, arcs);
}

Instance random_instance(const RandomInstanceSpec& spec) {
  if (spec.requests < 1 || spec.request_nodes < 1) throw std::invalid_argument("empty random instance spec");
  Rng rng(spec.seed);
  const int n = spec.substrate_nodes;
  // Roughly room for all requests at half their worst-case demand, so the
  // LP has to share.
  const double node_cap = rng.uniform(1.0, 2.0) * std::max(1.0, 0.5 * spec.requests);
  const double edge_cap = rng.uniform(1.0, 2.0) * std::max(1.0, 0.5 * spec.requests);
  SubstrateBuilder sb;
  for (int k = 0; k < n; ++k) {
    sb.add_node(padded('s', k));
    sb.add_node_type(padded('s', k), "cpu", node_cap * rng.uniform(1.0, 1.6), rng.uniform(0.5, 3.0));
  }
  std::set<std::pair<int, int>> links;
  auto link = [&](int a, int c) {
    if (a == c || links.count({std::min(a, c), std::max(a, c)})) return false;
    links.insert({std::min(a, c), std::max(a, c)});
    sb.add_edge(padded('s', a), padded('s', c), edge_cap * rng.uniform(1.0, 1.6), rng.uniform(0.5, 3.0));
    sb.add_edge(padded('s', c), padded('s', a), edge_cap * rng.uniform(1.0, 1.6), rng.uniform(0.5, 3.0));
    return true;
  };
  for (int k = 0; k < n; ++k) link(k, (k + 1) % n);
  for (int c = 0, attempts = 0; c < spec.substrate_chords && attempts < 1000; ++attempts) {
    if (link(rng.below(n), rng.below(n))) ++c;
  }
  Instance inst{sb.build(), {}};

  for (int q = 0; q < spec.requests; ++q) {
    Digraph g;
    if (spec.shape == "tree") {
      g = random_tree_graph(rng, spec.request_nodes);
    } else if (spec.shape == "cactus") {
      g = random_cactus_graph(rng, spec.request_nodes);
    } else if (spec.shape == "parallel") {
      g = add_parallel_edges(rng, random_cactus_graph(rng, spec.request_nodes), 1 + rng.below(2));
    } else {
      throw std::invalid_argument("unknown request shape '" + spec.shape + "'");
    }
    RequestBuilder rb(inst.substrate, padded('r', q), std::round(rng.uniform(1.0, 10.0) * 100.0) / 100.0);
    for (const auto& name : g.names) {
      int size = std::min(n, 2 + rng.below(2));
      std::vector<int> pool(n);
      for (int k = 0; k < n; ++k) pool[k] = k;
      std::vector<std::string> allowed;
      for (int k = 0; k < size; ++k) {
        int pick = k + rng.below(n - k);
        std::swap(pool[k], pool[pick]);
        allowed.push_back(padded('s', pool[k]));
      }
      rb.add_node(name, "cpu", std::round(rng.uniform(0.5, 1.0) * 100.0) / 100.0, allowed);
    }
    for (auto [a, c] : g.arcs) {
      rb.add_edge(g.names[a], g.names[c], std::round(rng.uniform(0.5, 1.0) * 100.0) / 100.0);
    }
    inst.requests.push_back(rb.build());
  }
  return inst;
}

Instance make_fixture(const std::string& name, std::uint64_t seed) {
  auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (name == "fig3") return fig3_instance(false);
  if (name == "fig3-cost-gadget") return fig3_instance(true);
  if (name == "fig4") return single_request(fig4_graph(), "fig4");
  if (name == "servicechain") return single_request(service_chain_graph(), "servicechain");
  if (head == "virtualcluster" && colon != std::string::npos) {
    return single_request(virtual_cluster_graph(parse_count(name, arg, 1, 64)), "virtualcluster");
  }
  if (head == "halfwheel" && colon != std::string::npos) {
    return single_request(generate_half_wheel(parse_count(name, arg, 3, 99)), "halfwheel");
  }
  if (head == "vc-gadget" && colon != std::string::npos) {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> edges;
    named_undirected_graph(arg, names, edges);
    return single_request(generate_vc_gadget(names, edges), "vcgadget");
  }
  if (head == "cactus" && colon != std::string::npos) {
    Rng rng(seed);
    return single_request(random_cactus_graph(rng, parse_count(name, arg, 1, 200)), "cactus");
  }
  if (head == "tree" && colon != std::string::npos) {
    Rng rng(seed);
    return single_request(random_tree_graph(rng, parse_count(name, arg, 1, 200)), "tree");
  }
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace vnep
