#include "vnep/extraction.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

namespace vnep {

namespace {

std::vector<std::vector<int>> out_adjacency(const ExtractionOrder& order) {
  std::vector<std::vector<int>> out(order.num_nodes);
  for (int a = 0; a < static_cast<int>(order.arcs.size()); ++a) out[order.arcs[a].tail].push_back(a);
  return out;
}

// Nodes reachable from `from` along arcs, skipping arcs with skip_arc[a] and
// the node `skip_node`.
std::vector<bool> reach_forward(const ExtractionOrder& order,
                                const std::vector<std::vector<int>>& out, int from,
                                const std::vector<bool>* skip_arc = nullptr, int skip_node = -1) {
  std::vector<bool> seen(order.num_nodes, false);
  std::vector<int> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int a : out[v]) {
      if (skip_arc && (*skip_arc)[a]) continue;
      int w = order.arcs[a].head;
      if (w == skip_node || seen[w]) continue;
      seen[w] = true;
      stack.push_back(w);
    }
  }
  return seen;
}

std::vector<bool> reach_backward(const ExtractionOrder& order, int to) {
  std::vector<std::vector<int>> in(order.num_nodes);
  for (int a = 0; a < static_cast<int>(order.arcs.size()); ++a) in[order.arcs[a].head].push_back(a);
  std::vector<bool> seen(order.num_nodes, false);
  std::vector<int> stack{to};
  seen[to] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int a : in[v]) {
      int w = order.arcs[a].tail;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// Two internally node-disjoint i -> j paths (Menger, vertex version). Direct
// arcs are handled separately since they have no intermediate node to cut.
bool has_confluence(const ExtractionOrder& order, const std::vector<std::vector<int>>& out, int i,
                    int j) {
  std::vector<bool> direct(order.arcs.size(), false);
  int num_direct = 0;
  for (int a : out[i]) {
    if (order.arcs[a].head == j) {
      direct[a] = true;
      ++num_direct;
    }
  }
  if (num_direct >= 2) return true;
  if (!reach_forward(order, out, i, &direct)[j]) return false;
  if (num_direct == 1) return true;

  auto from_i = reach_forward(order, out, i);
  auto to_j = reach_backward(order, j);
  for (int k = 0; k < order.num_nodes; ++k) {
    if (k == i || k == j || !from_i[k] || !to_j[k]) continue;
    if (!reach_forward(order, out, i, nullptr, k)[j]) return false;
  }
  return true;
}

std::vector<std::vector<int>> undirected_adjacency(const Digraph& g) {
  std::vector<std::vector<int>> adj(g.num_nodes());
  for (auto [a, b] : g.arcs) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& v : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return adj;
}

}  // namespace

std::vector<int> ExtractionOrder::out_arcs(int i) const {
  std::vector<int> r;
  for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
    if (arcs[a].tail == i) r.push_back(a);
  }
  return r;
}

std::vector<int> ExtractionOrder::in_arcs(int i) const {
  std::vector<int> r;
  for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
    if (arcs[a].head == i) r.push_back(a);
  }
  return r;
}

std::vector<int> ExtractionOrder::topological_order() const {
  std::vector<int> indeg(num_nodes, 0);
  auto out = out_adjacency(*this);
  for (const auto& a : arcs) ++indeg[a.head];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < num_nodes; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  std::vector<int> topo;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    topo.push_back(v);
    for (int a : out[v]) {
      if (--indeg[arcs[a].head] == 0) ready.push(arcs[a].head);
    }
  }
  return topo;
}

std::vector<bool> ExtractionOrder::reversed_flags() const {
  std::vector<bool> r;
  for (const auto& a : arcs) r.push_back(a.reversed);
  return r;
}

ExtractionOrder build_extraction_order(const Digraph& g, int root) {
  const int n = g.num_nodes();
  if (root < 0 || root >= n) throw ExtractionError("root out of range");
  auto adj = undirected_adjacency(g);
  std::vector<int> discovered(n, -1);
  std::deque<int> queue{root};
  discovered[root] = 0;
  int next = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (discovered[w] < 0) {
        discovered[w] = next++;
        queue.push_back(w);
      }
    }
  }
  if (next != n) throw ExtractionError("request graph is not weakly connected");

  ExtractionOrder order;
  order.root = root;
  order.num_nodes = n;
  for (int e = 0; e < g.num_arcs(); ++e) {
    auto [a, b] = g.arcs[e];
    if (a == b) throw ExtractionError("self-loop in request graph");
    bool rev = discovered[b] < discovered[a];
    order.arcs.push_back(rev ? OrderedArc{b, a, e, true} : OrderedArc{a, b, e, false});
  }
  return order;
}

ExtractionOrder build_extraction_order(const Request& request, int root) {
  return build_extraction_order(request.topology(), root);
}

ExtractionOrder order_from_orientation(const Digraph& g, const std::vector<bool>& reversed,
                                       int root) {
  if (static_cast<int>(reversed.size()) != g.num_arcs()) {
    throw ExtractionError("orientation size does not match edge count");
  }
  if (root < 0 || root >= g.num_nodes()) throw ExtractionError("root out of range");
  ExtractionOrder order;
  order.root = root;
  order.num_nodes = g.num_nodes();
  for (int e = 0; e < g.num_arcs(); ++e) {
    auto [a, b] = g.arcs[e];
    order.arcs.push_back(reversed[e] ? OrderedArc{b, a, e, true} : OrderedArc{a, b, e, false});
  }
  if (static_cast<int>(order.topological_order().size()) != order.num_nodes) {
    throw ExtractionError("orientation is not acyclic");
  }
  auto reach = reach_forward(order, out_adjacency(order), root);
  if (std::find(reach.begin(), reach.end(), false) != reach.end()) {
    throw ExtractionError("not every node is reachable from the root");
  }
  return order;
}

std::vector<bool> arcs_between(const ExtractionOrder& order, int i, int j) {
  auto from_i = reach_forward(order, out_adjacency(order), i);
  auto to_j = reach_backward(order, j);
  std::vector<bool> on(order.arcs.size(), false);
  for (int a = 0; a < static_cast<int>(order.arcs.size()); ++a) {
    on[a] = from_i[order.arcs[a].tail] && to_j[order.arcs[a].head];
  }
  return on;
}

namespace {

struct LabelData {
  std::vector<std::vector<int>> labels;
  std::vector<std::vector<int>> sources;  // per target j: confluence sources
};

LabelData compute_labels_with_sources(const ExtractionOrder& order) {
  const int n = order.num_nodes;
  auto out = out_adjacency(order);
  LabelData d;
  d.labels.assign(order.arcs.size(), {});
  d.sources.assign(n, {});
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j || !has_confluence(order, out, i, j)) continue;
      d.sources[j].push_back(i);
      auto on = arcs_between(order, i, j);
      for (int a = 0; a < static_cast<int>(on.size()); ++a) {
        if (on[a]) d.labels[a].push_back(j);
      }
    }
  }
  for (auto& l : d.labels) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return d;
}

}  // namespace

std::vector<std::vector<int>> compute_edge_labels(const ExtractionOrder& order) {
  return compute_labels_with_sources(order).labels;
}

std::vector<std::vector<EdgeBag>> compute_edge_bags(const ExtractionOrder& order,
                                                    const std::vector<std::vector<int>>& labels) {
  std::vector<std::vector<EdgeBag>> bags(order.num_nodes);
  for (int i = 0; i < order.num_nodes; ++i) {
    auto out = order.out_arcs(i);
    const int k = static_cast<int>(out.size());
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int p = 0; p < k; ++p) {
      for (int q = p + 1; q < k; ++q) {
        const auto& lp = labels[out[p]];
        const auto& lq = labels[out[q]];
        std::vector<int> common;
        std::set_intersection(lp.begin(), lp.end(), lq.begin(), lq.end(), std::back_inserter(common));
        if (!common.empty()) parent[find(p)] = find(q);
      }
    }
    // Bags ordered by their smallest arc.
    std::vector<int> bag_of(k, -1);
    for (int p = 0; p < k; ++p) {
      int rep = find(p);
      if (bag_of[rep] < 0) {
        bag_of[rep] = static_cast<int>(bags[i].size());
        bags[i].emplace_back();
      }
      EdgeBag& bag = bags[i][bag_of[rep]];
      bag.arcs.push_back(out[p]);
      bag.labels.insert(bag.labels.end(), labels[out[p]].begin(), labels[out[p]].end());
    }
    for (auto& bag : bags[i]) {
      std::sort(bag.labels.begin(), bag.labels.end());
      bag.labels.erase(std::unique(bag.labels.begin(), bag.labels.end()), bag.labels.end());
    }
  }
  return bags;
}

int extraction_width(const std::vector<std::vector<EdgeBag>>& bags) {
  std::size_t mx = 0;
  for (const auto& node_bags : bags) {
    for (const auto& b : node_bags) mx = std::max(mx, b.labels.size());
  }
  return 1 + static_cast<int>(mx);
}

int extraction_width(const LabeledExtractionOrder& labeled) { return extraction_width(labeled.bags); }

LabeledExtractionOrder label_order(const ExtractionOrder& order) {
  LabeledExtractionOrder lo;
  lo.order = order;
  auto data = compute_labels_with_sources(order);
  lo.arc_labels = data.labels;
  lo.bags = compute_edge_bags(order, lo.arc_labels);
  lo.width = extraction_width(lo.bags);
  lo.label_root.assign(order.num_nodes, -1);
  for (int j = 0; j < order.num_nodes; ++j) {
    if (data.sources[j].empty()) continue;
    for (int s : data.sources[j]) {
      auto on = arcs_between(order, s, j);
      bool covers = true;
      for (int a = 0; a < static_cast<int>(on.size()) && covers; ++a) {
        const auto& l = lo.arc_labels[a];
        if (std::binary_search(l.begin(), l.end(), j) && !on[a]) covers = false;
      }
      if (covers) {
        lo.label_root[j] = s;
        break;
      }
    }
    if (lo.label_root[j] < 0) throw ExtractionError("label without a unique root");
  }
  return lo;
}

std::int64_t for_each_extraction_order(const Digraph& g, int root,
                                       const std::function<bool(const ExtractionOrder&)>& visit) {
  const int n = g.num_nodes();
  const int m = g.num_arcs();
  if (root < 0 || root >= n) throw ExtractionError("root out of range");
  for (auto [a, b] : g.arcs) {
    if (a == b) throw ExtractionError("self-loop in request graph");
  }
  std::vector<std::vector<int>> adj(n);  // current oriented adjacency (heads)
  std::vector<int> indeg(n, 0), unassigned(n, 0);
  for (auto [a, b] : g.arcs) {
    ++unassigned[a];
    ++unassigned[b];
  }
  std::vector<bool> reversed(m, false);
  std::int64_t count = 0;
  bool stop = false;

  auto reaches = [&](int from, int to) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return false;
  };
  // A finished non-root node without in-arcs can never be reached.
  auto dead = [&](int v) { return v != root && unassigned[v] == 0 && indeg[v] == 0; };

  std::function<void(int)> rec = [&](int e) {
    if (stop) return;
    if (e == m) {
      ExtractionOrder order;
      order.root = root;
      order.num_nodes = n;
      for (int k = 0; k < m; ++k) {
        auto [a, b] = g.arcs[k];
        order.arcs.push_back(reversed[k] ? OrderedArc{b, a, k, true} : OrderedArc{a, b, k, false});
      }
      auto reach = reach_forward(order, out_adjacency(order), root);
      if (std::find(reach.begin(), reach.end(), false) != reach.end()) return;
      ++count;
      if (!visit(order)) stop = true;
      return;
    }
    auto [a, b] = g.arcs[e];
    for (int flip = 0; flip < 2 && !stop; ++flip) {
      int t = flip ? b : a;
      int h = flip ? a : b;
      if (h == root || reaches(h, t)) continue;
      adj[t].push_back(h);
      ++indeg[h];
      --unassigned[a];
      --unassigned[b];
      reversed[e] = flip != 0;
      if (!dead(a) && !dead(b)) rec(e + 1);
      ++unassigned[a];
      ++unassigned[b];
      --indeg[h];
      adj[t].pop_back();
    }
  };
  if (n == 1 || !dead(root)) rec(0);
  return count;
}

LabeledExtractionOrder min_width_order_search(const Digraph& g, OrderSearch strategy,
                                              std::optional<int> root) {
  const int n = g.num_nodes();
  if (n == 0) throw ExtractionError("empty request graph");
  if (strategy == OrderSearch::kExhaustive && n > kExhaustiveNodeLimit) {
    throw ExtractionError("exhaustive order search limited to " +
                          std::to_string(kExhaustiveNodeLimit) + " nodes");
  }
  std::vector<int> roots;
  if (root) {
    roots.push_back(*root);
  } else {
    roots.resize(n);
    std::iota(roots.begin(), roots.end(), 0);
  }
  std::optional<LabeledExtractionOrder> best;
  auto consider = [&](const ExtractionOrder& order) {
    auto lo = label_order(order);
    if (!best || lo.width < best->width) best = std::move(lo);
    return best->width > 1;
  };
  for (int r : roots) {
    if (strategy == OrderSearch::kPerRootBfs) {
      consider(build_extraction_order(g, r));
    } else {
      for_each_extraction_order(g, r, consider);
    }
    if (best && best->width == 1) break;
  }
  if (!best) throw ExtractionError("no extraction order exists (graph not connected?)");
  return *best;
}

LabeledExtractionOrder min_width_order_search(const Request& request, OrderSearch strategy,
                                              std::optional<int> root) {
  return min_width_order_search(request.topology(), strategy, root);
}

bool is_cactus(const Digraph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, edge id)
  for (int e = 0; e < g.num_arcs(); ++e) {
    auto [a, b] = g.arcs[e];
    if (a == b) return false;
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> edge_stack;
  int timer = 0;
  bool ok = true;

  std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
    disc[v] = low[v] = timer++;
    for (auto [w, e] : adj[v]) {
      if (e == parent_edge) continue;
      if (disc[w] < 0) {
        edge_stack.push_back(e);
        dfs(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::set<int> nodes;
          int num_edges = 0;
          while (true) {
            int f = edge_stack.back();
            edge_stack.pop_back();
            ++num_edges;
            nodes.insert(g.arcs[f].first);
            nodes.insert(g.arcs[f].second);
            if (f == e) break;
          }
          if (num_edges > 1 && num_edges != static_cast<int>(nodes.size())) ok = false;
        }
      } else if (disc[w] < disc[v]) {
        edge_stack.push_back(e);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (int v = 0; v < n; ++v) {
    if (disc[v] < 0) dfs(v, -1);
  }
  return ok;
}

}  // namespace vnep
