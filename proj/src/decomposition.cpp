#include "vnep/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>

namespace vnep {

double ConvexDecomposition::total_weight() const {
  double total = 0.0;
  for (const auto& e : entries) total += e.weight;
  return total;
}

std::vector<int> find_connectivity_path(const Substrate& s, const std::vector<double>& values,
                                        const std::vector<int>& z, const std::vector<int>& target_y,
                                        int start, SearchDirection direction,
                                        std::optional<int> required_end) {
  auto accepts = [&](int w) {
    if (required_end && w != *required_end) return false;
    return value_of(values, target_y[w]) > kPositivity;
  };
  const bool forward = direction == SearchDirection::kForward;
  std::vector<int> via(s.num_nodes(), -1);  // edge used to reach a node
  std::vector<bool> seen(s.num_nodes(), false);
  std::deque<int> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (accepts(v)) {
      std::vector<int> path;
      for (int w = v; w != start;) {
        int se = via[w];
        path.push_back(se);
        w = forward ? s.edge(se).tail : s.edge(se).head;
      }
      // Walking back from v yields reversed order for forward searches only.
      if (forward) std::reverse(path.begin(), path.end());
      return path;
    }
    const auto& edges = forward ? s.out_edges(v) : s.in_edges(v);
    for (int se : edges) {
      if (value_of(values, z[se]) <= kPositivity) continue;
      int w = forward ? s.edge(se).head : s.edge(se).tail;
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = se;
      queue.push_back(w);
    }
  }
  throw DecompositionError("flow conservation violated: no positive path from " + s.node_id(start));
}

namespace {

int smallest_positive(const std::vector<double>& values, const std::vector<int>& vars) {
  for (int u = 0; u < static_cast<int>(vars.size()); ++u) {
    if (value_of(values, vars[u]) > kPositivity) return u;
  }
  return -1;
}

// Subtracts f from every covered variable and f*A from the load variables,
// then records the mapping (merging repeats).
void extract(const Substrate& s, const Request& r, const std::set<int>& cover,
             const std::vector<int>& load_vars, Mapping mapping, std::vector<double>& residual,
             ConvexDecomposition& out) {
  double f = std::numeric_limits<double>::infinity();
  for (int v : cover) f = std::min(f, residual[v]);
  for (int v : cover) {
    residual[v] -= f;
    if (residual[v] < kPositivity) residual[v] = 0.0;
  }
  auto alloc = compute_allocations(s, r, mapping);
  for (int res = 0; res < alloc.size(); ++res) {
    int v = load_vars[res];
    if (v < 0 || alloc[res] == 0.0) continue;
    residual[v] = std::max(0.0, residual[v] - f * alloc[res]);
  }
  if (f < kWeightFloor) return;
  for (auto& e : out.entries) {
    if (e.mapping == mapping) {
      e.weight += f;
      return;
    }
  }
  out.entries.push_back({f, std::move(mapping)});
}

bool is_tree(const Request& r) {
  return r.num_edges() == r.num_nodes() - 1 && r.topology().weakly_connected();
}

Mapping empty_mapping(const Request& r) {
  Mapping m;
  m.nodes.assign(r.num_nodes(), -1);
  m.edges.assign(r.num_edges(), {});
  return m;
}

void finish(const Request& r, const std::vector<double>& residual, int x, ConvexDecomposition& out) {
  std::sort(out.entries.begin(), out.entries.end(),
            [](const DecompositionEntry& a, const DecompositionEntry& b) { return a.mapping < b.mapping; });
  (void)r;
  if (residual[x] > kResidualTolerance) {
    throw DecompositionError("decomposition left residual weight " + std::to_string(residual[x]));
  }
}

}  // namespace

ConvexDecomposition decompose_mcf_tree(const Substrate& s, const Request& r, const ExtractionOrder& order,
                                       const McfRequestIndex& idx, const std::vector<double>& values) {
  if (!is_tree(r)) throw std::invalid_argument("request '" + r.id() + "' is not a tree");
  std::vector<double> residual = values;
  ConvexDecomposition out;
  const int cap = static_cast<int>(values.size()) + 1;
  while (residual[idx.x] > kPositivity) {
    if (out.iterations++ >= cap) break;
    Mapping m = empty_mapping(r);
    std::set<int> cover{idx.x};
    int root_u = smallest_positive(residual, idx.y[order.root]);
    if (root_u < 0) break;
    m.nodes[order.root] = root_u;
    cover.insert(idx.y[order.root][root_u]);
    std::deque<int> queue{order.root};
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      for (int e : order.out_arcs(i)) {
        const OrderedArc& arc = order.arcs[e];
        int j = arc.head;
        auto path = find_connectivity_path(s, residual, idx.z[e], idx.y[j], m.nodes[i],
                                           arc.reversed ? SearchDirection::kReverse : SearchDirection::kForward);
        int end = path.empty() ? m.nodes[i]
                               : (arc.reversed ? s.edge(path.front()).tail : s.edge(path.back()).head);
        m.nodes[j] = end;
        cover.insert(idx.y[j][end]);
        for (int se : path) cover.insert(idx.z[e][se]);
        m.edges[e] = std::move(path);
        queue.push_back(j);
      }
    }
    extract(s, r, cover, idx.a, std::move(m), residual, out);
  }
  finish(r, residual, idx.x, out);
  return out;
}

ConvexDecomposition decompose_novel(const Substrate& s, const Request& r, const LabeledExtractionOrder& lo,
                                    const NovelRequestIndex& idx, const std::vector<double>& values) {
  const ExtractionOrder& order = lo.order;
  std::vector<double> residual = values;
  ConvexDecomposition out;
  const int cap = static_cast<int>(values.size()) + 1;
  std::vector<std::vector<int>> in_arcs(r.num_nodes());
  for (int i = 0; i < r.num_nodes(); ++i) in_arcs[i] = order.in_arcs(i);

  while (residual[idx.x] > kPositivity) {
    if (out.iterations++ >= cap) break;
    Mapping m = empty_mapping(r);
    std::set<int> cover{idx.x};
    int root_u = smallest_positive(residual, idx.y[order.root]);
    if (root_u < 0) break;
    m.nodes[order.root] = root_u;
    std::vector<bool> edge_done(r.num_edges(), false);
    std::deque<int> queue{order.root};
    bool stuck = false;
    while (!queue.empty() && !stuck) {
      int i = queue.front();
      queue.pop_front();
      const int u = m.nodes[i];
      cover.insert(idx.y[i][u]);
      for (std::size_t b = 0; b < lo.bags[i].size() && !stuck; ++b) {
        const EdgeBag& bag = lo.bags[i][b];
        const NovelBagBlock& block = idx.bags[i][b];
        // Smallest bag mapping with positive weight agreeing with fixed nodes.
        std::int64_t chosen = -1;
        for (std::int64_t a = 0; a < block.space.size() && chosen < 0; ++a) {
          if (residual[block.gamma[u][a]] <= kPositivity) continue;
          bool consistent = true;
          for (int l : bag.labels) {
            if (m.nodes[l] >= 0 && m.nodes[l] != block.space.value(a, l)) consistent = false;
          }
          if (consistent) chosen = a;
        }
        if (chosen < 0) {
          stuck = true;
          break;
        }
        cover.insert(block.gamma[u][chosen]);
        for (int l : bag.labels) m.nodes[l] = block.space.value(chosen, l);

        for (int e : bag.arcs) {
          const OrderedArc& arc = order.arcs[e];
          const int j = arc.head;
          std::int64_t copy_index = idx.edges[e].space.encode(m.nodes);
          if (copy_index < 0) throw DecompositionError("label mapping outside allowed nodes");
          const NovelCopy& copy = idx.edges[e].copies[copy_index];
          const auto& head_y = arc.reversed ? copy.y_tail : copy.y_head;
          std::optional<int> end_at;
          if (m.nodes[j] >= 0) end_at = m.nodes[j];
          auto path = find_connectivity_path(s, residual, copy.z, head_y, u,
                                             arc.reversed ? SearchDirection::kReverse : SearchDirection::kForward,
                                             end_at);
          int end = path.empty() ? u : (arc.reversed ? s.edge(path.front()).tail : s.edge(path.back()).head);
          m.nodes[j] = end;
          const auto& edge = r.edge(e);
          cover.insert(copy.x);
          cover.insert(copy.y_tail[m.nodes[edge.tail]]);
          cover.insert(copy.y_head[m.nodes[edge.head]]);
          for (int se : path) cover.insert(copy.z[se]);
          m.edges[e] = std::move(path);
          edge_done[e] = true;
          if (std::all_of(in_arcs[j].begin(), in_arcs[j].end(), [&](int a) { return edge_done[a]; })) {
            queue.push_back(j);
          }
        }
      }
    }
    if (stuck) {
      if (residual[idx.x] <= kResidualTolerance) break;
      throw DecompositionError("decomposition stuck at request '" + r.id() + "'");
    }
    for (int i = 0; i < r.num_nodes(); ++i) {
      if (m.nodes[i] < 0) throw DecompositionError("extraction left node " + r.node_id(i) + " unmapped");
    }
    for (int e = 0; e < r.num_edges(); ++e) {
      if (!edge_done[e]) throw DecompositionError("extraction left edge " + r.edge_label(e) + " unmapped");
    }
    if (cover.count(-1)) throw DecompositionError("extraction used a variable that does not exist");
    extract(s, r, cover, idx.a, std::move(m), residual, out);
  }
  finish(r, residual, idx.x, out);
  return out;
}

std::vector<double> fractional_allocation(const Substrate& s, const Request& r,
                                          const ConvexDecomposition& d) {
  std::vector<double> total(s.num_resources(), 0.0);
  for (const auto& entry : d.entries) {
    auto alloc = compute_allocations(s, r, entry.mapping);
    for (int res = 0; res < alloc.size(); ++res) total[res] += entry.weight * alloc[res];
  }
  return total;
}

DecompositionReport verify_decomposition(const Substrate& s, const Request& r, const ConvexDecomposition& d,
                                         const RequestLpSlice& slice, double tolerance) {
  DecompositionReport report;
  report.completeness_gap = std::abs(d.total_weight() - slice.x);
  report.complete = report.completeness_gap <= tolerance;
  report.mappings_valid = true;
  for (const auto& entry : d.entries) {
    auto check = check_valid_mapping(s, r, entry.mapping);
    if (!check.valid || !(entry.weight > 0.0)) {
      report.mappings_valid = false;
      report.first_invalid = check.valid ? "non-positive weight" : check.violation;
      break;
    }
  }
  report.max_allocation_excess = 0.0;
  if (report.mappings_valid) {
    auto alloc = fractional_allocation(s, r, d);
    for (int res = 0; res < s.num_resources(); ++res) {
      double lp = res < static_cast<int>(slice.a.size()) ? slice.a[res] : 0.0;
      report.max_allocation_excess = std::max(report.max_allocation_excess, alloc[res] - lp);
    }
  }
  report.allocations_dominated = report.mappings_valid && report.max_allocation_excess <= tolerance;
  return report;
}

std::vector<NaiveConflict> detect_naive_cycle_conflict(const Substrate& s, const Request& r, int root,
                                                       const McfRequestIndex& idx,
                                                       const std::vector<double>& values) {
  ExtractionOrder order = build_extraction_order(r, root);
  std::vector<NaiveConflict> results;
  for (int root_u = 0; root_u < s.num_nodes(); ++root_u) {
    if (value_of(values, idx.y[root][root_u]) <= kPositivity) continue;
    NaiveConflict result;
    result.root_location = root_u;
    std::vector<int> placed(r.num_nodes(), -1);
    placed[root] = root_u;
    std::deque<int> queue{root};
    while (!queue.empty() && !result.conflict) {
      int i = queue.front();
      queue.pop_front();
      for (int e : order.out_arcs(i)) {
        const OrderedArc& arc = order.arcs[e];
        auto path = find_connectivity_path(s, values, idx.z[e], idx.y[arc.head], placed[i],
                                           arc.reversed ? SearchDirection::kReverse : SearchDirection::kForward);
        int end = path.empty() ? placed[i] : (arc.reversed ? s.edge(path.front()).tail : s.edge(path.back()).head);
        if (placed[arc.head] >= 0) {
          if (placed[arc.head] != end) {
            result.conflict = true;
            result.node = arc.head;
            result.first = placed[arc.head];
            result.second = end;
            result.edge = e;
            break;
          }
          continue;
        }
        placed[arc.head] = end;
        queue.push_back(arc.head);
      }
    }
    results.push_back(result);
  }
  return results;
}

}  // namespace vnep
