#include "vnep/novel_formulation.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace vnep {

MappingSpace::MappingSpace(const Request& request, std::vector<int> labels)
    : labels_(std::move(labels)) {
  for (int l : labels_) domains_.push_back(request.node(l).allowed);
  stride_.assign(labels_.size(), 1);
  size_ = 1;
  for (int k = static_cast<int>(labels_.size()) - 1; k >= 0; --k) {
    stride_[k] = size_;
    size_ *= static_cast<std::int64_t>(domains_[k].size());
  }
}

std::vector<int> MappingSpace::decode(std::int64_t index) const {
  std::vector<int> out(labels_.size());
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    out[k] = domains_[k][(index / stride_[k]) % static_cast<std::int64_t>(domains_[k].size())];
  }
  return out;
}

int MappingSpace::value(std::int64_t index, int label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] == label) {
      return domains_[k][(index / stride_[k]) % static_cast<std::int64_t>(domains_[k].size())];
    }
  }
  return -1;
}

std::int64_t MappingSpace::encode(const std::vector<int>& node_map) const {
  std::int64_t index = 0;
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    const auto& dom = domains_[k];
    int u = node_map.at(labels_[k]);
    auto it = std::lower_bound(dom.begin(), dom.end(), u);
    if (u < 0 || it == dom.end() || *it != u) return -1;
    index += stride_[k] * (it - dom.begin());
  }
  return index;
}

VariableBudgetError::VariableBudgetError(std::int64_t required, std::int64_t budget)
    : std::runtime_error("novel formulation needs " + std::to_string(required) +
                         " variables, budget is " + std::to_string(budget)),
      required_(required) {}

namespace {

// Index of mapping `index` of `from` restricted to the labels of `to`.
std::int64_t project(const MappingSpace& from, std::int64_t index, const MappingSpace& to,
                     std::vector<int>& scratch) {
  auto vals = from.decode(index);
  for (std::size_t k = 0; k < vals.size(); ++k) scratch[from.labels()[k]] = vals[k];
  std::int64_t out = to.encode(scratch);
  for (int l : from.labels()) scratch[l] = -1;
  return out;
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

// Original-orientation endpoint of request edge e that is the head in the order.
int order_head(const Request& r, const LabeledExtractionOrder& lo, int e) {
  return lo.order.arcs[e].reversed ? r.edge(e).tail : r.edge(e).head;
}

}  // namespace

std::int64_t novel_variable_count(const Substrate& s, const Request& r,
                                  const LabeledExtractionOrder& lo) {
  std::int64_t count = 1;
  for (const auto& node : r.nodes()) count += static_cast<std::int64_t>(node.allowed.size());
  for (int e = 0; e < r.num_edges(); ++e) {
    const auto& edge = r.edge(e);
    MappingSpace space(r, lo.arc_labels[e]);
    int h = order_head(r, lo, e);
    std::int64_t tail_vars = static_cast<std::int64_t>(r.node(edge.tail).allowed.size());
    std::int64_t head_vars = static_cast<std::int64_t>(r.node(edge.head).allowed.size());
    if (contains(lo.arc_labels[e], h)) (h == edge.head ? head_vars : tail_vars) = 1;
    count += space.size() * (1 + tail_vars + head_vars + static_cast<std::int64_t>(edge.allowed.size()));
  }
  for (int i = 0; i < r.num_nodes(); ++i) {
    for (const auto& bag : lo.bags[i]) {
      count += static_cast<std::int64_t>(r.node(i).allowed.size()) * MappingSpace(r, bag.labels).size();
    }
  }
  auto touch = touchable_resources(s, r);
  count += std::count(touch.begin(), touch.end(), true);
  return count;
}

RequestLpSlice slice_of(const NovelRequestIndex& index, const std::vector<double>& values) {
  RequestLpSlice slice;
  slice.x = value_of(values, index.x);
  for (int var : index.a) slice.a.push_back(value_of(values, var));
  return slice;
}

NovelModel build_novel(const Instance& inst, const std::vector<LabeledExtractionOrder>& orders,
                       Objective objective, std::optional<std::int64_t> variable_budget) {
  const Substrate& s = inst.substrate;
  if (orders.size() != inst.requests.size()) {
    throw std::invalid_argument("one extraction order per request required");
  }
  if (variable_budget) {
    std::int64_t total = 0;
    for (std::size_t k = 0; k < orders.size(); ++k) {
      total += novel_variable_count(s, inst.requests[k], orders[k]);
    }
    if (total > *variable_budget) throw VariableBudgetError(total, *variable_budget);
  }

  NovelModel out;
  LpModel& lp = out.model;
  lp.set_sense(objective == Objective::kProfit ? Sense::kMaximize : Sense::kMinimize);
  std::vector<std::vector<LpTerm>> capacity_terms(s.num_resources());

  for (std::size_t ridx = 0; ridx < inst.requests.size(); ++ridx) {
    const Request& r = inst.requests[ridx];
    const LabeledExtractionOrder& lo = orders[ridx];
    if (lo.order.num_nodes != r.num_nodes() ||
        static_cast<int>(lo.order.arcs.size()) != r.num_edges()) {
      throw std::invalid_argument("extraction order does not match request '" + r.id() + "'");
    }
    const std::string rn = lp_name(r.id());
    const int first_var = lp.num_variables();
    std::vector<int> scratch(r.num_nodes(), -1);
    NovelRequestIndex idx;

    idx.x = lp.add_variable("x_" + rn, 0.0, 1.0, objective == Objective::kProfit ? r.profit() : 0.0);
    if (objective == Objective::kCost) {
      lp.add_constraint("embed_all_" + rn, {{idx.x, 1.0}}, Relation::kEqual, 1.0);
    }

    // Global node variables, coupled to x for every request node.
    idx.y.assign(r.num_nodes(), std::vector<int>(s.num_nodes(), -1));
    for (int i = 0; i < r.num_nodes(); ++i) {
      std::vector<LpTerm> row{{idx.x, -1.0}};
      for (int u : r.node(i).allowed) {
        idx.y[i][u] = lp.add_variable("y_" + rn + "_" + lp_name(r.node_id(i)) + "_" + lp_name(s.node_id(u)), 0.0, 1.0);
        row.push_back({idx.y[i][u], 1.0});
      }
      lp.add_constraint("node_embed_" + rn + "_" + lp_name(r.node_id(i)), row, Relation::kEqual, 0.0);
    }

    // Sub-LP copies, one per request edge and label mapping.
    idx.edges.resize(r.num_edges());
    for (int e = 0; e < r.num_edges(); ++e) {
      const auto& edge = r.edge(e);
      NovelEdgeBlock& block = idx.edges[e];
      block.space = MappingSpace(r, lo.arc_labels[e]);
      const int h = order_head(r, lo, e);
      const bool head_is_label = contains(lo.arc_labels[e], h);
      const std::string en = lp_name(r.node_id(edge.tail)) + "_" + lp_name(r.node_id(edge.head));

      std::set<int> relevant;
      for (int se : edge.allowed) {
        relevant.insert(s.edge(se).tail);
        relevant.insert(s.edge(se).head);
      }
      for (int u : r.node(edge.tail).allowed) relevant.insert(u);
      for (int u : r.node(edge.head).allowed) relevant.insert(u);

      for (std::int64_t m = 0; m < block.space.size(); ++m) {
        const std::string cn = en + "_m" + std::to_string(m);
        NovelCopy copy;
        copy.x = lp.add_variable("sx_" + rn + "_" + cn, 0.0, 1.0);
        copy.y_tail.assign(s.num_nodes(), -1);
        copy.y_head.assign(s.num_nodes(), -1);
        copy.z.assign(s.num_edges(), -1);
        // The order head of a labeled edge is pinned to its label value.
        const int pinned = head_is_label ? block.space.value(m, h) : -1;
        for (int side = 0; side < 2; ++side) {
          const int node = side == 0 ? edge.tail : edge.head;
          auto& vars = side == 0 ? copy.y_tail : copy.y_head;
          std::vector<LpTerm> row{{copy.x, -1.0}};
          for (int u : r.node(node).allowed) {
            if (node == h && pinned >= 0 && u != pinned) continue;
            vars[u] = lp.add_variable("sy_" + rn + "_" + cn + "_" + lp_name(r.node_id(node)) + "_" +
                                          lp_name(s.node_id(u)),
                                      0.0, 1.0);
            row.push_back({vars[u], 1.0});
          }
          lp.add_constraint("sub_embed_" + rn + "_" + cn + "_" + lp_name(r.node_id(node)), row,
                            Relation::kEqual, 0.0);
        }
        for (int se : edge.allowed) {
          copy.z[se] = lp.add_variable("sz_" + rn + "_" + cn + "_" + lp_name(s.node_id(s.edge(se).tail)) +
                                           "_" + lp_name(s.node_id(s.edge(se).head)),
                                       0.0, 1.0);
        }
        for (int u : relevant) {
          std::vector<LpTerm> row;
          for (int se : s.out_edges(u)) {
            if (copy.z[se] >= 0) row.push_back({copy.z[se], 1.0});
          }
          for (int se : s.in_edges(u)) {
            if (copy.z[se] >= 0) row.push_back({copy.z[se], -1.0});
          }
          if (copy.y_tail[u] >= 0) row.push_back({copy.y_tail[u], -1.0});
          if (copy.y_head[u] >= 0) row.push_back({copy.y_head[u], 1.0});
          if (row.empty()) continue;
          lp.add_constraint("sub_flow_" + rn + "_" + cn + "_" + lp_name(s.node_id(u)), row, Relation::kEqual, 0.0);
        }
        block.copies.push_back(std::move(copy));
      }

      // Global node variables distribute over the copies of every incident edge.
      for (int side = 0; side < 2; ++side) {
        const int node = side == 0 ? edge.tail : edge.head;
        for (int u : r.node(node).allowed) {
          std::vector<LpTerm> row{{idx.y[node][u], 1.0}};
          for (const auto& copy : block.copies) {
            int var = side == 0 ? copy.y_tail[u] : copy.y_head[u];
            if (var >= 0) row.push_back({var, -1.0});
          }
          lp.add_constraint("distribute_" + rn + "_" + en + "_" + lp_name(r.node_id(node)) + "_" +
                                lp_name(s.node_id(u)),
                            row, Relation::kEqual, 0.0);
        }
      }
    }

    // Sub-LP node variable of edge e at request node i.
    auto sub_y = [&](int e, std::int64_t m, int i, int u) {
      const auto& copy = idx.edges[e].copies[m];
      return r.edge(e).tail == i ? copy.y_tail[u] : copy.y_head[u];
    };

    // Bag variables and their coupling to outgoing and incoming edges.
    idx.bags.resize(r.num_nodes());
    for (int i = 0; i < r.num_nodes(); ++i) {
      const std::string in = lp_name(r.node_id(i));
      for (std::size_t b = 0; b < lo.bags[i].size(); ++b) {
        const EdgeBag& bag = lo.bags[i][b];
        NovelBagBlock block;
        block.space = MappingSpace(r, bag.labels);
        block.gamma.assign(s.num_nodes(), {});
        for (int u : r.node(i).allowed) {
          for (std::int64_t a = 0; a < block.space.size(); ++a) {
            block.gamma[u].push_back(lp.add_variable(
                "g_" + rn + "_" + in + "_b" + std::to_string(b) + "_" + lp_name(s.node_id(u)) + "_a" + std::to_string(a),
                0.0, 1.0));
          }
        }

        // Outgoing arcs of the bag.
        for (int e : bag.arcs) {
          const MappingSpace& es = idx.edges[e].space;
          std::vector<std::vector<std::int64_t>> by_edge_map(es.size());
          for (std::int64_t a = 0; a < block.space.size(); ++a) {
            by_edge_map[project(block.space, a, es, scratch)].push_back(a);
          }
          for (std::int64_t me = 0; me < es.size(); ++me) {
            for (int u : r.node(i).allowed) {
              std::vector<LpTerm> row;
              int var = sub_y(e, me, i, u);
              if (var >= 0) row.push_back({var, 1.0});
              for (auto a : by_edge_map[me]) row.push_back({block.gamma[u][a], -1.0});
              lp.add_constraint("bag_out_" + rn + "_" + in + "_b" + std::to_string(b) + "_e" + std::to_string(e) +
                                    "_m" + std::to_string(me) + "_" + lp_name(s.node_id(u)),
                                row, Relation::kEqual, 0.0);
            }
          }
        }

        // Incoming arcs of i agree with the bag on their shared labels.
        for (int e = 0; e < r.num_edges(); ++e) {
          if (lo.order.arcs[e].head != i) continue;
          MappingSpace shared(r, intersect(lo.arc_labels[e], bag.labels));
          const MappingSpace& es = idx.edges[e].space;
          std::vector<std::vector<std::int64_t>> edge_by(shared.size()), bag_by(shared.size());
          for (std::int64_t me = 0; me < es.size(); ++me) {
            edge_by[project(es, me, shared, scratch)].push_back(me);
          }
          for (std::int64_t a = 0; a < block.space.size(); ++a) {
            bag_by[project(block.space, a, shared, scratch)].push_back(a);
          }
          for (std::int64_t m = 0; m < shared.size(); ++m) {
            for (int u : r.node(i).allowed) {
              std::vector<LpTerm> row;
              for (auto me : edge_by[m]) {
                int var = sub_y(e, me, i, u);
                if (var >= 0) row.push_back({var, 1.0});
              }
              for (auto a : bag_by[m]) row.push_back({block.gamma[u][a], -1.0});
              lp.add_constraint("bag_in_" + rn + "_" + in + "_b" + std::to_string(b) + "_e" + std::to_string(e) +
                                    "_m" + std::to_string(m) + "_" + lp_name(s.node_id(u)),
                                row, Relation::kEqual, 0.0);
            }
          }
        }
        idx.bags[i].push_back(std::move(block));
      }
    }

    // Loads: nodes from global y, edges from every sub-LP flow.
    auto touch = touchable_resources(s, r);
    idx.a.assign(s.num_resources(), -1);
    for (int res = 0; res < s.num_resources(); ++res) {
      if (!touch[res]) continue;
      double cost = objective == Objective::kCost ? s.resource_cost(res) : 0.0;
      idx.a[res] = lp.add_variable("a_" + rn + "_" + lp_name(s.resource_label(res)), 0.0, kInfinity, cost);
      capacity_terms[res].push_back({idx.a[res], 1.0});
      std::vector<LpTerm> row{{idx.a[res], -1.0}};
      if (s.is_node_resource(res)) {
        const auto& nr = s.node_resources()[res];
        for (int i = 0; i < r.num_nodes(); ++i) {
          if (r.node(i).type == nr.type && idx.y[i][nr.node] >= 0) {
            row.push_back({idx.y[i][nr.node], r.node(i).demand});
          }
        }
      } else {
        int se = res - s.num_node_resources();
        for (int e = 0; e < r.num_edges(); ++e) {
          for (const auto& copy : idx.edges[e].copies) {
            if (copy.z[se] >= 0) row.push_back({copy.z[se], r.edge(e).demand});
          }
        }
      }
      lp.add_constraint("load_" + rn + "_" + lp_name(s.resource_label(res)), row, Relation::kEqual, 0.0);
    }
    idx.num_variables = lp.num_variables() - first_var;
    out.requests.push_back(std::move(idx));
  }

  for (int res = 0; res < s.num_resources(); ++res) {
    if (capacity_terms[res].empty()) continue;
    lp.add_constraint("cap_" + lp_name(s.resource_label(res)), capacity_terms[res], Relation::kLessEqual,
                      s.resource_capacity(res));
  }
  return out;
}

}  // namespace vnep
