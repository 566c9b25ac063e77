#include "vnep/mcf_formulation.hpp"

#include <set>
#include <string>

namespace vnep {

const char* to_string(Objective objective) {
  return objective == Objective::kProfit ? "profit" : "cost";
}

std::string lp_name(std::string_view id) {
  std::string out;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    out += ok ? c : '_';
  }
  return out;
}

std::vector<bool> touchable_resources(const Substrate& s, const Request& r) {
  std::vector<bool> touch(s.num_resources(), false);
  for (const auto& node : r.nodes()) {
    for (int u : node.allowed) {
      int res = s.node_resource_index(node.type, u);
      if (res >= 0) touch[res] = true;
    }
  }
  for (const auto& edge : r.edges()) {
    for (int se : edge.allowed) touch[s.edge_resource(se)] = true;
  }
  return touch;
}

RequestLpSlice slice_of(const McfRequestIndex& index, const std::vector<double>& values) {
  RequestLpSlice slice;
  slice.x = value_of(values, index.x);
  for (int var : index.a) slice.a.push_back(value_of(values, var));
  return slice;
}

McfModel build_mcf(const Instance& inst, Objective objective) {
  const Substrate& s = inst.substrate;
  McfModel out;
  LpModel& lp = out.model;
  lp.set_sense(objective == Objective::kProfit ? Sense::kMaximize : Sense::kMinimize);
  std::vector<std::vector<LpTerm>> capacity_terms(s.num_resources());

  for (const Request& r : inst.requests) {
    const std::string rn = lp_name(r.id());
    McfRequestIndex idx;
    idx.x = lp.add_variable("x_" + rn, 0.0, 1.0, objective == Objective::kProfit ? r.profit() : 0.0);
    if (objective == Objective::kCost) lp.add_constraint("embed_all_" + rn, {{idx.x, 1.0}}, Relation::kEqual, 1.0);

    // Node mapping variables, only for allowed placements.
    idx.y.assign(r.num_nodes(), std::vector<int>(s.num_nodes(), -1));
    for (int i = 0; i < r.num_nodes(); ++i) {
      std::vector<LpTerm> row{{idx.x, -1.0}};
      for (int u : r.node(i).allowed) {
        idx.y[i][u] = lp.add_variable("y_" + rn + "_" + lp_name(r.node_id(i)) + "_" + lp_name(s.node_id(u)), 0.0, 1.0);
        row.push_back({idx.y[i][u], 1.0});
      }
      lp.add_constraint("node_embed_" + rn + "_" + lp_name(r.node_id(i)), row, Relation::kEqual, 0.0);
    }

    // Flow variables per request edge over its allowed substrate edges.
    idx.z.assign(r.num_edges(), std::vector<int>(s.num_edges(), -1));
    for (int e = 0; e < r.num_edges(); ++e) {
      const auto& edge = r.edge(e);
      const std::string en = lp_name(r.node_id(edge.tail)) + "_" + lp_name(r.node_id(edge.head));
      std::set<int> relevant;
      for (int se : edge.allowed) {
        const auto& sed = s.edge(se);
        idx.z[e][se] = lp.add_variable("z_" + rn + "_" + en + "_" + lp_name(s.node_id(sed.tail)) + "_" +
                                           lp_name(s.node_id(sed.head)),
                                       0.0, 1.0);
        relevant.insert(sed.tail);
        relevant.insert(sed.head);
      }
      for (int u : r.node(edge.tail).allowed) relevant.insert(u);
      for (int u : r.node(edge.head).allowed) relevant.insert(u);
      for (int u : relevant) {
        std::vector<LpTerm> row;
        for (int se : s.out_edges(u)) {
          if (idx.z[e][se] >= 0) row.push_back({idx.z[e][se], 1.0});
        }
        for (int se : s.in_edges(u)) {
          if (idx.z[e][se] >= 0) row.push_back({idx.z[e][se], -1.0});
        }
        if (idx.y[edge.tail][u] >= 0) row.push_back({idx.y[edge.tail][u], -1.0});
        if (idx.y[edge.head][u] >= 0) row.push_back({idx.y[edge.head][u], 1.0});
        lp.add_constraint("flow_" + rn + "_" + en + "_" + lp_name(s.node_id(u)), row, Relation::kEqual, 0.0);
      }
    }

    // Load accounting.
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
          if (idx.z[e][se] >= 0) row.push_back({idx.z[e][se], r.edge(e).demand});
        }
      }
      lp.add_constraint("load_" + rn + "_" + lp_name(s.resource_label(res)), row, Relation::kEqual, 0.0);
    }
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
