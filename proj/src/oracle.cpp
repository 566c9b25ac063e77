#include "vnep/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace vnep {

const char* to_string(Relaxation relaxation) { return relaxation == Relaxation::kLp ? "lp" : "ip"; }

namespace {

// All simple paths from `from` to `to` over the allowed edges, DFS in edge
// index order. The empty path when from == to.
std::vector<std::vector<int>> simple_paths(const Substrate& s, const std::vector<int>& allowed, int from, int to) {
  std::vector<std::vector<int>> out;
  if (from == to) {
    out.push_back({});
    return out;
  }
  std::vector<bool> usable(s.num_edges(), false);
  for (int se : allowed) usable[se] = true;
  std::vector<bool> on_path(s.num_nodes(), false);
  std::vector<int> path;
  std::function<void(int)> dfs = [&](int v) {
    if (v == to) {
      out.push_back(path);
      return;
    }
    for (int se : s.out_edges(v)) {
      int w = s.edge(se).head;
      if (!usable[se] || on_path[w]) continue;
      on_path[w] = true;
      path.push_back(se);
      dfs(w);
      path.pop_back();
      on_path[w] = false;
    }
  };
  on_path[from] = true;
  dfs(from);
  return out;
}

}  // namespace

MappingEnumeration enumerate_valid_mappings(const Substrate& s, const Request& r, std::int64_t cap) {
  MappingEnumeration out;
  out.request_id = r.id();
  Mapping m;
  m.nodes.assign(r.num_nodes(), -1);
  m.edges.assign(r.num_edges(), {});

  std::function<bool(int)> route;  // returns false once the cap is hit
  std::vector<std::vector<std::vector<int>>> options(r.num_edges());
  route = [&](int e) {
    if (e == r.num_edges()) {
      if (static_cast<std::int64_t>(out.mappings.size()) >= cap) {
        out.truncated = true;
        return false;
      }
      if (check_valid_mapping(s, r, m).valid) out.mappings.push_back(m);
      return true;
    }
    for (const auto& p : options[e]) {
      m.edges[e] = p;
      if (!route(e + 1)) return false;
    }
    return true;
  };
  std::function<bool(int)> place = [&](int i) {
    if (i == r.num_nodes()) {
      for (int e = 0; e < r.num_edges(); ++e) {
        const auto& edge = r.edge(e);
        options[e] = simple_paths(s, edge.allowed, m.nodes[edge.tail], m.nodes[edge.head]);
        if (options[e].empty()) return true;
      }
      return route(0);
    }
    for (int u : r.node(i).allowed) {
      m.nodes[i] = u;
      if (!place(i + 1)) return false;
    }
    return true;
  };
  place(0);
  return out;
}

EnumerativeResult solve_enumerative(const Substrate& s, std::span<const Request> requests,
                                    const std::vector<MappingEnumeration>& enums, Objective variant,
                                    Relaxation relaxation, const std::string& backend) {
  if (enums.size() != requests.size()) throw std::invalid_argument("one enumeration per request required");
  for (const auto& e : enums) {
    if (e.truncated) throw std::invalid_argument("enumeration of '" + e.request_id + "' is truncated");
  }
  const bool profit = variant == Objective::kProfit;
  const std::size_t n = requests.size();
  EnumerativeResult result;
  result.assignment.resize(n);
  std::vector<std::vector<AllocationVector>> alloc(n);
  std::vector<std::vector<double>> value(n);  // profit or cost per mapping
  for (std::size_t r = 0; r < n; ++r) {
    result.mapping_counts.push_back(static_cast<std::int64_t>(enums[r].mappings.size()));
    for (const auto& m : enums[r].mappings) {
      alloc[r].push_back(compute_allocations(s, requests[r], m));
      value[r].push_back(profit ? requests[r].profit() : mapping_cost(s, requests[r], m));
    }
  }

  if (relaxation == Relaxation::kLp) {
    LpModel lp;
    lp.set_sense(profit ? Sense::kMaximize : Sense::kMinimize);
    std::vector<std::vector<int>> vars(n);
    std::vector<std::vector<LpTerm>> capacity(s.num_resources());
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<LpTerm> row;
      for (std::size_t k = 0; k < enums[r].mappings.size(); ++k) {
        int v = lp.add_variable("f_" + lp_name(requests[r].id()) + "_" + std::to_string(k), 0.0, 1.0, value[r][k]);
        vars[r].push_back(v);
        row.push_back({v, 1.0});
        for (int res = 0; res < s.num_resources(); ++res) {
          if (alloc[r][k][res] != 0.0) capacity[res].push_back({v, alloc[r][k][res]});
        }
      }
      lp.add_constraint("choice_" + lp_name(requests[r].id()), row, profit ? Relation::kLessEqual : Relation::kEqual,
                        1.0);
    }
    for (int res = 0; res < s.num_resources(); ++res) {
      if (capacity[res].empty()) continue;
      lp.add_constraint("cap_" + std::to_string(res), capacity[res], Relation::kLessEqual, s.resource_capacity(res));
    }
    LpSolution sol = solve(lp, backend);
    result.status = sol.status;
    if (!sol.optimal()) return result;
    result.objective = sol.objective;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < vars[r].size(); ++k) {
        double f = sol.values[vars[r][k]];
        if (f > 1e-9) result.assignment[r].push_back({static_cast<int>(k), f});
      }
    }
    return result;
  }

  // Integer version: depth-first over requests with capacity pruning and an
  // optimistic bound from the best value each remaining request can add.
  std::vector<double> best_rest(n + 1, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double best = profit ? 0.0 : std::numeric_limits<double>::infinity();
    for (double v : value[r]) best = profit ? std::max(best, v) : std::min(best, v);
    if (!profit && value[r].empty()) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    best_rest[r] = best_rest[r + 1] + best;
  }
  std::vector<double> load(s.num_resources(), 0.0);
  std::vector<int> pick(n, -1), best_pick;
  double best_value = profit ? -1.0 : std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double)> dfs = [&](std::size_t r, double acc) {
    if (profit ? acc + best_rest[r] <= best_value + 1e-12 : acc + best_rest[r] >= best_value - 1e-12) return;
    if (r == n) {
      best_value = acc;
      best_pick = pick;
      return;
    }
    for (std::size_t k = 0; k < alloc[r].size(); ++k) {
      bool fits = true;
      for (int res = 0; res < s.num_resources() && fits; ++res) {
        fits = load[res] + alloc[r][k][res] <= s.resource_capacity(res) + kFeasibilityTolerance;
      }
      if (!fits) continue;
      for (int res = 0; res < s.num_resources(); ++res) load[res] += alloc[r][k][res];
      pick[r] = static_cast<int>(k);
      dfs(r + 1, acc + value[r][k]);
      pick[r] = -1;
      for (int res = 0; res < s.num_resources(); ++res) load[res] -= alloc[r][k][res];
    }
    if (profit) dfs(r + 1, acc);
  };
  dfs(0, 0.0);
  if (!profit && best_value == std::numeric_limits<double>::infinity()) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.objective = best_value;
  for (std::size_t r = 0; r < best_pick.size(); ++r) {
    if (best_pick[r] >= 0) result.assignment[r].push_back({best_pick[r], 1.0});
  }
  return result;
}

}  // namespace vnep
