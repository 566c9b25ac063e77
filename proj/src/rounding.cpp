#include "vnep/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vnep {

RoundingBounds bounds_from_parameters(Objective variant, double epsilon, double delta_nodes, double delta_edges,
                                      int num_substrate_nodes, int num_types) {
  // ln of counts below 1 would be negative or undefined; those cases have
  // nothing to union-bound over.
  auto safe_ln = [](double n) { return n > 1.0 ? std::log(n) : 0.0; };
  const double base = variant == Objective::kProfit ? 1.0 : 2.0;
  RoundingBounds b;
  b.epsilon = epsilon;
  b.delta_nodes = delta_nodes;
  b.delta_edges = delta_edges;
  b.alpha = variant == Objective::kProfit ? 1.0 / 3.0 : 2.0;
  b.beta = base + epsilon * std::sqrt(2.0 * delta_nodes * safe_ln(double(num_substrate_nodes) * num_types));
  b.gamma = base + epsilon * std::sqrt(2.0 * delta_edges * safe_ln(num_substrate_nodes));
  return b;
}

RoundingBounds compute_bounds(const Instance& inst, const ResourceStats& stats, Objective variant) {
  const Substrate& s = inst.substrate;
  double epsilon = 0.0;
  std::vector<double> delta(s.num_resources(), 0.0);
  for (std::size_t r = 0; r < inst.requests.size(); ++r) {
    for (int res = 0; res < s.num_resources(); ++res) {
      double dmax = stats.d_max[r][res];
      if (dmax <= 0.0) continue;
      epsilon = std::max(epsilon, dmax / s.resource_capacity(res));
      double ratio = stats.a_max_upper[r][res] / dmax;
      delta[res] += ratio * ratio;
    }
  }
  if (epsilon > 1.0 + kFeasibilityTolerance) {
    throw std::domain_error("demand exceeds capacity scaling assumption (epsilon = " + std::to_string(epsilon) + ")");
  }
  double delta_nodes = 0.0, delta_edges = 0.0;
  for (int res = 0; res < s.num_resources(); ++res) {
    (s.is_node_resource(res) ? delta_nodes : delta_edges) =
        std::max(s.is_node_resource(res) ? delta_nodes : delta_edges, delta[res]);
  }
  std::set<int> types;
  for (const auto& r : inst.requests) {
    for (const auto& node : r.nodes()) types.insert(node.type);
  }
  return bounds_from_parameters(variant, epsilon, delta_nodes, delta_edges, s.num_nodes(),
                                static_cast<int>(types.size()));
}

PreprocessResult preprocess_profit(const Instance& inst, const std::string& backend) {
  PreprocessResult out{Instance{inst.substrate, {}}, {}};
  for (const Request& r : inst.requests) {
    Instance solo{inst.substrate, {r}};
    auto order = min_width_order_search(r, OrderSearch::kPerRootBfs);
    NovelModel model = build_novel(solo, {order}, Objective::kProfit);
    LpSolution sol = solve(model.model, backend);
    if (!sol.optimal()) {
      throw std::runtime_error("solo LP for request '" + r.id() + "' ended with status " + to_string(sol.status));
    }
    if (value_of(sol.values, model.requests[0].x) < 1.0 - kResidualTolerance) {
      out.dropped.push_back(r.id());
    } else {
      out.kept.requests.push_back(r);
    }
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Evaluated {
  std::vector<int> picks;
  double objective = 0.0;
  FeasibilityReport loads;
};

Evaluated evaluate(const Substrate& s, std::span<const Request> requests,
                   const std::vector<ConvexDecomposition>& decs, std::vector<int> picks, bool cost) {
  Evaluated ev;
  std::vector<PlacedMapping> placed;
  for (std::size_t r = 0; r < requests.size(); ++r) {
    if (picks[r] < 0) continue;
    const Mapping& m = decs[r].entries[picks[r]].mapping;
    placed.push_back({&requests[r], &m});
    ev.objective += cost ? mapping_cost(s, requests[r], m) : requests[r].profit();
  }
  ev.loads = collection_feasible(s, placed);
  ev.picks = std::move(picks);
  return ev;
}

RoundedSolution assemble(const std::vector<ConvexDecomposition>& decs, const Evaluated& ev,
                         const RoundingBounds& bounds, std::uint64_t seed) {
  RoundedSolution sol;
  sol.selected_entry = ev.picks;
  for (std::size_t r = 0; r < decs.size(); ++r) {
    if (ev.picks[r] < 0) {
      sol.selection.push_back(std::nullopt);
    } else {
      sol.selection.push_back(decs[r].entries[ev.picks[r]].mapping);
    }
  }
  sol.objective = ev.objective;
  sol.loads = ev.loads;
  sol.bounds = bounds;
  sol.seed = seed;
  return sol;
}

bool within_slack(const FeasibilityReport& loads, const RoundingBounds& b) {
  return loads.max_node_utilization <= b.beta + kFeasibilityTolerance &&
         loads.max_edge_utilization <= b.gamma + kFeasibilityTolerance;
}

}  // namespace

std::vector<int> sample_selection(const std::vector<ConvexDecomposition>& decs, std::uint64_t seed, int trial) {
  std::vector<int> picks(decs.size(), -1);
  for (std::size_t r = 0; r < decs.size(); ++r) {
    std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(trial)) ^ r);
    std::mt19937_64 rng(key);
    double u = uniform01(rng);
    double acc = 0.0;
    for (std::size_t k = 0; k < decs[r].entries.size(); ++k) {
      acc += decs[r].entries[k].weight;
      if (u < acc) {
        picks[r] = static_cast<int>(k);
        break;
      }
    }
  }
  return picks;
}

TriCriteriaCheck check_tri_criteria(double objective, const FeasibilityReport& loads, const RoundingBounds& b,
                                    double lp_optimum, Objective variant) {
  TriCriteriaCheck c;
  c.objective_margin = variant == Objective::kProfit ? objective - b.alpha * lp_optimum
                                                     : b.alpha * lp_optimum - objective;
  c.node_margin = b.beta - loads.max_node_utilization;
  c.edge_margin = b.gamma - loads.max_edge_utilization;
  c.ok = c.objective_margin >= -kFeasibilityTolerance && c.node_margin >= -kFeasibilityTolerance &&
         c.edge_margin >= -kFeasibilityTolerance;
  return c;
}

RoundedSolution round_profit(const Substrate& s, std::span<const Request> requests,
                             const std::vector<ConvexDecomposition>& decs, const RoundingBounds& bounds,
                             double lp_optimum, int max_tries, std::uint64_t seed) {
  if (decs.size() != requests.size()) throw std::invalid_argument("one decomposition per request required");
  std::vector<TryRecord> tries;
  std::optional<Evaluated> best_feasible, best_any;
  for (int t = 0; t < std::max(1, max_tries); ++t) {
    Evaluated ev = evaluate(s, requests, decs, sample_selection(decs, seed, t), false);
    bool ok = check_tri_criteria(ev.objective, ev.loads, bounds, lp_optimum, Objective::kProfit).ok;
    tries.push_back({t, ev.objective, ev.loads.max_node_utilization, ev.loads.max_edge_utilization, ok});
    if (ok) {
      RoundedSolution sol = assemble(decs, ev, bounds, seed);
      sol.accepted = true;
      sol.tries_used = t + 1;
      sol.tries = std::move(tries);
      return sol;
    }
    if (within_slack(ev.loads, bounds) && (!best_feasible || ev.objective > best_feasible->objective)) {
      best_feasible = ev;
    }
    if (!best_any || ev.objective > best_any->objective) best_any = ev;
  }
  RoundedSolution sol = assemble(decs, best_feasible ? *best_feasible : *best_any, bounds, seed);
  sol.tries_used = static_cast<int>(tries.size());
  sol.tries = std::move(tries);
  return sol;
}

PruneResult prune_weights(const std::vector<double>& weights, const std::vector<double>& costs) {
  if (weights.size() != costs.size()) throw std::invalid_argument("weights and costs differ in length");
  double total = 0.0;
  PruneResult out;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    total += weights[k];
    out.weighted_cost += weights[k] * costs[k];
  }
  if (std::abs(total - 1.0) > kResidualTolerance) {
    throw std::invalid_argument("decomposition weight " + std::to_string(total) + " is not 1");
  }
  // Relative slack keeps equal-cost entries from being dropped by rounding.
  const double threshold = 2.0 * out.weighted_cost * (1.0 + 1e-12) + 1e-12;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (costs[k] > threshold) continue;
    out.kept.push_back(static_cast<int>(k));
    out.surviving_weight += weights[k];
  }
  if (out.surviving_weight < 0.5 - kResidualTolerance) {
    throw std::logic_error("pruning kept only weight " + std::to_string(out.surviving_weight));
  }
  for (int k : out.kept) out.weights.push_back(weights[k] / out.surviving_weight);
  return out;
}

PrunedDecomposition prune_costly_mappings(const Substrate& s, const Request& r, const ConvexDecomposition& d) {
  std::vector<double> weights, costs;
  for (const auto& e : d.entries) {
    weights.push_back(e.weight);
    costs.push_back(mapping_cost(s, r, e.mapping));
  }
  PruneResult p = prune_weights(weights, costs);
  PrunedDecomposition out;
  out.weighted_cost = p.weighted_cost;
  out.surviving_weight = p.surviving_weight;
  out.decomposition.iterations = d.iterations;
  for (std::size_t k = 0; k < p.kept.size(); ++k) {
    out.decomposition.entries.push_back({p.weights[k], d.entries[p.kept[k]].mapping});
  }
  return out;
}

RoundedSolution round_cost(const Substrate& s, std::span<const Request> requests,
                           const std::vector<ConvexDecomposition>& decs, const RoundingBounds& bounds,
                           double lp_cost, int max_tries, std::uint64_t seed) {
  if (decs.size() != requests.size()) throw std::invalid_argument("one decomposition per request required");
  for (std::size_t r = 0; r < decs.size(); ++r) {
    if (decs[r].entries.empty()) {
      throw std::runtime_error("request '" + requests[r].id() + "' has no mapping to embed");
    }
  }
  const double cap = 2.0 * lp_cost + kResidualTolerance * std::max(1.0, lp_cost);
  std::vector<TryRecord> tries;
  std::optional<Evaluated> cheapest;
  for (int t = 0; t < std::max(1, max_tries); ++t) {
    auto picks = sample_selection(decs, seed, t);
    // Weights sum to one; a draw past the accumulated total is float dust.
    for (std::size_t r = 0; r < picks.size(); ++r) {
      if (picks[r] < 0) picks[r] = static_cast<int>(decs[r].entries.size()) - 1;
    }
    Evaluated ev = evaluate(s, requests, decs, std::move(picks), true);
    if (ev.objective > cap) {
      throw std::logic_error("sampled cost " + std::to_string(ev.objective) + " exceeds twice the LP cost");
    }
    bool ok = check_tri_criteria(ev.objective, ev.loads, bounds, lp_cost, Objective::kCost).ok;
    tries.push_back({t, ev.objective, ev.loads.max_node_utilization, ev.loads.max_edge_utilization, ok});
    if (ok) {
      RoundedSolution sol = assemble(decs, ev, bounds, seed);
      sol.accepted = true;
      sol.tries_used = t + 1;
      sol.tries = std::move(tries);
      return sol;
    }
    if (!cheapest || ev.objective < cheapest->objective) cheapest = ev;
  }
  RoundedSolution sol = assemble(decs, *cheapest, bounds, seed);
  sol.tries_used = static_cast<int>(tries.size());
  sol.tries = std::move(tries);
  return sol;
}

std::string tries_to_csv(const std::vector<TryRecord>& tries) {
  std::ostringstream out;
  out.precision(17);
  out << "trial,objective,max_node_utilization,max_edge_utilization,accepted\n";
  for (const auto& t : tries) {
    out << t.trial << ',' << t.objective << ',' << t.max_node_utilization << ',' << t.max_edge_utilization << ','
        << (t.accepted ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace vnep
