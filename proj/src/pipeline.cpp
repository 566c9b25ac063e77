#include "vnep/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace vnep {

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 5;

Json bounds_json(const RoundingBounds& b) {
  return {{"epsilon", b.epsilon}, {"delta_nodes", b.delta_nodes}, {"delta_edges", b.delta_edges},
          {"alpha", b.alpha},     {"beta", b.beta},               {"gamma", b.gamma}};
}

}  // namespace

Json RunReport::to_json() const {
  Json doc;
  doc["tool_version"] = kToolVersion;
  doc["variant"] = to_string(variant);
  doc["solver"] = backend;
  doc["seed"] = seed;
  Json reqs = Json::array();
  for (const auto& r : requests) {
    Json j{{"id", r.id}, {"kept", r.kept}};
    if (r.kept) {
      j["root"] = r.root;
      j["width"] = r.width;
      j["lp_x"] = r.lp_x;
      j["decomposition"] = {{"entries", r.entries},
                            {"total_weight", r.total_weight},
                            {"completeness_gap", r.verification.completeness_gap},
                            {"max_allocation_excess", r.verification.max_allocation_excess},
                            {"verified", r.verification.ok()}};
      if (variant == Objective::kCost) {
        j["weighted_cost"] = r.weighted_cost;
        j["surviving_weight"] = r.surviving_weight;
      }
    }
    reqs.push_back(j);
  }
  doc["requests"] = reqs;
  doc["lp"] = {{"status", to_string(lp_status)},
               {"objective", lp_objective},
               {"variables", lp_variables},
               {"constraints", lp_constraints}};
  if (include_timings) doc["lp"]["solve_seconds"] = lp_seconds;
  doc["rounding"] = {{"accepted", rounding.accepted},
                     {"tries", rounding.tries_used},
                     {"objective", rounding.objective},
                     {"recomputed_objective", recomputed_objective},
                     {"max_node_utilization", rounding.loads.max_node_utilization},
                     {"max_edge_utilization", rounding.loads.max_edge_utilization},
                     {"bounds", bounds_json(rounding.bounds)},
                     {"selection", selection}};
  return doc;
}

RunReport run_pipeline(const Instance& instance, const PipelineConfig& config) {
  RunReport report;
  report.variant = config.variant;
  report.backend = config.backend.empty() ? default_solver_name() : config.backend;
  report.seed = config.seed;
  report.include_timings = config.include_timings;

  auto validation = validate_instance(instance.substrate, instance.requests);
  if (!validation.ok()) throw PipelineError("validate", validation.issues.front(), kExitValidation);

  Instance working{instance.substrate, {}};
  if (config.variant == Objective::kProfit) {
    try {
      working = preprocess_profit(instance, report.backend).kept;
    } catch (const std::exception& e) {
      throw PipelineError("lp", std::string("preprocessing failed: ") + e.what());
    }
  } else {
    working.requests = instance.requests;
  }

  std::vector<LabeledExtractionOrder> orders;
  try {
    for (const auto& r : working.requests) orders.push_back(min_width_order_search(r, OrderSearch::kPerRootBfs));
  } catch (const std::exception& e) {
    throw PipelineError("width", e.what());
  }

  NovelModel model;
  try {
    model = build_novel(working, orders, config.variant, config.variable_budget);
  } catch (const VariableBudgetError& e) {
    throw PipelineError("lp", e.what());
  }
  report.lp_variables = model.model.num_variables();
  report.lp_constraints = model.model.num_constraints();
  LpSolution sol = solve(model.model, report.backend);
  report.lp_status = sol.status;
  report.lp_seconds = sol.solve_seconds;
  if (sol.status == LpStatus::kInfeasible) throw PipelineError("lp", "LP infeasible", kExitInfeasible);
  if (!sol.optimal()) throw PipelineError("lp", std::string("LP ended with status ") + to_string(sol.status));
  report.lp_objective = sol.objective;

  const Substrate& s = working.substrate;
  std::vector<ConvexDecomposition> decs;
  std::vector<RequestReport> kept_reports;
  for (std::size_t k = 0; k < working.requests.size(); ++k) {
    const Request& r = working.requests[k];
    RequestReport rr;
    rr.id = r.id();
    rr.root = orders[k].order.root;
    rr.width = orders[k].width;
    auto slice = slice_of(model.requests[k], sol.values);
    rr.lp_x = slice.x;
    try {
      decs.push_back(decompose_novel(s, r, orders[k], model.requests[k], sol.values));
    } catch (const DecompositionError& e) {
      throw PipelineError("decompose", e.what(), kExitInternal);
    }
    rr.verification = verify_decomposition(s, r, decs.back(), slice);
    if (!rr.verification.ok()) {
      throw PipelineError("decompose", "verification failed for request '" + r.id() + "'", kExitInternal);
    }
    rr.entries = static_cast<int>(decs.back().entries.size());
    rr.total_weight = decs.back().total_weight();
    kept_reports.push_back(std::move(rr));
  }

  RoundingBounds bounds;
  try {
    bounds = compute_bounds(working, resource_stats(s, working.requests), config.variant);
  } catch (const std::domain_error& e) {
    throw PipelineError("round", e.what());
  }
  if (config.alpha) bounds.alpha = *config.alpha;
  if (config.beta) bounds.beta = *config.beta;
  if (config.gamma) bounds.gamma = *config.gamma;

  try {
    if (config.variant == Objective::kProfit) {
      report.rounding = round_profit(s, working.requests, decs, bounds, sol.objective, config.max_tries, config.seed);
    } else {
      std::vector<ConvexDecomposition> pruned;
      for (std::size_t k = 0; k < decs.size(); ++k) {
        auto p = prune_costly_mappings(s, working.requests[k], decs[k]);
        kept_reports[k].weighted_cost = p.weighted_cost;
        kept_reports[k].surviving_weight = p.surviving_weight;
        pruned.push_back(std::move(p.decomposition));
      }
      report.rounding = round_cost(s, working.requests, pruned, bounds, sol.objective, config.max_tries, config.seed);
    }
  } catch (const std::logic_error& e) {
    throw PipelineError("round", e.what(), kExitInternal);
  } catch (const std::exception& e) {
    throw PipelineError("round", e.what());
  }

  report.selection = Json::object();
  report.recomputed_objective = 0.0;
  for (std::size_t k = 0; k < working.requests.size(); ++k) {
    const Request& r = working.requests[k];
    const auto& m = report.rounding.selection[k];
    if (!m) {
      report.selection[r.id()] = nullptr;
      continue;
    }
    report.selection[r.id()] = mapping_to_json(s, r, *m);
    report.recomputed_objective += config.variant == Objective::kProfit ? r.profit() : mapping_cost(s, r, *m);
  }
  if (std::abs(report.recomputed_objective - report.rounding.objective) >
      1e-6 * std::max(1.0, std::abs(report.rounding.objective))) {
    throw PipelineError("round", "reported objective does not match the selection", kExitInternal);
  }

  // Reports list every input request in input order.
  std::size_t next = 0;
  for (const auto& r : instance.requests) {
    if (next < kept_reports.size() && kept_reports[next].id == r.id()) {
      report.requests.push_back(std::move(kept_reports[next++]));
    } else {
      RequestReport rr;
      rr.id = r.id();
      rr.kept = false;
      report.requests.push_back(std::move(rr));
    }
  }
  return report;
}

std::string tries_to_long_csv(const std::vector<TryRecord>& tries) {
  std::ostringstream out;
  out.precision(17);
  out << "trial,metric,value\n";
  for (const auto& t : tries) {
    out << t.trial << ",objective," << t.objective << '\n';
    out << t.trial << ",max_node_utilization," << t.max_node_utilization << '\n';
    out << t.trial << ",max_edge_utilization," << t.max_edge_utilization << '\n';
    out << t.trial << ",accepted," << (t.accepted ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace vnep
