#pragma once

// Randomized rounding of convex decompositions: profit variant with
// preprocessing, cost variant with pruning of expensive mappings, and the
// capacity-violation bounds both use.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vnep/decomposition.hpp"

namespace vnep {

inline constexpr int kDefaultMaxTries = 128;

struct RoundingBounds {
  double epsilon = 0.0;
  double delta_nodes = 0.0;
  double delta_edges = 0.0;
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 1.0;
};

/// Closed forms; `num_types` is the number of types requests actually use.
RoundingBounds bounds_from_parameters(Objective variant, double epsilon, double delta_nodes,
                                      double delta_edges, int num_substrate_nodes, int num_types);

/// Throws std::domain_error when some demand exceeds its capacity (epsilon > 1).
RoundingBounds compute_bounds(const Instance& instance, const ResourceStats& stats, Objective variant);

struct PreprocessResult {
  Instance kept;
  std::vector<std::string> dropped;  // request ids
};

/// Drops requests that cannot be fully embedded even when alone. Throws
/// std::runtime_error when a solo LP does not solve to optimality.
PreprocessResult preprocess_profit(const Instance& instance, const std::string& backend = "");

/// Entry index per request (-1 for none). The uniform draw for request r in
/// trial t comes from its own mt19937_64 stream seeded by mixing
/// (seed, t, r) through SplitMix64.
std::vector<int> sample_selection(const std::vector<ConvexDecomposition>& decompositions, std::uint64_t seed,
                                  int trial);

struct TryRecord {
  int trial = 0;
  double objective = 0.0;
  double max_node_utilization = 0.0;
  double max_edge_utilization = 0.0;
  bool accepted = false;
};

struct TriCriteriaCheck {
  bool ok = false;
  double objective_margin = 0.0;  // >= 0 when the objective target is met
  double node_margin = 0.0;       // beta - max node utilization
  double edge_margin = 0.0;       // gamma - max edge utilization
};

TriCriteriaCheck check_tri_criteria(double objective, const FeasibilityReport& loads, const RoundingBounds& bounds,
                                    double lp_optimum, Objective variant);

struct RoundedSolution {
  std::vector<int> selected_entry;  // per request, -1 if not embedded
  std::vector<std::optional<Mapping>> selection;
  double objective = 0.0;
  FeasibilityReport loads;
  RoundingBounds bounds;
  int tries_used = 0;
  std::uint64_t seed = 0;
  bool accepted = false;
  std::vector<TryRecord> tries;
};

RoundedSolution round_profit(const Substrate& substrate, std::span<const Request> requests,
                             const std::vector<ConvexDecomposition>& decompositions, const RoundingBounds& bounds,
                             double lp_optimum, int max_tries, std::uint64_t seed);

struct PruneResult {
  std::vector<int> kept;            // surviving entry indices
  std::vector<double> weights;      // renormalized weights of the kept entries
  double weighted_cost = 0.0;       // WC before pruning
  double surviving_weight = 0.0;    // before renormalization
};

/// Weight/cost form of the pruning step. Throws std::invalid_argument when
/// the weights do not sum to 1 (1e-6) and std::logic_error if less than half
/// the weight survives.
PruneResult prune_weights(const std::vector<double>& weights, const std::vector<double>& costs);

struct PrunedDecomposition {
  ConvexDecomposition decomposition;
  double weighted_cost = 0.0;
  double surviving_weight = 0.0;
};

PrunedDecomposition prune_costly_mappings(const Substrate& substrate, const Request& request,
                                          const ConvexDecomposition& decomposition);

/// Expects pruned decompositions. Every sample embeds every request; the 2x
/// cost cap is asserted on each of them (std::logic_error).
RoundedSolution round_cost(const Substrate& substrate, std::span<const Request> requests,
                           const std::vector<ConvexDecomposition>& decompositions, const RoundingBounds& bounds,
                           double lp_cost, int max_tries, std::uint64_t seed);

std::string tries_to_csv(const std::vector<TryRecord>& tries);

}  // namespace vnep
