#pragma once

// Turning per-request LP solutions into convex combinations of valid
// mappings: the tree decomposition over the MCF LP and the general one over
// the novel LP.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vnep/extraction.hpp"
#include "vnep/mcf_formulation.hpp"
#include "vnep/novel_formulation.hpp"

namespace vnep {

/// "variable > 0" threshold. Residuals below it are clamped to zero.
inline constexpr double kPositivity = 1e-9;
/// Entries lighter than this are decremented but not reported.
inline constexpr double kWeightFloor = 1e-9;
/// Residual embedding weight we are willing to leave behind.
inline constexpr double kResidualTolerance = 1e-6;

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecompositionEntry {
  double weight = 0.0;
  Mapping mapping;
};

struct ConvexDecomposition {
  std::vector<DecompositionEntry> entries;
  int iterations = 0;

  double total_weight() const;
};

enum class SearchDirection {
  kForward,  // along edge orientation, start is the tail mapping
  kReverse,  // against it, start is the head mapping
};

/// Breadth-first search over substrate edges with value(z) > kPositivity.
/// Forward: from `start` to the first node w with value(target_y[w]) >
/// kPositivity. Reverse: walks in-edges back to such a node. The start node
/// is tested first, giving the empty path. With `required_end` only that
/// node is accepted. The returned path is in edge orientation, i.e. it runs
/// from the tail mapping to the head mapping.
/// Throws DecompositionError("flow conservation violated") if nothing is found.
std::vector<int> find_connectivity_path(const Substrate& substrate, const std::vector<double>& values,
                                        const std::vector<int>& z, const std::vector<int>& target_y,
                                        int start, SearchDirection direction,
                                        std::optional<int> required_end = std::nullopt);

/// Requires a tree request. `values` is the full LP solution vector.
ConvexDecomposition decompose_mcf_tree(const Substrate& substrate, const Request& request,
                                       const ExtractionOrder& order, const McfRequestIndex& index,
                                       const std::vector<double>& values);

ConvexDecomposition decompose_novel(const Substrate& substrate, const Request& request,
                                    const LabeledExtractionOrder& order, const NovelRequestIndex& index,
                                    const std::vector<double>& values);

struct DecompositionReport {
  bool complete = false;
  double completeness_gap = 0.0;  // |sum f - x|
  bool allocations_dominated = false;
  double max_allocation_excess = 0.0;  // max over resources of sum f*A - a
  bool mappings_valid = false;
  std::string first_invalid;

  bool ok() const { return complete && allocations_dominated && mappings_valid; }
};

DecompositionReport verify_decomposition(const Substrate& substrate, const Request& request,
                                         const ConvexDecomposition& decomposition,
                                         const RequestLpSlice& slice, double tolerance = 1e-6);

/// Per-resource sum of f * A(m).
std::vector<double> fractional_allocation(const Substrate& substrate, const Request& request,
                                          const ConvexDecomposition& decomposition);

/// Outcome of running the tree extraction on a cyclic request with the root
/// placed at one substrate node.
struct NaiveConflict {
  int root_location = -1;
  bool conflict = false;
  int node = -1;           // request node placed twice
  int first = -1;          // its first location
  int second = -1;         // the location a later edge demands
  int edge = -1;           // request edge that hit the contradiction
};

/// Tree extraction applied blindly to a (cyclic) request over an MCF
/// solution: BFS order from `root`, every arc's path search runs without a
/// fixed end. One result per substrate node with positive root placement.
std::vector<NaiveConflict> detect_naive_cycle_conflict(const Substrate& substrate, const Request& request,
                                                       int root, const McfRequestIndex& index,
                                                       const std::vector<double>& values);

}  // namespace vnep
