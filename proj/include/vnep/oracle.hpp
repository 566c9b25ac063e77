#pragma once

// Exact machinery for tiny instances: every valid mapping, and the
// enumerative LP / IP over them.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vnep/lp_model.hpp"
#include "vnep/mcf_formulation.hpp"

namespace vnep {

inline constexpr std::int64_t kDefaultEnumerationCap = 100000;

struct MappingEnumeration {
  std::string request_id;
  std::vector<Mapping> mappings;  // lexicographic by placement, then paths
  bool truncated = false;
};

/// Simple allowed paths only.
MappingEnumeration enumerate_valid_mappings(const Substrate& substrate, const Request& request,
                                            std::int64_t cap = kDefaultEnumerationCap);

enum class Relaxation { kLp, kIp };
const char* to_string(Relaxation relaxation);

struct EnumerativeResult {
  LpStatus status = LpStatus::kError;
  double objective = 0.0;
  // Per request: (mapping index, weight) with nonzero weight.
  std::vector<std::vector<std::pair<int, double>>> assignment;
  std::vector<std::int64_t> mapping_counts;
};

/// Throws std::invalid_argument for truncated enumerations. Cost variant with
/// an unembeddable request reports kInfeasible.
EnumerativeResult solve_enumerative(const Substrate& substrate, std::span<const Request> requests,
                                    const std::vector<MappingEnumeration>& enumerations, Objective variant,
                                    Relaxation relaxation, const std::string& backend = "");

}  // namespace vnep
