#pragma once

// Classic multi-commodity flow relaxation of the VNEP.

#include <vector>

#include "vnep/graph_core.hpp"
#include "vnep/lp_model.hpp"

namespace vnep {

enum class Objective { kProfit, kCost };
const char* to_string(Objective objective);

/// LP variable ids of one request; -1 where a variable does not exist
/// (disallowed node/edge, or a resource the request can never touch).
struct McfRequestIndex {
  int x = -1;
  std::vector<std::vector<int>> y;  // [request node][substrate node]
  std::vector<std::vector<int>> z;  // [request edge][substrate edge]
  std::vector<int> a;               // [resource]
};

struct McfModel {
  LpModel model;
  std::vector<McfRequestIndex> requests;
};

McfModel build_mcf(const Instance& instance, Objective objective);

/// Value of variable `var` in `values`, 0 for absent variables.
inline double value_of(const std::vector<double>& values, int var) {
  return var < 0 ? 0.0 : values[var];
}

/// Per-request summary of an LP solution used by verification and reporting.
struct RequestLpSlice {
  double x = 0.0;
  std::vector<double> a;  // [resource]
};

RequestLpSlice slice_of(const McfRequestIndex& index, const std::vector<double>& values);

/// Resources (by id) the request can touch: node resources of allowed
/// placements and allowed substrate edges.
std::vector<bool> touchable_resources(const Substrate& substrate, const Request& request);

/// Sanitized name fragment for LP variable names.
std::string lp_name(std::string_view id);

}  // namespace vnep
