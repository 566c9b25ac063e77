#pragma once

// End-to-end run: width, novel LP, decomposition, rounding, verification.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vnep/instance_io.hpp"
#include "vnep/rounding.hpp"

namespace vnep {

inline constexpr const char* kToolVersion = "1.0.0";

/// A failed pipeline stage. Stages: "validate", "width", "lp", "decompose",
/// "round".
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& cause, int exit_code = 1)
      : std::runtime_error(stage + ": " + cause), stage_(std::move(stage)), exit_code_(exit_code) {}
  const std::string& stage() const { return stage_; }
  // Process exit code the CLI should use.
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct PipelineConfig {
  Objective variant = Objective::kProfit;
  std::string backend;  // empty: default backend
  std::uint64_t seed = 0;
  int max_tries = kDefaultMaxTries;
  std::optional<std::int64_t> variable_budget;
  std::optional<double> alpha, beta, gamma;
  bool include_timings = false;
};

struct RequestReport {
  std::string id;
  bool kept = true;  // false when profit preprocessing dropped it
  int root = -1;
  int width = 0;
  double lp_x = 0.0;
  int entries = 0;
  double total_weight = 0.0;
  double weighted_cost = 0.0;     // cost variant only
  double surviving_weight = 1.0;  // cost variant only
  DecompositionReport verification;
};

struct RunReport {
  Objective variant = Objective::kProfit;
  std::string backend;
  std::uint64_t seed = 0;
  std::vector<RequestReport> requests;
  LpStatus lp_status = LpStatus::kError;
  double lp_objective = 0.0;
  int lp_variables = 0;
  int lp_constraints = 0;
  double lp_seconds = 0.0;
  RoundedSolution rounding;
  double recomputed_objective = 0.0;
  bool include_timings = false;
  Json selection;  // request id -> mapping JSON or null

  Json to_json() const;
};

/// Throws PipelineError naming the failed stage.
RunReport run_pipeline(const Instance& instance, const PipelineConfig& config);

/// Tidy long-format per-try CSV: trial,metric,value.
std::string tries_to_long_csv(const std::vector<TryRecord>& tries);

}  // namespace vnep
