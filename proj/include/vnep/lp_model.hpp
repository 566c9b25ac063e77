#pragma once

// Solver-independent LP model plus a small registry of solver backends.

#include <memory>
#include <string>
#include <vector>

namespace vnep {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

inline constexpr double kInfinity = 1e30;

struct LpTerm {
  int var;
  double coef;
};

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  double objective = 0.0;
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  Relation relation = Relation::kEqual;
  double rhs = 0.0;
};

class LpModel {
 public:
  int add_variable(std::string name, double lower, double upper, double objective = 0.0);
  // Terms on the same variable are merged; zero coefficients dropped. Throws
  // std::invalid_argument for undeclared variables.
  int add_constraint(std::string name, std::vector<LpTerm> terms, Relation relation, double rhs);
  void set_objective(int var, double coef);
  void set_sense(Sense sense) { sense_ = sense; }

  Sense sense() const { return sense_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const LpVariable& variable(int v) const { return variables_.at(v); }
  const std::vector<LpVariable>& variables() const { return variables_; }
  const std::vector<LpConstraint>& constraints() const { return constraints_; }

  double objective_value(const std::vector<double>& values) const;
  // Largest bound or row violation of the given point.
  double max_violation(const std::vector<double>& values) const;
  // CPLEX LP text format; names sanitized to [A-Za-z0-9_].
  std::string to_lp_format() const;

 private:
  Sense sense_ = Sense::kMaximize;
  std::vector<LpVariable> variables_;
  std::vector<LpConstraint> constraints_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kError };
const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kError;
  double objective = 0.0;
  std::vector<double> values;
  std::string message;
  double solve_seconds = 0.0;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual std::string name() const = 0;
  virtual LpSolution solve(const LpModel& model) = 0;
};

/// Empty name selects default_solver_name(). Throws std::invalid_argument
/// for unknown backends.
std::unique_ptr<LpSolver> make_solver(const std::string& name = "");
std::vector<std::string> available_solvers();
/// $VNEP_SOLVER if set, otherwise "highs".
std::string default_solver_name();

LpSolution solve(const LpModel& model, const std::string& backend = "");

}  // namespace vnep
