// Bundled LP backend on top of HiGHS.

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wunused-parameter"
#pragma GCC diagnostic ignored "-Wunused-variable"
#include "Highs.h"
#pragma GCC diagnostic pop
#include "vnep/lp_model.hpp"

namespace vnep {

namespace {

class HighsSolver : public LpSolver {
 public:
  explicit HighsSolver(bool interior_point) : interior_point_(interior_point) {}

  std::string name() const override { return interior_point_ ? "highs-ipm" : "highs"; }

  LpSolution solve(const LpModel& model) override {
    const int n = model.num_variables();
    const int m = model.num_constraints();
    HighsLp lp;
    lp.num_col_ = n;
    lp.num_row_ = m;
    lp.sense_ = model.sense() == Sense::kMaximize ? ObjSense::kMaximize : ObjSense::kMinimize;
    lp.offset_ = 0.0;
    lp.col_cost_.resize(n);
    lp.col_lower_.resize(n);
    lp.col_upper_.resize(n);
    for (int v = 0; v < n; ++v) {
      const auto& var = model.variable(v);
      lp.col_cost_[v] = var.objective;
      lp.col_lower_[v] = var.lower <= -kInfinity ? -kHighsInf : var.lower;
      lp.col_upper_[v] = var.upper >= kInfinity ? kHighsInf : var.upper;
    }
    lp.row_lower_.resize(m);
    lp.row_upper_.resize(m);
    std::vector<std::vector<std::pair<int, double>>> columns(n);
    for (int c = 0; c < m; ++c) {
      const auto& con = model.constraints()[c];
      switch (con.relation) {
        case Relation::kLessEqual:
          lp.row_lower_[c] = -kHighsInf;
          lp.row_upper_[c] = con.rhs;
          break;
        case Relation::kGreaterEqual:
          lp.row_lower_[c] = con.rhs;
          lp.row_upper_[c] = kHighsInf;
          break;
        case Relation::kEqual:
          lp.row_lower_[c] = con.rhs;
          lp.row_upper_[c] = con.rhs;
          break;
      }
      for (const auto& t : con.terms) columns[t.var].emplace_back(c, t.coef);
    }
    lp.a_matrix_.format_ = MatrixFormat::kColwise;
    lp.a_matrix_.num_col_ = n;
    lp.a_matrix_.num_row_ = m;
    lp.a_matrix_.start_.assign(1, 0);
    for (int v = 0; v < n; ++v) {
      for (auto [row, coef] : columns[v]) {
        lp.a_matrix_.index_.push_back(row);
        lp.a_matrix_.value_.push_back(coef);
      }
      lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
    }

    Highs highs;
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("threads", 1);
    highs.setOptionValue("random_seed", 0);
    highs.setOptionValue("primal_feasibility_tolerance", 1e-9);
    highs.setOptionValue("dual_feasibility_tolerance", 1e-9);
    highs.setOptionValue("solver", interior_point_ ? "ipm" : "simplex");
    if (interior_point_) highs.setOptionValue("run_crossover", "on");

    LpSolution sol;
    if (highs.passModel(std::move(lp)) == HighsStatus::kError) {
      sol.message = "model rejected by HiGHS";
      return sol;
    }
    if (n == 0) {
      // Nothing to optimise; all rows must hold at the origin.
      sol.status = model.max_violation({}) <= 1e-9 ? LpStatus::kOptimal : LpStatus::kInfeasible;
      return sol;
    }
    highs.run();
    HighsModelStatus status = highs.getModelStatus();
    switch (status) {
      case HighsModelStatus::kOptimal: sol.status = LpStatus::kOptimal; break;
      case HighsModelStatus::kInfeasible: sol.status = LpStatus::kInfeasible; break;
      case HighsModelStatus::kUnbounded: sol.status = LpStatus::kUnbounded; break;
      case HighsModelStatus::kUnboundedOrInfeasible: {
        // Resolve the ambiguity with a zero objective feasibility run.
        Highs probe;
        probe.setOptionValue("output_flag", false);
        probe.setOptionValue("threads", 1);
        HighsLp copy = highs.getLp();
        std::fill(copy.col_cost_.begin(), copy.col_cost_.end(), 0.0);
        probe.passModel(std::move(copy));
        probe.run();
        sol.status = probe.getModelStatus() == HighsModelStatus::kOptimal ? LpStatus::kUnbounded
                                                                          : LpStatus::kInfeasible;
        break;
      }
      default: sol.status = LpStatus::kError; break;
    }
    sol.message = highs.modelStatusToString(status);
    if (sol.status != LpStatus::kOptimal) return sol;

    sol.values = highs.getSolution().col_value;
    // Values sit within the declared bounds up to solver tolerance; snap them.
    for (int v = 0; v < n; ++v) {
      const auto& var = model.variable(v);
      sol.values[v] = std::clamp(sol.values[v], var.lower, var.upper) + 0.0;  // no -0
    }
    sol.objective = model.objective_value(sol.values);
    return sol;
  }

 private:
  bool interior_point_;
};

}  // namespace

std::unique_ptr<LpSolver> make_highs_solver(bool interior_point) {
  return std::make_unique<HighsSolver>(interior_point);
}

}  // namespace vnep
