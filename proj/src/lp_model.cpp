#include "vnep/lp_model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vnep {

std::unique_ptr<LpSolver> make_highs_solver(bool interior_point);

int LpModel::add_variable(std::string name, double lower, double upper, double objective) {
  variables_.push_back({std::move(name), lower, upper, objective});
  return num_variables() - 1;
}

int LpModel::add_constraint(std::string name, std::vector<LpTerm> terms, Relation relation,
                            double rhs) {
  std::map<int, double> merged;
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw std::invalid_argument("constraint '" + name + "' references undeclared variable");
    }
    merged[t.var] += t.coef;
  }
  LpConstraint c{std::move(name), {}, relation, rhs};
  for (auto [v, coef] : merged) {
    if (coef != 0.0) c.terms.push_back({v, coef});
  }
  constraints_.push_back(std::move(c));
  return num_constraints() - 1;
}

void LpModel::set_objective(int var, double coef) { variables_.at(var).objective = coef; }

double LpModel::objective_value(const std::vector<double>& values) const {
  double obj = 0.0;
  for (int v = 0; v < num_variables(); ++v) obj += variables_[v].objective * values.at(v);
  return obj;
}

double LpModel::max_violation(const std::vector<double>& values) const {
  double worst = 0.0;
  for (int v = 0; v < num_variables(); ++v) {
    worst = std::max(worst, variables_[v].lower - values.at(v));
    if (variables_[v].upper < kInfinity) worst = std::max(worst, values.at(v) - variables_[v].upper);
  }
  for (const auto& c : constraints_) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * values.at(t.var);
    switch (c.relation) {
      case Relation::kLessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Relation::kGreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

namespace {

std::string sanitize(const std::string& name) {
  std::string out;
  for (char ch : name) {
    bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
              ch == '_';
    out += ok ? ch : '_';
  }
  if (out.empty() || (out[0] >= '0' && out[0] <= '9')) out = "n" + out;
  return out;
}

void write_terms(std::ostringstream& os, const std::vector<std::pair<double, std::string>>& terms) {
  if (terms.empty()) {
    os << " 0";
    return;
  }
  int on_line = 0;
  for (const auto& [coef, name] : terms) {
    os << (coef < 0 ? " - " : " + ") << std::abs(coef) << " " << name;
    if (++on_line % 8 == 0) os << "\n  ";
  }
}

}  // namespace

std::string LpModel::to_lp_format() const {
  std::ostringstream os;
  os.precision(17);
  // Suffix with the index so distinct names stay distinct after sanitizing.
  std::vector<std::string> names;
  for (int v = 0; v < num_variables(); ++v) {
    names.push_back(sanitize(variables_[v].name) + "_" + std::to_string(v));
  }
  os << (sense_ == Sense::kMaximize ? "Maximize" : "Minimize") << "\n obj:";
  std::vector<std::pair<double, std::string>> obj;
  for (int v = 0; v < num_variables(); ++v) {
    if (variables_[v].objective != 0.0) obj.emplace_back(variables_[v].objective, names[v]);
  }
  write_terms(os, obj);
  os << "\nSubject To\n";
  for (int c = 0; c < num_constraints(); ++c) {
    const auto& con = constraints_[c];
    os << " " << sanitize(con.name) << "_" << c << ":";
    std::vector<std::pair<double, std::string>> terms;
    for (const auto& t : con.terms) terms.emplace_back(t.coef, names[t.var]);
    write_terms(os, terms);
    const char* rel = con.relation == Relation::kLessEqual  ? "<="
                      : con.relation == Relation::kEqual    ? "="
                                                            : ">=";
    os << " " << rel << " " << con.rhs << "\n";
  }
  os << "Bounds\n";
  for (int v = 0; v < num_variables(); ++v) {
    const auto& var = variables_[v];
    os << " ";
    if (var.lower <= -kInfinity) {
      os << "-inf";
    } else {
      os << var.lower;
    }
    os << " <= " << names[v] << " <= ";
    if (var.upper >= kInfinity) {
      os << "+inf";
    } else {
      os << var.upper;
    }
    os << "\n";
  }
  os << "End\n";
  return os.str();
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kError: return "error";
  }
  return "error";
}

std::vector<std::string> available_solvers() { return {"highs", "highs-ipm"}; }

std::string default_solver_name() {
  const char* env = std::getenv("VNEP_SOLVER");
  if (env != nullptr && *env != '\0') return env;
  return "highs";
}

std::unique_ptr<LpSolver> make_solver(const std::string& name) {
  const std::string chosen = name.empty() ? default_solver_name() : name;
  if (chosen == "highs") return make_highs_solver(false);
  if (chosen == "highs-ipm") return make_highs_solver(true);
  throw std::invalid_argument("unknown LP solver backend '" + chosen + "'");
}

LpSolution solve(const LpModel& model, const std::string& backend) {
  auto solver = make_solver(backend);
  auto start = std::chrono::steady_clock::now();
  LpSolution sol = solver->solve(model);
  sol.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

}  // namespace vnep
