#include "possro/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "possro/error.hpp"

namespace possro {

namespace {

std::vector<double> nominal_row(const UncertainRow& row) {
  std::vector<double> a;
  a.reserve(row.size());
  for (const auto& fi : row.coefficients) a.push_back(fi.nominal());
  return a;
}

std::vector<LinearTerm> dot_terms(std::span<const double> coefs, const VarBlock& x) {
  std::vector<LinearTerm> terms;
  terms.reserve(coefs.size());
  for (std::size_t j = 0; j < coefs.size(); ++j) {
    if (coefs[j] != 0.0) terms.push_back({x[j], coefs[j]});
  }
  return terms;
}

void require_crisp(const UncertainInstance& instance, std::string_view model) {
  if (!instance.has_crisp_objective()) {
    throw std::invalid_argument(std::string(model) + " model needs a crisp objective");
  }
}

void require_nominal(const FuzzyGoal& goal) {
  if (!std::isfinite(goal.nominal_optimum)) {
    throw std::invalid_argument("nominal optimum c_hat was not supplied");
  }
  if (!(goal.tolerance >= 0.0)) throw DomainError("cost tolerance rho0 must be >= 0");
}

// Decision block with the bounds of X plus the polyhedral rows of X.
VarBlock add_decisions(LinearSystem& system, const UncertainInstance& instance) {
  instance.validate();
  const auto& set = instance.feasible_set;
  const VarBlock x = system.add_block(std::string(kDecisionBlock), instance.dimension());
  for (std::size_t j = 0; j < x.size; ++j) system.set_bounds(x[j], set.lower[j], set.upper[j]);
  for (std::size_t k = 0; k < set.matrix.size(); ++k) {
    system.add_constraint(dot_terms(set.matrix[k], x), Sense::kLessEqual, set.rhs[k], "X[" + std::to_string(k) + "]");
  }
  return x;
}

void add_nominal_rows(LinearSystem& system, const UncertainInstance& instance, const VarBlock& x) {
  for (std::size_t i = 0; i < instance.rows.size(); ++i) {
    const auto a = nominal_row(instance.rows[i]);
    system.add_constraint(dot_terms(a, x), Sense::kLessEqual, instance.rows[i].rhs.base(),
                          "nominal[" + std::to_string(i) + "]");
  }
}

// One dualized block per row with rhs chosen by the caller.
void add_protected_rows(LinearSystem& system, const UncertainInstance& instance, const VarBlock& x, double lambda,
                        const std::function<double(const UncertainRow&)>& rhs_of) {
  for (std::size_t i = 0; i < instance.rows.size(); ++i) {
    const std::string tag = "row" + std::to_string(i);
    auto lhs = dualize_budgeted_row(system, instance.rows[i], lambda, x, tag);
    system.add_constraint(std::move(lhs), Sense::kLessEqual, rhs_of(instance.rows[i]), tag);
  }
}

}  // namespace

double sum_of_largest(std::span<const double> values, int count) {
  if (count <= 0 || values.empty()) return 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(count), sorted.size());
  std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end(),
                    std::greater<>());
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) sum += sorted[j];
  return sum;
}

double worst_case_value(std::span<const FuzzyInterval> coefficients, int protection, std::span<const double> x,
                        double lambda) {
  check_level(lambda);
  if (coefficients.size() != x.size()) throw DomainError("x length does not match the row dimension");
  double nominal = 0.0;
  std::vector<double> deviations(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    nominal += coefficients[j].nominal() * x[j];
    deviations[j] = alpha_at(coefficients[j], lambda) * x[j];
  }
  return nominal + sum_of_largest(deviations, protection);
}

double worst_case_lhs(const UncertainRow& row, std::span<const double> x, double lambda) {
  return worst_case_value(row.coefficients, row.protection, x, lambda);
}

std::vector<LinearTerm> dualize_budgeted(LinearSystem& system, std::span<const FuzzyInterval> coefficients,
                                         int protection, double lambda, const VarBlock& x, std::string_view tag) {
  check_level(lambda);
  if (coefficients.size() != x.size) throw DomainError("row dimension does not match the decision block");
  std::vector<LinearTerm> lhs;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    if (coefficients[j].nominal() != 0.0) lhs.push_back({x[j], coefficients[j].nominal()});
  }
  if (protection == 0) return lhs;  // only the nominal constraint is protected

  const std::string name(tag);
  const VarRef w = system.add_variable(name + ".w");
  lhs.push_back({w, static_cast<double>(protection)});
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    const double half_width = alpha_at(coefficients[j], lambda);
    if (half_width == 0.0) continue;
    const VarRef p = system.add_variable(name + ".p[" + std::to_string(j) + "]");
    lhs.push_back({p, 1.0});
    system.add_constraint({{w, 1.0}, {p, 1.0}, {x[j], -half_width}}, Sense::kGreaterEqual, 0.0,
                          name + ".dual[" + std::to_string(j) + "]");
  }
  return lhs;
}

std::vector<LinearTerm> dualize_budgeted_row(LinearSystem& system, const UncertainRow& row, double lambda,
                                             const VarBlock& x, std::string_view tag) {
  return dualize_budgeted(system, row.coefficients, row.protection, lambda, x, tag);
}

double necessity_degree(const UncertainRow& row, std::span<const double> x, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");
  for (double v : x) {
    if (v < 0.0) throw DomainError("x must be nonnegative");
  }
  const double b = row.rhs.base();
  auto fits = [&](double lambda) { return worst_case_lhs(row, x, lambda) <= b; };
  if (fits(0.0)) return 1.0;
  if (!fits(1.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (fits(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 1.0 - hi;
}

LinearSystem build_nominal(const UncertainInstance& instance) {
  LinearSystem system;
  const VarBlock x = add_decisions(system, instance);
  add_nominal_rows(system, instance, x);
  system.set_objective(dot_terms(instance.nominal_costs(), x));
  return system;
}

LinearSystem build_robust(const UncertainInstance& instance, double lambda) {
  require_crisp(instance, "robust");
  check_level(lambda);
  LinearSystem system;
  const VarBlock x = add_decisions(system, instance);
  add_protected_rows(system, instance, x, lambda, [](const UncertainRow& r) { return r.rhs.base(); });
  system.set_objective(dot_terms(instance.nominal_costs(), x));
  return system;
}

LinearSystem build_light_robust(const UncertainInstance& instance, double c_hat, double rho0, SlackNorm norm) {
  require_crisp(instance, "light robust");
  require_nominal(FuzzyGoal{c_hat, rho0, 1.0});
  LinearSystem system;
  const VarBlock x = add_decisions(system, instance);
  const VarBlock gamma = system.add_block("gamma", instance.rows.size());
  for (std::size_t i = 0; i < instance.rows.size(); ++i) {
    const std::string tag = "row" + std::to_string(i);
    auto lhs = dualize_budgeted_row(system, instance.rows[i], 0.0, x, tag);
    lhs.push_back({gamma[i], -1.0});
    system.add_constraint(std::move(lhs), Sense::kLessEqual, instance.rows[i].rhs.base(), tag);
  }
  add_nominal_rows(system, instance, x);
  system.add_constraint(dot_terms(instance.nominal_costs(), x), Sense::kLessEqual, c_hat + rho0, "budget");

  if (norm == SlackNorm::kMax) {
    const VarRef t = system.add_variable("t");
    for (std::size_t i = 0; i < gamma.size; ++i) {
      system.add_constraint({{gamma[i], 1.0}, {t, -1.0}}, Sense::kLessEqual, 0.0, "norm[" + std::to_string(i) + "]");
    }
    system.set_objective({{t, 1.0}});
  } else {
    std::vector<LinearTerm> sum;
    for (std::size_t i = 0; i < gamma.size; ++i) sum.push_back({gamma[i], 1.0});
    system.set_objective(std::move(sum));
  }
  return system;
}

LinearSystem build_nec(const UncertainInstance& instance, const FuzzyGoal& goal, double lambda) {
  require_crisp(instance, "Nec");
  require_nominal(goal);
  check_level(lambda);
  LinearSystem system;
  const VarBlock x = add_decisions(system, instance);
  add_protected_rows(system, instance, x, lambda, [](const UncertainRow& r) { return r.rhs.base(); });
  system.add_constraint(dot_terms(instance.nominal_costs(), x), Sense::kLessEqual,
                        goal.nominal_optimum + goal.tolerance, "budget");
  return system;
}

LinearSystem build_soft_nec(const UncertainInstance& instance, const FuzzyGoal& goal, double lambda,
                            bool include_nominal) {
  require_crisp(instance, "Soft-Nec");
  require_nominal(goal);
  check_level(lambda);
  const double flipped = 1.0 - lambda;
  LinearSystem system;
  const VarBlock x = add_decisions(system, instance);
  add_protected_rows(system, instance, x, lambda,
                     [flipped](const UncertainRow& r) { return relaxed_rhs(r.rhs, flipped); });
  system.add_constraint(dot_terms(instance.nominal_costs(), x), Sense::kLessEqual, goal_rhs(goal, flipped),
                        "budget");
  if (include_nominal) add_nominal_rows(system, instance, x);
  return system;
}

LinearSystem build_soft_nec_obj(const UncertainInstance& instance, const FuzzyGoal& goal, double lambda,
                                bool include_nominal) {
  require_nominal(goal);
  check_level(lambda);
  const double flipped = 1.0 - lambda;
  UncertainObjective objective;
  if (const auto* c = std::get_if<CostVector>(&instance.objective)) {
    for (double cj : *c) objective.coefficients.emplace_back(cj, 0.0);
  } else {
    objective = std::get<UncertainObjective>(instance.objective);
  }

  LinearSystem system;
  const VarBlock x = add_decisions(system, instance);
  auto cost_lhs = dualize_budgeted(system, objective.coefficients, objective.protection, lambda, x, "obj");
  system.add_constraint(std::move(cost_lhs), Sense::kLessEqual,
                        goal_rhs(goal, flipped) + relaxed_rhs(objective.slack, flipped), "budget");
  add_protected_rows(system, instance, x, lambda,
                     [flipped](const UncertainRow& r) { return relaxed_rhs(r.rhs, flipped); });
  if (include_nominal) add_nominal_rows(system, instance, x);
  return system;
}

}  // namespace possro
