#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "possro/fuzzy.hpp"
#include "possro/instance.hpp"
#include "possro/linear_system.hpp"

namespace possro {

// Every builder names the decision block "x"; system.block("x") recovers it.
inline constexpr std::string_view kDecisionBlock = "x";

/// Sum of the `count` largest entries of values (values are left untouched).
double sum_of_largest(std::span<const double> values, int count);

/// Budgeted worst case of one uncertain row at level lambda:
/// nominal^T x + sum of the `protection` largest alpha_j(lambda) * x_j.
double worst_case_value(std::span<const FuzzyInterval> coefficients, int protection, std::span<const double> x,
                        double lambda);

double worst_case_lhs(const UncertainRow& row, std::span<const double> x, double lambda);

/// Adds the dual variables w >= 0, p_j >= 0 and the constraints
/// w + p_j >= alpha_j(lambda) x_j to system, and returns the left-hand side
/// nominal^T x + protection * w + sum_j p_j. The caller attaches the right-hand side.
/// Coefficients whose cut half-width is zero at lambda get no p_j.
std::vector<LinearTerm> dualize_budgeted(LinearSystem& system, std::span<const FuzzyInterval> coefficients,
                                         int protection, double lambda, const VarBlock& x, std::string_view tag);

std::vector<LinearTerm> dualize_budgeted_row(LinearSystem& system, const UncertainRow& row, double lambda,
                                             const VarBlock& x, std::string_view tag);

/// 1 - lambda*, lambda* = inf{lambda : worst_case_lhs(row, x, lambda) <= b}, by bisection to tol.
double necessity_degree(const UncertainRow& row, std::span<const double> x, double tol = 1e-9);

enum class SlackNorm { kMax, kSum };

/// min c^T x  s.t.  A^ x <= b, x in X.
LinearSystem build_nominal(const UncertainInstance& instance);

/// Budgeted robust counterpart at cut level lambda (lambda = 0 uses the supports).
LinearSystem build_robust(const UncertainInstance& instance, double lambda = 0.0);

/// Light robustness: minimize the slack norm subject to the dualized rows with
/// rhs b_i + gamma_i, nominal feasibility, and c^T x <= c_hat + rho0.
LinearSystem build_light_robust(const UncertainInstance& instance, double c_hat, double rho0, SlackNorm norm);

/// Feasibility system of the best-necessarily-feasible model at level lambda.
/// goal.nominal_optimum must be set; goal.tolerance is the crisp budget rho0.
LinearSystem build_nec(const UncertainInstance& instance, const FuzzyGoal& goal, double lambda);

/// Soft variant: rows relaxed to relaxed_rhs(rhs, 1 - lambda), cost bounded by
/// goal_rhs(goal, 1 - lambda); optionally adds A^ x <= b.
LinearSystem build_soft_nec(const UncertainInstance& instance, const FuzzyGoal& goal, double lambda,
                            bool include_nominal = false);

/// Soft model with the uncertain objective folded into a protected cost row
/// (the auxiliary objective variable eliminated). A crisp objective is treated
/// as zero deviations with zero slack.
LinearSystem build_soft_nec_obj(const UncertainInstance& instance, const FuzzyGoal& goal, double lambda,
                                bool include_nominal = false);

}  // namespace possro
