#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "possro/instance.hpp"
#include "possro/linear_system.hpp"
#include "possro/lp.hpp"
#include "possro/models.hpp"

namespace possro {

inline constexpr double kDefaultEpsilon = 1e-4;

/// Result of a bisection over lambda.
struct SolveOutcome {
  std::vector<double> solution;
  double lambda_bar = 1.0;
  double degree = 0.0;  // 1 - lambda_bar
  double nominal_value = 0.0;
  std::size_t iterations = 0;  // feasibility checks performed
  double epsilon = kDefaultEpsilon;
  /// degree <= epsilon: the model is infeasible arbitrarily close to lambda = 1.
  bool effectively_zero = false;
};

struct NominalSolution {
  double value = 0.0;
  std::vector<double> x;
};

/// A lambda-parameterized model whose feasible set grows with lambda.
using ModelBuilder = std::function<LinearSystem(double lambda)>;

/// Upper bound on feasibility checks of one bisection: ceil(log2(1/epsilon)) + 1.
std::size_t max_probes(double epsilon);

/// Solves min c^ x over A^ x <= b, x in X. Throws AssumptionViolation when that
/// problem is infeasible or unbounded.
NominalSolution nominal_optimum(const UncertainInstance& instance, const LpBackend& backend = SimplexBackend{});

/// Binary search for the smallest feasible lambda, to accuracy epsilon.
/// With an incumbent, lambda = 1 is taken as feasible with that point and is
/// not probed; without one, lambda = 1 is probed first and must be feasible.
SolveOutcome bisect(const ModelBuilder& builder, double epsilon, const LpBackend& backend = SimplexBackend{},
                    std::optional<std::vector<double>> incumbent = std::nullopt);

struct SoftNecParams {
  double rho0 = 0.0;
  double goal_shape = 1.0;
  bool include_nominal = false;
};

SolveOutcome solve_nec(const UncertainInstance& instance, double rho0, double epsilon = kDefaultEpsilon,
                       const LpBackend& backend = SimplexBackend{});

SolveOutcome solve_soft_nec(const UncertainInstance& instance, const SoftNecParams& params,
                            double epsilon = kDefaultEpsilon, const LpBackend& backend = SimplexBackend{});

SolveOutcome solve_soft_nec_obj(const UncertainInstance& instance, const SoftNecParams& params,
                                double epsilon = kDefaultEpsilon, const LpBackend& backend = SimplexBackend{});

struct RobustSolution {
  LpStatusKind status = LpStatusKind::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
};

RobustSolution solve_robust(const UncertainInstance& instance, double lambda = 0.0,
                            const LpBackend& backend = SimplexBackend{});

struct LightRobustSolution {
  std::vector<double> x;
  std::vector<double> slacks;
  double slack_norm = 0.0;
  double nominal_value = 0.0;
  double cost = 0.0;
};

/// Computes c_hat itself unless one is given.
LightRobustSolution solve_light_robust(const UncertainInstance& instance, double rho0, SlackNorm norm,
                                       std::optional<double> c_hat = std::nullopt,
                                       const LpBackend& backend = SimplexBackend{});

/// |(c^T x - c_hat) / c_hat|; throws DomainError when c_hat is 0.
double price_of_robustness(std::span<const double> costs, std::span<const double> x, double c_hat);

}  // namespace possro
