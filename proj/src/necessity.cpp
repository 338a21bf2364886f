#include "possro/necessity.hpp"

#include <cmath>
#include <stdexcept>

#include "possro/error.hpp"

namespace possro {

namespace {

std::vector<double> decisions_of(const LinearSystem& system, const LpStatus& status) {
  const auto block = system.block(kDecisionBlock);
  if (!block) throw std::logic_error("model has no decision block");
  return system.slice(*block, status.point);
}

}  // namespace

std::size_t max_probes(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  std::size_t halvings = 0;
  for (double width = 1.0; width > epsilon; width /= 2.0) ++halvings;
  return halvings + 1;
}

NominalSolution nominal_optimum(const UncertainInstance& instance, const LpBackend& backend) {
  const LinearSystem system = build_nominal(instance);
  const LpStatus status = backend.solve(system);
  if (status.kind == LpStatusKind::kInfeasible) {
    throw AssumptionViolation("nominal problem is infeasible: X must be nonempty under the nominal scenario");
  }
  if (status.kind == LpStatusKind::kUnbounded) {
    throw AssumptionViolation("nominal problem is unbounded: X must be bounded");
  }
  return {status.value, decisions_of(system, status)};
}

SolveOutcome bisect(const ModelBuilder& builder, double epsilon, const LpBackend& backend,
                    std::optional<std::vector<double>> incumbent) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  SolveOutcome out;
  out.epsilon = epsilon;

  if (!incumbent) {
    const LinearSystem top = builder(1.0);
    const LpStatus status = backend.check_feasible(top);
    ++out.iterations;
    if (!status.has_point()) throw AssumptionViolation("model is infeasible at lambda = 1");
    incumbent = decisions_of(top, status);
  }
  out.solution = std::move(*incumbent);

  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > epsilon) {
    const double mid = lo + (hi - lo) / 2.0;
    const LinearSystem system = builder(mid);
    const LpStatus status = backend.check_feasible(system);
    ++out.iterations;
    if (status.has_point()) {
      out.solution = decisions_of(system, status);
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.lambda_bar = hi;
  out.degree = 1.0 - hi;
  out.effectively_zero = out.degree <= epsilon;
  return out;
}

SolveOutcome solve_nec(const UncertainInstance& instance, double rho0, double epsilon, const LpBackend& backend) {
  const NominalSolution nominal = nominal_optimum(instance, backend);
  const FuzzyGoal goal{nominal.value, rho0, 1.0};
  SolveOutcome out = bisect([&](double lambda) { return build_nec(instance, goal, lambda); }, epsilon, backend,
                            nominal.x);
  out.nominal_value = nominal.value;
  return out;
}

SolveOutcome solve_soft_nec(const UncertainInstance& instance, const SoftNecParams& params, double epsilon,
                            const LpBackend& backend) {
  const NominalSolution nominal = nominal_optimum(instance, backend);
  const FuzzyGoal goal{nominal.value, params.rho0, params.goal_shape};
  SolveOutcome out = bisect(
      [&](double lambda) { return build_soft_nec(instance, goal, lambda, params.include_nominal); }, epsilon,
      backend, nominal.x);
  out.nominal_value = nominal.value;
  return out;
}

SolveOutcome solve_soft_nec_obj(const UncertainInstance& instance, const SoftNecParams& params, double epsilon,
                                const LpBackend& backend) {
  const NominalSolution nominal = nominal_optimum(instance, backend);
  const FuzzyGoal goal{nominal.value, params.rho0, params.goal_shape};
  SolveOutcome out = bisect(
      [&](double lambda) { return build_soft_nec_obj(instance, goal, lambda, params.include_nominal); }, epsilon,
      backend, nominal.x);
  out.nominal_value = nominal.value;
  return out;
}

RobustSolution solve_robust(const UncertainInstance& instance, double lambda, const LpBackend& backend) {
  const LinearSystem system = build_robust(instance, lambda);
  const LpStatus status = backend.solve(system);
  RobustSolution out;
  out.status = status.kind;
  if (status.kind == LpStatusKind::kOptimal) {
    out.value = status.value;
    out.x = decisions_of(system, status);
  }
  return out;
}

LightRobustSolution solve_light_robust(const UncertainInstance& instance, double rho0, SlackNorm norm,
                                       std::optional<double> c_hat, const LpBackend& backend) {
  if (!c_hat) c_hat = nominal_optimum(instance, backend).value;
  const LinearSystem system = build_light_robust(instance, *c_hat, rho0, norm);
  const LpStatus status = backend.solve(system);
  if (status.kind != LpStatusKind::kOptimal) {
    throw AssumptionViolation("light robust model is " + std::string(to_string(status.kind)));
  }
  LightRobustSolution out;
  out.x = decisions_of(system, status);
  out.slacks = system.slice(*system.block("gamma"), status.point);
  out.slack_norm = status.value;
  out.nominal_value = *c_hat;
  const auto c = instance.nominal_costs();
  for (std::size_t j = 0; j < c.size(); ++j) out.cost += c[j] * out.x[j];
  return out;
}

double price_of_robustness(std::span<const double> costs, std::span<const double> x, double c_hat) {
  if (c_hat == 0.0) throw DomainError("price of robustness is undefined for c_hat = 0");
  if (costs.size() != x.size()) throw DomainError("cost and solution lengths differ");
  double value = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) value += costs[j] * x[j];
  return std::abs((value - c_hat) / c_hat);
}

}  // namespace possro
