#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "possro/error.hpp"
#include "possro/necessity.hpp"
#include "worked_example.hpp"

using namespace possro;

namespace {

// Feasible exactly for lambda >= threshold.
ModelBuilder step_builder(double threshold) {
  return [threshold](double lambda) {
    LinearSystem sys;
    const VarBlock x = sys.add_block("x", 1);
    sys.add_constraint({{x[0], 1.0}}, Sense::kLessEqual, lambda - threshold);
    return sys;
  };
}

double cost_of(const UncertainInstance& inst, const std::vector<double>& x) {
  const auto c = inst.nominal_costs();
  double v = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) v += c[j] * x[j];
  return v;
}

}  // namespace

TEST_CASE("probe bound") {
  CHECK(max_probes(1e-4) == 15);
  CHECK(max_probes(0.5) == 2);
  CHECK(max_probes(1.0) == 1);
  CHECK(max_probes(0.25) == 3);
  CHECK_THROWS_AS(max_probes(0.0), DomainError);
  CHECK_THROWS_AS(max_probes(-1.0), DomainError);
}

TEST_CASE("bisection brackets a known threshold") {
  for (double t : {0.0, 0.5, 0.123456, 0.99, 1.0}) {
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      const SolveOutcome out = bisect(step_builder(t), eps);
      CHECK(out.lambda_bar >= t);
      CHECK(out.lambda_bar - eps <= t);
      CHECK(out.iterations <= max_probes(eps));
      CHECK(out.degree == doctest::Approx(1.0 - out.lambda_bar));
      CHECK(out.solution.size() == 1);
    }
  }
  // With an incumbent, lambda = 1 is never probed.
  const SolveOutcome inc = bisect(step_builder(0.5), 1e-4, SimplexBackend{}, std::vector<double>{0.0});
  CHECK(inc.iterations == max_probes(1e-4) - 1);
  const SolveOutcome top = bisect(step_builder(1.0), 1e-4);
  CHECK(top.effectively_zero);
  CHECK_THROWS_AS(bisect(step_builder(1.5), 1e-4), AssumptionViolation);
  CHECK_THROWS_AS(bisect(step_builder(0.5), 0.0), DomainError);
}

TEST_CASE("worked example degrees") {
  const UncertainInstance inst = example::instance();
  const NominalSolution nominal = nominal_optimum(inst);
  CHECK(nominal.value == doctest::Approx(-10.0));

  const SolveOutcome nec3 = solve_nec(inst, 3.0, 1e-4);
  CHECK(std::abs(nec3.degree - 0.42) <= 0.01);
  CHECK(nec3.nominal_value == doctest::Approx(-10.0));
  CHECK(cost_of(inst, nec3.solution) <= -7.0 + 1e-7);
  CHECK(worst_case_lhs(inst.rows[0], nec3.solution, nec3.lambda_bar) <= 6.0 + 1e-7);

  const SolveOutcome nec0 = solve_nec(inst, 0.0, 1e-4);
  CHECK(nec0.effectively_zero);
  CHECK(nec0.degree <= 1e-4);

  // Enough budget for the robust optimum: degree 1 within epsilon.
  const SolveOutcome wide = solve_nec(inst, -26.0 / 7.0 + 10.0 + 1e-6, 1e-4);
  CHECK(wide.degree >= 1.0 - 1e-4);

  // rho0 = 0: x = 1 and 6 + 12 (1 - lambda) <= 6 + 2 lambda gives lambda* = 6/7.
  const SolveOutcome soft0 = solve_soft_nec(inst, SoftNecParams{0.0, 1.0, false}, 1e-4);
  CHECK(soft0.degree == doctest::Approx(1.0 / 7.0).epsilon(1e-3));
  CHECK(soft0.degree <= 1.0 / 7.0 + 1e-12);
  CHECK(soft0.degree >= 1.0 / 7.0 - 1e-4);
}

TEST_CASE("oracle: bisection bracket confirmed by vertex enumeration") {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const UncertainInstance inst = oracle::random_instance(rng, 2, 1, 0.2);
    const NominalSolution nominal = nominal_optimum(inst);
    const FuzzyGoal goal{nominal.value, 0.05 * std::abs(nominal.value), 1.0};
    const double eps = 1e-3;
    for (int model = 0; model < 2; ++model) {
      const ModelBuilder builder = [&](double lambda) {
        return model == 0 ? build_nec(inst, goal, lambda) : build_soft_nec(inst, goal, lambda);
      };
      const SolveOutcome out = bisect(builder, eps, SimplexBackend{}, nominal.x);
      REQUIRE(oracle::vertex_enumeration(builder(out.lambda_bar), 1e-7).feasible);
      const double below = out.lambda_bar - eps;
      // Shrink slightly so the oracle's tolerance does not blur the boundary.
      if (below > 1e-6) {
        REQUIRE_FALSE(oracle::vertex_enumeration(builder(below - 1e-6), 1e-9).feasible);
        ++checked;
      }
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("crisp instance is fully necessary") {
  UncertainInstance inst = example::instance(0.0);
  inst.rows[0] = UncertainRow({FuzzyInterval(0, 0), FuzzyInterval(1, 0), FuzzyInterval(2, 0), FuzzyInterval(3, 0)},
                              SoftBound(6.0), 2);
  CHECK(solve_nec(inst, 0.0).degree >= 1.0 - 1e-4);
  CHECK(solve_soft_nec(inst, SoftNecParams{0.0, 1.0, false}).degree >= 1.0 - 1e-4);
}

TEST_CASE("property: Soft-Nec degree is nondecreasing in rho0") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 3; ++trial) {
    const UncertainInstance inst = oracle::random_instance(rng, 5, 2, 0.1);
    const double c_hat = nominal_optimum(inst).value;
    double previous = -1.0;
    for (int k = 0; k < 20; ++k) {
      const double rho0 = 0.01 * k * std::abs(c_hat);
      const double degree = solve_soft_nec(inst, SoftNecParams{rho0, 1.0, false}, 1e-4).degree;
      // Both bisections follow the same probe sequence, so monotone feasibility gives exact order.
      REQUIRE(degree >= previous);
      previous = degree;
    }
    previous = -1.0;
    for (int k = 0; k < 20; ++k) {
      const double degree = solve_nec(inst, 0.01 * k * std::abs(c_hat), 1e-4).degree;
      REQUIRE(degree >= previous);
      previous = degree;
    }
  }
}

TEST_CASE("property: price of robustness respects the cost budget") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const UncertainInstance inst = oracle::random_instance(rng, 5, 2, 0.1);
    const double c_hat = nominal_optimum(inst).value;
    const auto c = inst.nominal_costs();
    for (double p : {0.0, 0.02, 0.05, 0.1}) {
      const double rho0 = p * std::abs(c_hat);
      const SolveOutcome nec = solve_nec(inst, rho0);
      REQUIRE(price_of_robustness(c, nec.solution, c_hat) <= p + 1e-7);
      const SolveOutcome soft = solve_soft_nec(inst, SoftNecParams{rho0, 1.0, false});
      REQUIRE(price_of_robustness(c, soft.solution, c_hat) <= p * soft.lambda_bar + 1e-7);
      const LightRobustSolution light = solve_light_robust(inst, rho0, SlackNorm::kMax, c_hat);
      REQUIRE(price_of_robustness(c, light.x, c_hat) <= p + 1e-7);
    }
  }
  CHECK_THROWS_AS(price_of_robustness(std::vector<double>{1.0}, std::vector<double>{1.0}, 0.0), DomainError);
}

TEST_CASE("crisp objective: Soft-Nec and its objective form agree exactly") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 5; ++trial) {
    const UncertainInstance inst = oracle::random_instance(rng, 4, 2, 0.1);
    const double rho0 = 0.05 * std::abs(nominal_optimum(inst).value);
    const SolveOutcome a = solve_soft_nec(inst, SoftNecParams{rho0, 1.0, false});
    const SolveOutcome b = solve_soft_nec_obj(inst, SoftNecParams{rho0, 1.0, false});
    REQUIRE(a.lambda_bar == b.lambda_bar);
  }
}

TEST_CASE("robust and light robust solutions") {
  const UncertainInstance inst = example::instance();
  const RobustSolution robust = solve_robust(inst);
  REQUIRE(robust.status == LpStatusKind::kOptimal);
  CHECK(robust.value == doctest::Approx(-26.0 / 7.0));
  CHECK(worst_case_lhs(inst.rows[0], robust.x, 0.0) <= 6.0 + 1e-7);

  const LightRobustSolution light = solve_light_robust(inst, 3.0, SlackNorm::kMax);
  CHECK(light.nominal_value == doctest::Approx(-10.0));
  CHECK(light.cost <= -7.0 + 1e-7);
  CHECK(light.slack_norm == doctest::Approx(worst_case_lhs(inst.rows[0], light.x, 0.0) - 6.0));
  CHECK(light.slacks.size() == 1);
}

TEST_CASE("nominal assumptions are enforced") {
  UncertainInstance inst = example::instance();
  inst.feasible_set = FeasibleSet::polyhedron(4, {{-1, -1, -1, -1}}, {-20});  // needs sum x >= 20
  CHECK_THROWS_AS(nominal_optimum(inst), AssumptionViolation);
  CHECK_THROWS_AS(solve_nec(inst, 1.0), AssumptionViolation);
  CHECK_THROWS_AS(solve_light_robust(inst, 1.0, SlackNorm::kMax), AssumptionViolation);

  UncertainInstance open = example::instance();
  open.rows[0] = UncertainRow({FuzzyInterval(0, 1), FuzzyInterval(0, 1), FuzzyInterval(0, 1), FuzzyInterval(0, 1)},
                              SoftBound(6.0), 1);
  open.feasible_set = FeasibleSet::box({0, 0, 0, 0}, {kInfinity, kInfinity, kInfinity, kInfinity});
  CHECK_THROWS_AS(nominal_optimum(open), AssumptionViolation);
}
