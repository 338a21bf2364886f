#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "possro/error.hpp"
#include "possro/lp.hpp"

using namespace possro;

TEST_CASE("single variable with two bounds") {
  LinearSystem sys;
  const VarRef x = sys.add_variable("x");
  sys.add_constraint({{x, 1.0}}, Sense::kGreaterEqual, 3.0);
  sys.add_constraint({{x, 1.0}}, Sense::kLessEqual, 10.0);
  sys.set_objective({{x, 1.0}});
  const LpStatus st = solve(sys);
  REQUIRE(st.kind == LpStatusKind::kOptimal);
  CHECK(st.value == doctest::Approx(3.0));
  CHECK(st.point[0] == doctest::Approx(3.0));
}

TEST_CASE("contradictory bounds are infeasible") {
  LinearSystem sys;
  const VarRef x = sys.add_variable("x");
  sys.add_constraint({{x, 1.0}}, Sense::kLessEqual, 1.0);
  sys.add_constraint({{x, 1.0}}, Sense::kGreaterEqual, 2.0);
  CHECK(check_feasible(sys).kind == LpStatusKind::kInfeasible);
  sys.set_objective({{x, 1.0}});
  CHECK(solve(sys).kind == LpStatusKind::kInfeasible);
}

TEST_CASE("no constraints over the unit box") {
  LinearSystem sys;
  sys.add_block("x", 4, 0.0, 1.0);
  const LpStatus st = check_feasible(sys);
  REQUIRE(st.kind == LpStatusKind::kFeasible);
  CHECK(st.point.size() == 4);
  CHECK(sys.max_violation(st.point) == 0.0);
}

TEST_CASE("unbounded ray is reported") {
  LinearSystem sys;
  const VarBlock x = sys.add_block("x", 2);
  sys.add_constraint({{x[0], 1.0}, {x[1], -1.0}}, Sense::kLessEqual, 1.0);
  sys.set_objective({{x[0], -1.0}});
  CHECK(solve(sys).kind == LpStatusKind::kUnbounded);
}

TEST_CASE("bounded variables are never unbounded") {
  LinearSystem sys;
  const VarBlock x = sys.add_block("x", 2, 0.0, 5.0);
  sys.add_constraint({{x[0], 1.0}, {x[1], -1.0}}, Sense::kLessEqual, 1.0);
  sys.set_objective({{x[0], -1.0}, {x[1], -2.0}});
  const LpStatus st = solve(sys);
  REQUIRE(st.kind == LpStatusKind::kOptimal);
  CHECK(st.value == doctest::Approx(-15.0));
}

TEST_CASE("equality rows, negative right-hand sides and shifted lower bounds") {
  LinearSystem sys;
  const VarBlock x = sys.add_block("x", 3, 1.0, 4.0);
  sys.add_constraint({{x[0], 1.0}, {x[1], 1.0}, {x[2], 1.0}}, Sense::kEqual, 7.0);
  sys.add_constraint({{x[0], -1.0}, {x[1], 1.0}}, Sense::kLessEqual, -1.0);
  sys.set_objective({{x[0], 1.0}, {x[1], 2.0}, {x[2], 3.0}});
  const LpStatus st = solve(sys);
  REQUIRE(st.kind == LpStatusKind::kOptimal);
  // x0 = 4, x1 = 2 (x1 <= x0 - 1), x2 = 1 gives 4 + 4 + 3 = 11; oracle confirms.
  const auto ref = oracle::vertex_enumeration(sys);
  REQUIRE(ref.feasible);
  CHECK(st.value == doctest::Approx(ref.value));
  CHECK(st.value == doctest::Approx(11.0));
}

TEST_CASE("iteration limit is an explicit error") {
  LinearSystem sys;
  const VarBlock x = sys.add_block("x", 3, 0.0, 10.0);
  sys.add_constraint({{x[0], 1.0}, {x[1], 1.0}, {x[2], 1.0}}, Sense::kGreaterEqual, 5.0);
  sys.set_objective({{x[0], 1.0}, {x[1], 1.0}, {x[2], 1.0}});
  SolverConfig cfg;
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(solve(sys, cfg), IterationLimitExceeded);
}

namespace {

LinearSystem random_system(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nvars(1, 3), ncons(0, 6), sense(0, 2), coef(-4, 4), rhs(-6, 8), ub(1, 5);
  LinearSystem sys;
  const int n = nvars(rng);
  const VarBlock x = sys.add_block("x", static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) sys.set_bounds(x[static_cast<std::size_t>(j)], 0.0, ub(rng));
  const int m = ncons(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<LinearTerm> terms;
    for (int j = 0; j < n; ++j) terms.push_back({x[static_cast<std::size_t>(j)], static_cast<double>(coef(rng))});
    const int s = sense(rng);
    // Equalities are rarer so that a fair share of systems stays feasible.
    const Sense sn = s == 0 ? Sense::kLessEqual : (s == 1 ? Sense::kGreaterEqual : (rng() % 3 == 0 ? Sense::kEqual
                                                                                                   : Sense::kLessEqual));
    sys.add_constraint(std::move(terms), sn, rhs(rng));
  }
  std::vector<LinearTerm> obj;
  for (int j = 0; j < n; ++j) obj.push_back({x[static_cast<std::size_t>(j)], static_cast<double>(coef(rng))});
  sys.set_objective(std::move(obj));
  return sys;
}

}  // namespace

TEST_CASE("oracle: status and value agree with vertex enumeration") {
  std::mt19937_64 rng(20240611);
  int feasible = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const LinearSystem sys = random_system(rng);
    const auto ref = oracle::vertex_enumeration(sys);
    for (PivotRule rule : {PivotRule::kDantzig, PivotRule::kBland}) {
      SolverConfig cfg;
      cfg.pivot_rule = rule;
      const LpStatus st = solve(sys, cfg);
      REQUIRE(st.kind != LpStatusKind::kUnbounded);
      REQUIRE((st.kind == LpStatusKind::kOptimal) == ref.feasible);
      const LpStatus fs = check_feasible(sys, cfg);
      REQUIRE((fs.kind == LpStatusKind::kFeasible) == ref.feasible);
      if (ref.feasible) {
        REQUIRE(st.value == doctest::Approx(ref.value).epsilon(1e-9).scale(1.0));
        // Witness validity: independent re-evaluation within 10x tolerance.
        REQUIRE(sys.max_violation(st.point) <= 10 * cfg.feasibility_tolerance);
        REQUIRE(sys.max_violation(fs.point) <= 10 * cfg.feasibility_tolerance);
      }
    }
    feasible += ref.feasible;
  }
  // The generator must exercise both verdicts.
  CHECK(feasible > 100);
  CHECK(feasible < 550);
}

TEST_CASE("determinism: identical inputs give identical points") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const LinearSystem sys = random_system(rng);
    const LpStatus a = solve(sys);
    const LpStatus b = solve(sys);
    REQUIRE(a.kind == b.kind);
    REQUIRE(a.point == b.point);
    REQUIRE(a.iterations == b.iterations);
  }
}
