#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "possro/linear_system.hpp"

using namespace possro;

TEST_CASE("blocks and variables") {
  LinearSystem sys;
  const VarBlock x = sys.add_block("x", 3, 0.0, 1.0);
  const VarRef t = sys.add_variable("t");
  CHECK(sys.num_variables() == 4);
  CHECK(x[2].index == 2);
  CHECK(t.index == 3);
  REQUIRE(sys.block("x").has_value());
  CHECK(sys.block("x")->size == 3);
  CHECK(sys.block("t")->size == 1);
  CHECK_FALSE(sys.block("nope").has_value());
  CHECK(sys.variables()[1].upper == 1.0);
  CHECK(sys.variables()[3].upper == kInfinity);
}

TEST_CASE("constraints may only reference declared variables") {
  LinearSystem sys;
  sys.add_block("x", 2);
  CHECK_NOTHROW(sys.add_constraint({{VarRef{0}, 1.0}, {VarRef{1}, 1.0}}, Sense::kLessEqual, 1.0));
  CHECK_THROWS_AS(sys.add_constraint({{VarRef{2}, 1.0}}, Sense::kLessEqual, 1.0), std::out_of_range);
  CHECK_THROWS_AS(sys.set_objective({{VarRef{5}, 1.0}}), std::out_of_range);
}

TEST_CASE("violation, objective and slices") {
  LinearSystem sys;
  const VarBlock x = sys.add_block("x", 2, 0.0, 1.0);
  sys.add_constraint({{x[0], 1.0}, {x[1], 1.0}}, Sense::kLessEqual, 1.0);
  sys.add_constraint({{x[0], 1.0}}, Sense::kGreaterEqual, 0.25);
  sys.add_constraint({{x[1], 2.0}}, Sense::kEqual, 1.0);
  sys.set_objective({{x[0], 3.0}, {x[1], -1.0}}, 2.0);
  const std::vector<double> ok{0.5, 0.5};
  CHECK(sys.max_violation(ok) == 0.0);
  CHECK(sys.objective_value(ok) == doctest::Approx(3.0));
  const std::vector<double> bad{0.0, 1.5};
  CHECK(sys.max_violation(bad) == doctest::Approx(2.0));
  CHECK(sys.slice(x, ok) == ok);
  CHECK(evaluate(sys.constraints()[0].terms, ok) == doctest::Approx(1.0));
}
