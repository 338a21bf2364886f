// The four-variable, one-row example instance used across the tests.
#pragma once

#include <vector>

#include "possro/instance.hpp"

namespace example {

inline std::vector<possro::FuzzyInterval> coefficients() {
  return {possro::FuzzyInterval(0, 7), possro::FuzzyInterval(1, 5), possro::FuzzyInterval(2, 4),
          possro::FuzzyInterval(3, 2)};
}

inline possro::UncertainRow row(int protection, double b_bar = 0.0) {
  return possro::UncertainRow(coefficients(), possro::SoftBound(6.0, b_bar, 1.0), protection);
}

inline possro::UncertainInstance instance(double b_bar = 2.0) {
  possro::UncertainInstance inst;
  inst.objective = possro::CostVector{-4, -3, -2, -1};
  inst.rows.push_back(row(2, b_bar));
  inst.feasible_set = possro::FeasibleSet::unit_box(4);
  return inst;
}

inline possro::UncertainInstance objective_instance(int gamma0, double b0_bar) {
  possro::UncertainInstance inst = instance();
  inst.objective = possro::UncertainObjective(
      {possro::FuzzyInterval(-4, 1), possro::FuzzyInterval(-3, 1), possro::FuzzyInterval(-2, 0.5),
       possro::FuzzyInterval(-1, 0.5)},
      gamma0, possro::SoftBound(0.0, b0_bar, 1.0));
  return inst;
}

}  // namespace example
