#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "possro/fuzzy.hpp"

namespace possro {

/// Uncertain constraint  a~^T x <= B~  protected against at most `protection`
/// simultaneous coefficient deviations.
struct UncertainRow {
  std::vector<FuzzyInterval> coefficients;
  SoftBound rhs;
  int protection = 0;

  UncertainRow() = default;
  /// Throws DomainError unless 0 <= protection <= coefficients.size().
  UncertainRow(std::vector<FuzzyInterval> coefficients, SoftBound rhs, int protection);

  std::size_t size() const { return coefficients.size(); }
  bool operator==(const UncertainRow&) const = default;
};

/// Uncertain cost vector c~ with protection level and a soft tolerance b0
/// (slack.base() is always 0).
struct UncertainObjective {
  std::vector<FuzzyInterval> coefficients;
  int protection = 0;
  SoftBound slack;

  UncertainObjective() = default;
  UncertainObjective(std::vector<FuzzyInterval> coefficients, int protection, SoftBound slack = SoftBound(0.0));

  std::size_t size() const { return coefficients.size(); }
  std::vector<double> nominal_costs() const;
  bool operator==(const UncertainObjective&) const = default;
};

/// X = { x : lower <= x <= upper, D x <= d }, lower >= 0. Empty `matrix` means a box.
struct FeasibleSet {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::vector<double>> matrix;
  std::vector<double> rhs;

  static FeasibleSet box(std::vector<double> lower, std::vector<double> upper);
  static FeasibleSet unit_box(std::size_t n);
  static FeasibleSet polyhedron(std::size_t n, std::vector<std::vector<double>> matrix, std::vector<double> rhs);

  std::size_t dimension() const { return lower.size(); }
  bool is_box() const { return matrix.empty(); }
  bool operator==(const FeasibleSet&) const = default;
};

using CostVector = std::vector<double>;

struct UncertainInstance {
  std::variant<CostVector, UncertainObjective> objective;
  std::vector<UncertainRow> rows;
  FeasibleSet feasible_set;

  std::size_t dimension() const { return feasible_set.dimension(); }
  bool has_crisp_objective() const { return std::holds_alternative<CostVector>(objective); }
  /// c for a crisp objective, c^ for an uncertain one.
  std::vector<double> nominal_costs() const;
  /// Dimension and sign checks; throws DomainError with a description.
  void validate() const;

  bool operator==(const UncertainInstance&) const = default;
};

}  // namespace possro
