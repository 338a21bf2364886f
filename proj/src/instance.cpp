#include "possro/instance.hpp"

#include <limits>
#include <string>

#include "possro/error.hpp"

namespace possro {

UncertainRow::UncertainRow(std::vector<FuzzyInterval> coefficients_, SoftBound rhs_, int protection_)
    : coefficients(std::move(coefficients_)), rhs(rhs_), protection(protection_) {
  if (protection < 0 || static_cast<std::size_t>(protection) > coefficients.size()) {
    throw DomainError("protection level " + std::to_string(protection) + " outside [0, " +
                      std::to_string(coefficients.size()) + "]");
  }
}

UncertainObjective::UncertainObjective(std::vector<FuzzyInterval> coefficients_, int protection_, SoftBound slack_)
    : coefficients(std::move(coefficients_)), protection(protection_), slack(slack_) {
  if (protection < 0 || static_cast<std::size_t>(protection) > coefficients.size()) {
    throw DomainError("objective protection level " + std::to_string(protection) + " outside [0, " +
                      std::to_string(coefficients.size()) + "]");
  }
  if (slack.base() != 0.0) throw DomainError("objective slack must have base 0");
}

std::vector<double> UncertainObjective::nominal_costs() const {
  std::vector<double> c;
  c.reserve(coefficients.size());
  for (const auto& fi : coefficients) c.push_back(fi.nominal());
  return c;
}

FeasibleSet FeasibleSet::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.size() != upper.size()) throw DomainError("box bounds have different lengths");
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!(lower[j] >= 0.0)) throw DomainError("box lower bound must be >= 0 (x is nonnegative)");
    if (!(upper[j] >= lower[j])) throw DomainError("box upper bound below lower bound");
  }
  FeasibleSet set;
  set.lower = std::move(lower);
  set.upper = std::move(upper);
  return set;
}

FeasibleSet FeasibleSet::unit_box(std::size_t n) { return box(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)); }

FeasibleSet FeasibleSet::polyhedron(std::size_t n, std::vector<std::vector<double>> matrix, std::vector<double> rhs) {
  if (matrix.size() != rhs.size()) throw DomainError("polyhedron matrix and rhs have different row counts");
  for (const auto& row : matrix) {
    if (row.size() != n) throw DomainError("polyhedron row length does not match n");
  }
  FeasibleSet set;
  set.lower.assign(n, 0.0);
  set.upper.assign(n, std::numeric_limits<double>::infinity());
  set.matrix = std::move(matrix);
  set.rhs = std::move(rhs);
  return set;
}

std::vector<double> UncertainInstance::nominal_costs() const {
  if (const auto* c = std::get_if<CostVector>(&objective)) return *c;
  return std::get<UncertainObjective>(objective).nominal_costs();
}

void UncertainInstance::validate() const {
  const std::size_t n = dimension();
  if (feasible_set.upper.size() != n) throw DomainError("feasible set bounds have inconsistent lengths");
  for (double lb : feasible_set.lower) {
    if (!(lb >= 0.0)) throw DomainError("feasible set must lie in the nonnegative orthant");
  }
  for (const auto& row : feasible_set.matrix) {
    if (row.size() != n) throw DomainError("feasible set row length does not match n");
  }
  if (feasible_set.matrix.size() != feasible_set.rhs.size()) throw DomainError("feasible set rhs length mismatch");
  if (const auto* c = std::get_if<CostVector>(&objective)) {
    if (c->size() != n) throw DomainError("cost vector length does not match n");
  } else if (std::get<UncertainObjective>(objective).size() != n) {
    throw DomainError("uncertain objective length does not match n");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw DomainError("row " + std::to_string(i) + " length does not match n");
    if (rows[i].protection < 0 || static_cast<std::size_t>(rows[i].protection) > n) {
      throw DomainError("row " + std::to_string(i) + " protection level outside [0, n]");
    }
  }
}

}  // namespace possro
