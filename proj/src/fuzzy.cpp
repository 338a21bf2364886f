#include "possro/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "possro/error.hpp"

namespace possro {

namespace {

// 1 - arg^shape with exact values at the endpoints; shape 0 yields 0 (crisp).
double relaxation_factor(double arg, double shape) {
  if (shape == 0.0) return 0.0;
  if (arg <= 0.0) return 1.0;
  if (arg >= 1.0) return 0.0;
  return 1.0 - std::pow(arg, shape);
}

}  // namespace

void check_level(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    std::ostringstream msg;
    msg << "possibility level " << lambda << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

FuzzyInterval::FuzzyInterval(double nominal, double deviation, double shape)
    : nominal_(nominal), deviation_(deviation), shape_(shape) {
  if (!std::isfinite(nominal) || !(deviation >= 0.0) || !std::isfinite(deviation)) {
    throw DomainError("fuzzy interval needs a finite nominal value and a finite deviation >= 0");
  }
  if (!(shape > 0.0) || !std::isfinite(shape)) throw DomainError("fuzzy interval shape must be > 0");
}

SoftBound::SoftBound(double base, double slack, double shape) : base_(base), slack_(slack), shape_(shape) {
  if (!std::isfinite(base) || !(slack >= 0.0) || !std::isfinite(slack)) {
    throw DomainError("soft bound needs a finite base and a finite slack >= 0");
  }
  if (!(shape >= 0.0) || !std::isfinite(shape)) throw DomainError("soft bound shape must be >= 0");
}

double alpha_at(const FuzzyInterval& fi, double lambda) {
  check_level(lambda);
  if (lambda == 0.0) return fi.deviation();
  if (lambda == 1.0) return 0.0;
  return fi.deviation() * (1.0 - std::pow(lambda, fi.shape()));
}

Interval lambda_cut(const FuzzyInterval& fi, double lambda) {
  const double half = alpha_at(fi, lambda);
  return {fi.nominal() - half, fi.nominal() + half};
}

double membership(const FuzzyInterval& fi, double v) {
  const double distance = std::abs(v - fi.nominal());
  if (fi.deviation() == 0.0) return distance == 0.0 ? 1.0 : 0.0;
  if (distance >= fi.deviation()) return 0.0;
  const double base = (fi.deviation() - distance) / fi.deviation();
  if (fi.shape() == 1.0) return base;
  return std::clamp(std::pow(base, 1.0 / fi.shape()), 0.0, 1.0);
}

double joint_possibility(std::span<const FuzzyInterval> row, std::span<const double> s) {
  if (row.size() != s.size()) throw DomainError("scenario length does not match the row dimension");
  double result = 1.0;
  for (std::size_t j = 0; j < row.size(); ++j) result = std::min(result, membership(row[j], s[j]));
  return result;
}

double relaxed_rhs(const SoftBound& sb, double arg) {
  check_level(arg);
  if (sb.slack() == 0.0) return sb.base();
  return sb.base() + sb.slack() * relaxation_factor(arg, sb.shape());
}

double goal_rhs(const FuzzyGoal& goal, double arg) {
  check_level(arg);
  if (goal.tolerance == 0.0) return goal.nominal_optimum;
  return goal.nominal_optimum + goal.tolerance * relaxation_factor(arg, goal.shape);
}

}  // namespace possro
