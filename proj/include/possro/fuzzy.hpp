#pragma once

#include <limits>
#include <span>
#include <vector>

namespace possro {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
};

/// Symmetric fuzzy interval <nominal, deviation> whose lambda-cuts are
/// [nominal - alpha(lambda), nominal + alpha(lambda)] with
/// alpha(lambda) = deviation * (1 - lambda^shape).
class FuzzyInterval {
 public:
  FuzzyInterval() = default;
  FuzzyInterval(double nominal, double deviation, double shape = 1.0);

  double nominal() const { return nominal_; }
  double deviation() const { return deviation_; }
  double shape() const { return shape_; }

  bool operator==(const FuzzyInterval&) const = default;

 private:
  double nominal_ = 0.0;
  double deviation_ = 0.0;
  double shape_ = 1.0;
};

/// Flexible right-hand side B~ with pseudoinverse base + slack * (1 - lambda^shape).
/// A zero slack is a crisp bound; shape 0 is also treated as crisp.
class SoftBound {
 public:
  SoftBound() = default;
  explicit SoftBound(double base, double slack = 0.0, double shape = 1.0);

  double base() const { return base_; }
  double slack() const { return slack_; }
  double shape() const { return shape_; }

  bool operator==(const SoftBound&) const = default;

 private:
  double base_ = 0.0;
  double slack_ = 0.0;
  double shape_ = 1.0;
};

/// Fuzzy cost goal C~ with pseudoinverse nominal_optimum + tolerance * (1 - lambda^shape).
/// nominal_optimum is usually unknown until the nominal problem is solved (NaN until then).
struct FuzzyGoal {
  double nominal_optimum = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  double shape = 1.0;

  FuzzyGoal with_optimum(double c_hat) const { return {c_hat, tolerance, shape}; }
};

/// One realization of the uncertain coefficients of a row (or of the costs).
using Scenario = std::vector<double>;

/// Half-width of the lambda-cut. Exact at both endpoints.
double alpha_at(const FuzzyInterval& fi, double lambda);

Interval lambda_cut(const FuzzyInterval& fi, double lambda);

/// Possibility degree of value v: the largest lambda whose cut contains v.
double membership(const FuzzyInterval& fi, double v);

/// min_j membership(row_j, s_j).
double joint_possibility(std::span<const FuzzyInterval> row, std::span<const double> s);

/// base + slack * (1 - arg^shape). Model builders pass arg = 1 - lambda.
double relaxed_rhs(const SoftBound& sb, double arg);

/// nominal_optimum + tolerance * (1 - arg^shape); shape 0 pins the goal to nominal_optimum.
double goal_rhs(const FuzzyGoal& goal, double arg);

/// Throws DomainError unless 0 <= lambda <= 1.
void check_level(double lambda);

}  // namespace possro
