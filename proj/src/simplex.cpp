#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "possro/error.hpp"
#include "possro/lp.hpp"

namespace possro {

std::string_view to_string(LpStatusKind kind) {
  switch (kind) {
    case LpStatusKind::kOptimal: return "optimal";
    case LpStatusKind::kFeasible: return "feasible";
    case LpStatusKind::kInfeasible: return "infeasible";
    case LpStatusKind::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTolerance = 1e-7;
constexpr double kHarrisSlack = 1e-9;
constexpr double kSingularRatio = 1e-12;
// Pivots smaller than this are only accepted from a freshly factorized tableau.
constexpr double kSuspiciousPivot = 1e-5;
constexpr std::size_t kRefactorInterval = 64;
constexpr std::size_t kDegenerateRunBeforeBland = 40;

enum class StepResult { kOptimal, kUnbounded };

// Standard form: A y = b, 0 <= y <= u, b >= 0. Columns are the shifted
// structural variables, then slacks, then artificials.
class Tableau {
 public:
  Tableau(const LinearSystem& system, const SolverConfig& config) : config_(config) {
    const auto& vars = system.variables();
    n_struct_ = vars.size();
    lower_.resize(n_struct_);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      if (!std::isfinite(vars[j].lower)) {
        throw std::invalid_argument("variable '" + vars[j].name + "' needs a finite lower bound");
      }
      lower_[j] = vars[j].lower;
      if (vars[j].upper < vars[j].lower - config_.feasibility_tolerance) trivially_infeasible_ = true;
    }

    const auto& cons = system.constraints();
    m_ = cons.size();
    // Count slacks and decide per-row normalization before allocating.
    struct RowPlan {
      double sign = 1.0;     // multiplier applied to the user row
      double slack = 0.0;    // slack coefficient after the multiplier (0: none)
      bool artificial = false;
    };
    std::vector<RowPlan> plan(m_);
    std::vector<double> shifted_rhs(m_);
    std::size_t n_slack = 0;
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      double rhs = cons[i].rhs;
      for (const auto& t : cons[i].terms) rhs -= t.coef * lower_[t.var.index];
      RowPlan p;
      if (cons[i].sense == Sense::kEqual) {
        p.sign = rhs < 0.0 ? -1.0 : 1.0;
        p.artificial = true;
      } else {
        // Written as (sign0 * row) + s = sign0 * rhs with s >= 0.
        const double sign0 = cons[i].sense == Sense::kLessEqual ? 1.0 : -1.0;
        const double r = sign0 * rhs;
        if (r >= 0.0) {
          p.sign = sign0;
          p.slack = 1.0;
        } else {
          p.sign = -sign0;
          p.slack = -1.0;
          p.artificial = true;
        }
        ++n_slack;
      }
      if (p.artificial) ++n_art;
      shifted_rhs[i] = p.sign * rhs;
      plan[i] = p;
    }

    n_cols_ = n_struct_ + n_slack + n_art;
    first_art_ = n_struct_ + n_slack;
    a0_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(n_cols_));
    b0_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m_));
    upper_.assign(n_cols_, kInfinity);
    phase2_cost_.assign(n_cols_, 0.0);
    basis_.assign(m_, 0);

    for (std::size_t j = 0; j < n_struct_; ++j) upper_[j] = std::max(0.0, vars[j].upper - vars[j].lower);

    std::size_t slack_col = n_struct_;
    std::size_t art_col = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      for (const auto& t : cons[i].terms) a0_(r, static_cast<Eigen::Index>(t.var.index)) += plan[i].sign * t.coef;
      b0_(r) = shifted_rhs[i];
      if (plan[i].slack != 0.0) {
        a0_(r, static_cast<Eigen::Index>(slack_col)) = plan[i].slack;
        if (!plan[i].artificial) basis_[i] = slack_col;
        ++slack_col;
      }
      if (plan[i].artificial) {
        a0_(r, static_cast<Eigen::Index>(art_col)) = 1.0;
        basis_[i] = art_col;
        ++art_col;
      }
    }

    for (const auto& t : system.objective()) phase2_cost_[t.var.index] += t.coef;

    position_.assign(n_cols_, -1);
    for (std::size_t i = 0; i < m_; ++i) position_[basis_[i]] = static_cast<long>(i);
    at_upper_.assign(n_cols_, false);
  }

  bool trivially_infeasible() const { return trivially_infeasible_; }
  bool has_artificials() const { return first_art_ < n_cols_; }
  std::size_t iterations() const { return iterations_; }

  // Minimize the sum of artificials; true when it reaches zero.
  bool phase_one() {
    cost_.assign(n_cols_, 0.0);
    for (std::size_t j = first_art_; j < n_cols_; ++j) cost_[j] = 1.0;
    refactor();
    run();
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= first_art_) infeasibility += std::max(0.0, xb_(static_cast<Eigen::Index>(i)));
    }
    if (infeasibility > config_.feasibility_tolerance) return false;
    expel_artificials();
    for (std::size_t j = first_art_; j < n_cols_; ++j) upper_[j] = 0.0;
    refactor();
    return true;
  }

  StepResult phase_two() {
    cost_ = phase2_cost_;
    refactor();
    return run();
  }

  std::vector<double> point() {
    refactor();
    std::vector<double> y(n_cols_, 0.0);
    for (std::size_t j = 0; j < n_cols_; ++j) {
      if (position_[j] < 0) y[j] = at_upper_[j] ? upper_[j] : 0.0;
    }
    for (std::size_t i = 0; i < m_; ++i) y[basis_[i]] = xb_(static_cast<Eigen::Index>(i));
    std::vector<double> x(n_struct_);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      const double v = std::clamp(y[j], 0.0, upper_[j]);
      x[j] = lower_[j] + v;
    }
    return x;
  }

 private:
  void refactor() {
    since_refactor_ = 0;
    const auto m = static_cast<Eigen::Index>(m_);
    Eigen::VectorXd rhs = b0_;
    for (std::size_t j = 0; j < n_cols_; ++j) {
      if (position_[j] < 0 && at_upper_[j]) rhs -= a0_.col(static_cast<Eigen::Index>(j)) * upper_[j];
    }
    if (m_ == 0) {
      t_ = Eigen::MatrixXd::Zero(0, static_cast<Eigen::Index>(n_cols_));
      xb_ = Eigen::VectorXd::Zero(0);
    } else {
      Eigen::MatrixXd basis_matrix(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        basis_matrix.col(i) = a0_.col(static_cast<Eigen::Index>(basis_[static_cast<std::size_t>(i)]));
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
      const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
      if (!(diag.minCoeff() > kSingularRatio * std::max(1.0, diag.maxCoeff()))) {
        throw std::runtime_error("simplex basis became numerically singular");
      }
      t_ = lu.solve(a0_);
      xb_ = lu.solve(rhs);
    }
    d_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_cols_));
    if (cost_.empty()) return;  // no phase started yet
    Eigen::VectorXd cb(m);
    for (Eigen::Index i = 0; i < m; ++i) cb(i) = cost_[basis_[static_cast<std::size_t>(i)]];
    for (std::size_t j = 0; j < n_cols_; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      d_(jj) = cost_[j] - (m_ == 0 ? 0.0 : cb.dot(t_.col(jj)));
    }
    for (std::size_t i = 0; i < m_; ++i) d_(static_cast<Eigen::Index>(basis_[i])) = 0.0;
  }

  long choose_entering(bool bland) const {
    long best = -1;
    double best_score = 0.0;
    const double tol = config_.optimality_tolerance;
    for (std::size_t j = 0; j < n_cols_; ++j) {
      if (position_[j] >= 0 || upper_[j] == 0.0) continue;
      const double dj = d_(static_cast<Eigen::Index>(j));
      const double score = at_upper_[j] ? dj : -dj;
      if (score <= tol) continue;
      if (bland) return static_cast<long>(j);
      if (score > best_score) {
        best_score = score;
        best = static_cast<long>(j);
      }
    }
    return best;
  }

  StepResult run() {
    std::size_t degenerate_run = 0;
    for (;;) {
      if (since_refactor_ >= std::max(kRefactorInterval, m_ / 2)) refactor();
      const bool bland = config_.pivot_rule == PivotRule::kBland || degenerate_run >= kDegenerateRunBeforeBland;
      long q = choose_entering(bland);
      if (q < 0 && since_refactor_ > 0) {
        refactor();
        q = choose_entering(bland);
      }
      if (q < 0) return StepResult::kOptimal;
      if (iterations_ >= config_.max_iterations) {
        throw IterationLimitExceeded("simplex iteration limit of " + std::to_string(config_.max_iterations) +
                                     " reached");
      }
      ++iterations_;
      ++since_refactor_;

      const auto qc = static_cast<std::size_t>(q);
      const auto qi = static_cast<Eigen::Index>(q);
      const double dir = at_upper_[qc] ? -1.0 : 1.0;

      // Harris two-pass ratio test: bound the step allowing infeasibilities up
      // to kHarrisSlack, then take the largest pivot among rows within that bound.
      double bound = upper_[qc];
      for (std::size_t i = 0; i < m_; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const double alpha = dir * t_(ii, qi);
        if (alpha > kPivotTolerance) {
          bound = std::min(bound, (std::max(0.0, xb_(ii)) + kHarrisSlack) / alpha);
        } else if (alpha < -kPivotTolerance && std::isfinite(upper_[basis_[i]])) {
          bound = std::min(bound, (std::max(0.0, upper_[basis_[i]] - xb_(ii)) + kHarrisSlack) / -alpha);
        }
      }
      double step = upper_[qc];
      long leave_row = -1;
      bool leave_to_upper = false;
      if (std::isfinite(bound)) {
        double best_alpha = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
          const auto ii = static_cast<Eigen::Index>(i);
          const double alpha = dir * t_(ii, qi);
          double ratio;
          bool to_upper;
          if (alpha > kPivotTolerance) {
            ratio = std::max(0.0, xb_(ii)) / alpha;
            to_upper = false;
          } else if (alpha < -kPivotTolerance && std::isfinite(upper_[basis_[i]])) {
            ratio = std::max(0.0, upper_[basis_[i]] - xb_(ii)) / -alpha;
            to_upper = true;
          } else {
            continue;
          }
          if (ratio > bound) continue;
          const double abs_alpha = std::abs(alpha);
          bool take;
          if (leave_row < 0) {
            take = true;
          } else if (bland) {
            take = basis_[i] < basis_[static_cast<std::size_t>(leave_row)];
          } else {
            take = abs_alpha > best_alpha;
          }
          if (take) {
            leave_row = static_cast<long>(i);
            leave_to_upper = to_upper;
            best_alpha = abs_alpha;
            step = ratio;
          }
        }
        // The entering variable reaches its own bound first.
        if (leave_row >= 0 && upper_[qc] <= step) {
          leave_row = -1;
          step = upper_[qc];
        }
      }

      if (leave_row >= 0 && since_refactor_ > 1 &&
          std::abs(t_(static_cast<Eigen::Index>(leave_row), qi)) < kSuspiciousPivot) {
        --iterations_;
        refactor();
        continue;
      }
      if (!std::isfinite(step)) return StepResult::kUnbounded;
      degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;

      const Eigen::VectorXd column = t_.col(qi);
      xb_ -= (dir * step) * column;

      if (leave_row < 0) {
        // Bound flip: the entering variable crosses to its other bound.
        at_upper_[qc] = !at_upper_[qc];
        continue;
      }

      const auto r = static_cast<std::size_t>(leave_row);
      const auto ri = static_cast<Eigen::Index>(leave_row);
      const std::size_t leaving = basis_[r];
      const double entering_value = at_upper_[qc] ? upper_[qc] - step : step;

      const double pivot = column(ri);
      Eigen::RowVectorXd pivot_row = t_.row(ri) / pivot;
      Eigen::VectorXd factors = column;
      factors(ri) = 0.0;
      t_.noalias() -= factors * pivot_row;
      t_.row(ri) = pivot_row;
      const double dq = d_(qi);
      d_ -= dq * pivot_row.transpose();
      d_(qi) = 0.0;

      basis_[r] = qc;
      position_[qc] = leave_row;
      position_[leaving] = -1;
      at_upper_[leaving] = leave_to_upper;
      at_upper_[qc] = false;
      xb_(ri) = entering_value;
    }
  }

  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      const auto ii = static_cast<Eigen::Index>(i);
      long q = -1;
      double best = kPivotTolerance * 1e3;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (position_[j] >= 0) continue;
        const double a = std::abs(t_(ii, static_cast<Eigen::Index>(j)));
        if (a > best) {
          best = a;
          q = static_cast<long>(j);
        }
      }
      if (q < 0) continue;  // redundant row; the artificial stays basic at zero
      const auto qc = static_cast<std::size_t>(q);
      const auto qi = static_cast<Eigen::Index>(q);
      const double entering_value = at_upper_[qc] ? upper_[qc] : 0.0;
      const Eigen::VectorXd column = t_.col(qi);
      const double pivot = column(ii);
      Eigen::RowVectorXd pivot_row = t_.row(ii) / pivot;
      Eigen::VectorXd factors = column;
      factors(ii) = 0.0;
      t_.noalias() -= factors * pivot_row;
      t_.row(ii) = pivot_row;
      const std::size_t leaving = basis_[i];
      basis_[i] = qc;
      position_[qc] = static_cast<long>(i);
      position_[leaving] = -1;
      at_upper_[leaving] = false;
      at_upper_[qc] = false;
      xb_(ii) = entering_value;
    }
  }

  SolverConfig config_;
  std::size_t m_ = 0;
  std::size_t n_struct_ = 0;
  std::size_t n_cols_ = 0;
  std::size_t first_art_ = 0;
  bool trivially_infeasible_ = false;

  std::vector<double> lower_;
  Eigen::MatrixXd a0_;
  Eigen::VectorXd b0_;
  std::vector<double> upper_;
  std::vector<double> phase2_cost_;
  std::vector<double> cost_;

  Eigen::MatrixXd t_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd d_;
  std::vector<std::size_t> basis_;
  std::vector<long> position_;
  std::vector<bool> at_upper_;

  std::size_t iterations_ = 0;
  std::size_t since_refactor_ = 0;
};

LpStatus run_simplex(const LinearSystem& system, const SolverConfig& config, bool optimize) {
  if (!(config.feasibility_tolerance > 0.0)) throw std::invalid_argument("feasibility tolerance must be > 0");
  Tableau tableau(system, config);
  LpStatus status;
  if (tableau.trivially_infeasible()) return status;
  if (tableau.has_artificials() && !tableau.phase_one()) {
    status.iterations = tableau.iterations();
    return status;
  }
  if (!optimize || !system.has_objective()) {
    status.kind = LpStatusKind::kFeasible;
    status.point = tableau.point();
    status.iterations = tableau.iterations();
    return status;
  }
  const StepResult result = tableau.phase_two();
  status.iterations = tableau.iterations();
  if (result == StepResult::kUnbounded) {
    status.kind = LpStatusKind::kUnbounded;
    return status;
  }
  status.kind = LpStatusKind::kOptimal;
  status.point = tableau.point();
  status.value = system.objective_value(status.point);
  return status;
}

}  // namespace

SimplexBackend::SimplexBackend(SolverConfig config) : config_(config) {}

LpStatus SimplexBackend::solve(const LinearSystem& system) const { return run_simplex(system, config_, true); }

LpStatus SimplexBackend::check_feasible(const LinearSystem& system) const {
  return run_simplex(system, config_, false);
}

LpStatus solve(const LinearSystem& system, const SolverConfig& config) { return run_simplex(system, config, true); }

LpStatus check_feasible(const LinearSystem& system, const SolverConfig& config) {
  return run_simplex(system, config, false);
}

}  // namespace possro
