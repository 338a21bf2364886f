#pragma once

#include <cstddef>
#include <memory>
#include <string_view>
#include <vector>

#include "possro/linear_system.hpp"

namespace possro {

/// Entering-variable rule. kDantzig uses the largest reduced cost and drops to
/// Bland's rule after a run of degenerate pivots; kBland is pure Bland.
enum class PivotRule { kDantzig, kBland };

struct SolverConfig {
  /// Absolute tolerance on constraint residuals.
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  std::size_t max_iterations = 200000;
  PivotRule pivot_rule = PivotRule::kDantzig;
};

enum class LpStatusKind { kOptimal, kFeasible, kInfeasible, kUnbounded };

std::string_view to_string(LpStatusKind kind);

struct LpStatus {
  LpStatusKind kind = LpStatusKind::kInfeasible;
  double value = 0.0;          // objective value, Optimal only
  std::vector<double> point;   // Optimal and Feasible only
  std::size_t iterations = 0;

  bool has_point() const { return kind == LpStatusKind::kOptimal || kind == LpStatusKind::kFeasible; }
};

/// Pluggable LP backend. Implementations are single-use per call and hold no
/// state shared across threads.
class LpBackend {
 public:
  virtual ~LpBackend() = default;
  virtual LpStatus solve(const LinearSystem& system) const = 0;
  virtual LpStatus check_feasible(const LinearSystem& system) const = 0;
};

/// Dense bounded-variable two-phase primal simplex.
class SimplexBackend final : public LpBackend {
 public:
  explicit SimplexBackend(SolverConfig config = {});
  LpStatus solve(const LinearSystem& system) const override;
  LpStatus check_feasible(const LinearSystem& system) const override;
  const SolverConfig& config() const { return config_; }

 private:
  SolverConfig config_;
};

/// Minimize the system objective (Feasible is returned when it has none).
/// Throws IterationLimitExceeded when config.max_iterations is hit.
LpStatus solve(const LinearSystem& system, const SolverConfig& config = {});

/// Phase one only: Feasible with a witness, or Infeasible.
LpStatus check_feasible(const LinearSystem& system, const SolverConfig& config = {});

}  // namespace possro
