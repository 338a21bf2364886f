#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "possro/fuzzy.hpp"
#include "possro/instance.hpp"
#include "possro/random.hpp"

namespace possro {

/// Random instance family: integer costs in cost range, integer nominal
/// coefficients in coeff range, deviations sigma * a^ with sigma ~ U[0,1],
/// b_i = rhs_fraction * sum_j a^_ij, b_bar_i = rhs_slack_fraction * b_i, X = [0,1]^n.
struct GeneratorSpec {
  std::size_t n = 100;
  std::size_t m = 5;
  long long cost_lo = -100;
  long long cost_hi = -1;
  long long coeff_lo = 1;
  long long coeff_hi = 100;
  double rhs_fraction = 0.3;
  int gamma = 30;
  double rhs_slack_fraction = 0.1;
  double shape = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Draw order: costs c_1..c_n, then row by row the pairs (a^_ij, sigma_ij).
UncertainInstance generate_instance(const GeneratorSpec& spec);

/// One realization of every row: result[i][j] = a_ij. Per coefficient, a level
/// lambda ~ U[0,1] is drawn, then a_ij ~ U(lambda-cut of a~_ij).
std::vector<Scenario> sample_scenario(const UncertainInstance& instance, Rng& rng);

/// max_i [(a_i^T x - b_i) / b_i]^+, with b_i the crisp rhs; b_i <= 0 is a DomainError.
double violation(std::span<const double> x, std::span<const Scenario> scenario, const UncertainInstance& instance);

struct SolutionQuality {
  double price = 0.0;       // d(x)
  double infeasible = 0.0;  // fraction of scenarios with violation > 0
  double mean_violation = 0.0;
};

/// a-posteriori quality of x against a fixed scenario set.
SolutionQuality evaluate_solution(const UncertainInstance& instance, std::span<const double> x, double c_hat,
                                  std::span<const std::vector<Scenario>> scenarios);

struct ExperimentConfig {
  GeneratorSpec spec;
  std::vector<double> p_grid;
  std::size_t instances_per_p = 100;
  std::size_t scenarios = 1000;
  double epsilon = 1e-4;
  unsigned threads = 1;
};

struct ReportRow {
  double p = 0.0;
  double d_L = 0.0;
  double d_S = 0.0;
  double infeas_L = 0.0;
  double infeas_S = 0.0;
  double aviol_L = 0.0;
  double aviol_S = 0.0;
  std::size_t instances = 0;  // instances included in the means
  std::size_t scenarios = 0;
  std::size_t excluded = 0;
  /// Light-robust instances whose cost budget is tight, and their mean d.
  std::size_t binding_L = 0;
  double d_L_binding = 0.0;
  /// max |d(x^L) - p| over those instances.
  double binding_gap_L = 0.0;
};

struct SimulationReport {
  std::string generator{kRngName};
  std::uint64_t seed = 0;
  std::vector<ReportRow> rows;

  /// CSV with header p,d_L,d_S,infeas_L,infeas_S,aviol_L,aviol_S,instances,scenarios,excluded.
  std::string to_csv() const;
};

/// {0, 0.2%, ..., 10%}.
std::vector<double> full_p_grid();
/// {0, 1%, ..., 10%}.
std::vector<double> desk_p_grid();

/// n = 100, 100 instances per p, 1000 scenarios, 51-point grid.
ExperimentConfig full_scale_config(std::uint64_t seed);
/// n = 40, 20 instances per p, 200 scenarios, 11-point grid.
ExperimentConfig desk_scale_config(std::uint64_t seed);

using DiagnosticSink = std::function<void(const std::string&)>;

/// p-sweep comparing light robust (max norm) and best necessarily soft
/// feasible solutions. Instance k and its scenario set are the same for every
/// p (seeds derived from (seed, k)); results do not depend on `threads`.
SimulationReport run_experiment(const ExperimentConfig& config, const DiagnosticSink& diagnostics = {});

}  // namespace possro
