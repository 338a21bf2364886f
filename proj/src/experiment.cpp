#include "possro/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "possro/error.hpp"
#include "possro/models.hpp"
#include "possro/necessity.hpp"

namespace possro {

namespace {

constexpr std::uint64_t kInstanceStream = 1;
constexpr std::uint64_t kScenarioStream = 2;

// Relative slack used to decide that the light-robust cost budget is tight.
constexpr double kBindingTolerance = 1e-6;

struct PointResult {
  bool ok = false;
  SolutionQuality light;
  SolutionQuality soft;
  bool light_binding = false;
};

struct InstanceResult {
  std::vector<PointResult> points;  // one per p
  std::vector<std::string> diagnostics;
};

std::string describe(std::size_t k, double p, const std::string& what) {
  std::ostringstream os;
  os << "instance " << k << ", p = " << p << ": " << what;
  return os.str();
}

InstanceResult run_instance(const ExperimentConfig& config, std::size_t k) {
  InstanceResult out;
  out.points.resize(config.p_grid.size());

  GeneratorSpec spec = config.spec;
  spec.seed = derive_seed(config.spec.seed, kInstanceStream, k);
  const UncertainInstance instance = generate_instance(spec);

  Rng rng(derive_seed(config.spec.seed, kScenarioStream, k));
  std::vector<std::vector<Scenario>> scenarios;
  scenarios.reserve(config.scenarios);
  for (std::size_t s = 0; s < config.scenarios; ++s) scenarios.push_back(sample_scenario(instance, rng));

  const SimplexBackend backend;
  NominalSolution nominal;
  try {
    nominal = nominal_optimum(instance, backend);
  } catch (const std::exception& e) {
    for (double p : config.p_grid) out.diagnostics.push_back(describe(k, p, e.what()));
    return out;
  }

  for (std::size_t ip = 0; ip < config.p_grid.size(); ++ip) {
    const double p = config.p_grid[ip];
    const double rho0 = p * std::abs(nominal.value);
    PointResult& point = out.points[ip];
    try {
      const LightRobustSolution light = solve_light_robust(instance, rho0, SlackNorm::kMax, nominal.value, backend);
      const FuzzyGoal goal{nominal.value, rho0, spec.shape};
      const SolveOutcome soft =
          bisect([&](double lambda) { return build_soft_nec(instance, goal, lambda); }, config.epsilon, backend,
                 nominal.x);
      point.light = evaluate_solution(instance, light.x, nominal.value, scenarios);
      point.soft = evaluate_solution(instance, soft.solution, nominal.value, scenarios);
      const double budget = nominal.value + rho0;
      point.light_binding = light.cost >= budget - kBindingTolerance * std::max(1.0, std::abs(budget));
      point.ok = true;
    } catch (const AssumptionViolation& e) {
      out.diagnostics.push_back(describe(k, p, e.what()));
    } catch (const IterationLimitExceeded& e) {
      out.diagnostics.push_back(describe(k, p, e.what()));
    }
  }
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace

void GeneratorSpec::validate() const {
  if (n < 1 || m < 1) throw DomainError("generator needs n >= 1 and m >= 1");
  if (cost_lo > cost_hi) throw DomainError("empty cost range");
  if (coeff_lo > coeff_hi) throw DomainError("empty coefficient range");
  if (!(rhs_fraction >= 0.0 && rhs_fraction <= 1.0)) throw DomainError("rhs_fraction must lie in [0,1]");
  if (!(rhs_slack_fraction >= 0.0 && rhs_slack_fraction <= 1.0)) {
    throw DomainError("rhs_slack_fraction must lie in [0,1]");
  }
  if (gamma < 0 || static_cast<std::size_t>(gamma) > n) throw DomainError("gamma must lie in [0, n]");
  if (!(shape > 0.0)) throw DomainError("shape must be > 0");
}

UncertainInstance generate_instance(const GeneratorSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  UncertainInstance inst;
  CostVector c(spec.n);
  for (auto& cj : c) cj = static_cast<double>(rng.uniform_int(spec.cost_lo, spec.cost_hi));
  inst.objective = std::move(c);
  inst.rows.reserve(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) {
    std::vector<FuzzyInterval> coeffs;
    coeffs.reserve(spec.n);
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.n; ++j) {
      const auto a = static_cast<double>(rng.uniform_int(spec.coeff_lo, spec.coeff_hi));
      const double sigma = rng.uniform01();
      coeffs.emplace_back(a, sigma * std::abs(a), spec.shape);
      sum += a;
    }
    const double b = spec.rhs_fraction * sum;
    inst.rows.emplace_back(std::move(coeffs), SoftBound(b, spec.rhs_slack_fraction * b, spec.shape), spec.gamma);
  }
  inst.feasible_set = FeasibleSet::unit_box(spec.n);
  return inst;
}

std::vector<Scenario> sample_scenario(const UncertainInstance& instance, Rng& rng) {
  std::vector<Scenario> out;
  out.reserve(instance.rows.size());
  for (const auto& row : instance.rows) {
    Scenario s(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      const FuzzyInterval& fi = row.coefficients[j];
      const double lambda = rng.uniform01();
      const Interval cut = lambda_cut(fi, lambda);
      s[j] = rng.uniform(cut.lo, cut.hi);
    }
    out.push_back(std::move(s));
  }
  return out;
}

double violation(std::span<const double> x, std::span<const Scenario> scenario, const UncertainInstance& instance) {
  if (scenario.size() != instance.rows.size()) throw DomainError("scenario has the wrong number of rows");
  double worst = 0.0;
  for (std::size_t i = 0; i < instance.rows.size(); ++i) {
    const double b = instance.rows[i].rhs.base();
    if (!(b > 0.0)) throw DomainError("violation needs b_i > 0 (row " + std::to_string(i) + ")");
    const Scenario& a = scenario[i];
    if (a.size() != x.size()) throw DomainError("scenario row length differs from x");
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += a[j] * x[j];
    worst = std::max(worst, (lhs - b) / b);
  }
  return worst;
}

SolutionQuality evaluate_solution(const UncertainInstance& instance, std::span<const double> x, double c_hat,
                                  std::span<const std::vector<Scenario>> scenarios) {
  SolutionQuality q;
  q.price = price_of_robustness(instance.nominal_costs(), x, c_hat);
  if (scenarios.empty()) return q;
  std::size_t infeasible = 0;
  double total = 0.0;
  for (const auto& s : scenarios) {
    const double v = violation(x, s, instance);
    if (v > 0.0) ++infeasible;
    total += v;
  }
  const auto count = static_cast<double>(scenarios.size());
  q.infeasible = static_cast<double>(infeasible) / count;
  q.mean_violation = total / count;
  return q;
}

std::string SimulationReport::to_csv() const {
  std::string out = "p,d_L,d_S,infeas_L,infeas_S,aviol_L,aviol_S,instances,scenarios,excluded\n";
  for (const auto& r : rows) {
    out += fixed6(r.p) + ',' + fixed6(r.d_L) + ',' + fixed6(r.d_S) + ',' + fixed6(r.infeas_L) + ',' +
           fixed6(r.infeas_S) + ',' + fixed6(r.aviol_L) + ',' + fixed6(r.aviol_S) + ',' +
           std::to_string(r.instances) + ',' + std::to_string(r.scenarios) + ',' + std::to_string(r.excluded) +
           '\n';
  }
  return out;
}

std::vector<double> full_p_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 50; ++k) grid.push_back(k * 0.002);
  return grid;
}

std::vector<double> desk_p_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(k * 0.01);
  return grid;
}

ExperimentConfig full_scale_config(std::uint64_t seed) {
  ExperimentConfig c;
  c.spec.seed = seed;
  c.p_grid = full_p_grid();
  c.instances_per_p = 100;
  c.scenarios = 1000;
  return c;
}

ExperimentConfig desk_scale_config(std::uint64_t seed) {
  ExperimentConfig c;
  c.spec.n = 40;
  c.spec.seed = seed;
  c.p_grid = desk_p_grid();
  c.instances_per_p = 20;
  c.scenarios = 200;
  return c;
}

SimulationReport run_experiment(const ExperimentConfig& config, const DiagnosticSink& diagnostics) {
  config.spec.validate();
  if (config.p_grid.empty()) throw DomainError("empty p grid");
  for (double p : config.p_grid) {
    if (!(p >= 0.0)) throw DomainError("p values must be >= 0");
  }
  max_probes(config.epsilon);  // validates epsilon

  std::vector<InstanceResult> results(config.instances_per_p);
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, config.instances_per_p));
  if (threads <= 1) {
    for (std::size_t k = 0; k < results.size(); ++k) results[k] = run_instance(config, k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < results.size(); k = next++) results[k] = run_instance(config, k);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Reduce in instance order so the sums do not depend on scheduling.
  SimulationReport report;
  report.seed = config.spec.seed;
  for (std::size_t ip = 0; ip < config.p_grid.size(); ++ip) {
    ReportRow row;
    row.p = config.p_grid[ip];
    row.scenarios = config.scenarios;
    double d_binding = 0.0;
    for (const auto& r : results) {
      const PointResult& pt = r.points[ip];
      if (!pt.ok) {
        ++row.excluded;
        continue;
      }
      ++row.instances;
      row.d_L += pt.light.price;
      row.d_S += pt.soft.price;
      row.infeas_L += pt.light.infeasible;
      row.infeas_S += pt.soft.infeasible;
      row.aviol_L += pt.light.mean_violation;
      row.aviol_S += pt.soft.mean_violation;
      if (pt.light_binding) {
        ++row.binding_L;
        d_binding += pt.light.price;
        row.binding_gap_L = std::max(row.binding_gap_L, std::abs(pt.light.price - row.p));
      }
    }
    if (row.instances > 0) {
      const auto count = static_cast<double>(row.instances);
      row.d_L /= count;
      row.d_S /= count;
      row.infeas_L /= count;
      row.infeas_S /= count;
      row.aviol_L /= count;
      row.aviol_S /= count;
    }
    if (row.binding_L > 0) row.d_L_binding = d_binding / static_cast<double>(row.binding_L);
    report.rows.push_back(row);
  }
  if (diagnostics) {
    for (const auto& r : results)
      for (const auto& msg : r.diagnostics) diagnostics(msg);
  }
  return report;
}

}  // namespace possro
