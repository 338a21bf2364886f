// possro: command-line front end for the possibilistic robust LP toolkit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "possro/combinatorial.hpp"
#include "possro/error.hpp"
#include "possro/experiment.hpp"
#include "possro/instance_io.hpp"
#include "possro/necessity.hpp"

using nlohmann::json;
using namespace possro;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;

struct Options {
  std::string instance;
  std::string out;
  double epsilon = kDefaultEpsilon;
  double rho0 = 0.0;
  double z = 1.0;
  double lambda = 0.0;
  std::string norm = "max";
  bool nominal_feasible = false;
  std::uint64_t seed = 1;
  std::size_t scenarios = 1000;
  std::string graph;
  std::string oracle = "sp";
  int gamma0 = 0;
  double b0_bar = 0.0;
  std::string model = "soft-nec";
  std::string scale = "desk";
  std::optional<std::size_t> instances;
  unsigned threads = 1;
};

// Raised for solver verdicts that map to exit status 2.
struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t j = 0; j < v.size(); ++j) s += (j ? " " : "") + num(v[j]);
  return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

// Human-readable report on stdout plus the same fields as JSON for --out.
class Report {
 public:
  explicit Report(std::string model) { add("model", model); }

  void add(const std::string& key, const std::string& value) {
    lines_.push_back(pad(key) + value);
    doc_[key] = value;
  }
  void add(const std::string& key, double value) {
    lines_.push_back(pad(key) + num(value));
    doc_[key] = value;
  }
  void add(const std::string& key, const std::vector<double>& v) {
    lines_.push_back(pad(key) + join(v));
    doc_[key] = v;
  }
  void add_degree(const SolveOutcome& o) {
    lines_.push_back(pad("degree") + fixed6(o.degree) + "  (lambda_bar " + fixed6(o.lambda_bar) + ", epsilon " +
                     num(o.epsilon) + ", probes " + std::to_string(o.iterations) + ")");
    doc_["degree"] = o.degree;
    doc_["lambda_bar"] = o.lambda_bar;
    doc_["epsilon"] = o.epsilon;
    doc_["probes"] = o.iterations;
    doc_["effectively_zero"] = o.effectively_zero;
  }
  void raw(const std::string& key, json value) { doc_[key] = std::move(value); }

  void emit(const std::string& out_path) const {
    for (const auto& l : lines_) std::cout << l << '\n';
    if (!out_path.empty()) write_file(out_path, doc_.dump(2) + "\n");
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
  }

 private:
  static std::string pad(const std::string& key) {
    std::string k = key;
    k.resize(std::max<std::size_t>(12, key.size() + 1), ' ');
    return k;
  }

  std::vector<std::string> lines_;
  json doc_ = json::object();
};

UncertainInstance require_instance(const Options& o) {
  if (o.instance.empty()) throw CLI::ValidationError("--instance", "an instance file is required");
  return load_instance(o.instance);
}

void add_solution(Report& r, const UncertainInstance& inst, const std::vector<double>& x, double c_hat) {
  const double cost = dot(inst.nominal_costs(), x);
  r.add("c_hat", c_hat);
  r.add("cost", cost);
  if (c_hat != 0.0) r.add("d(x)", price_of_robustness(inst.nominal_costs(), x, c_hat));
  r.add("x", x);
}

int cmd_nominal(const Options& o) {
  const auto inst = require_instance(o);
  const auto nom = nominal_optimum(inst);
  Report r("nominal");
  r.add("status", "optimal");
  r.add("objective", nom.value);
  r.add("x", nom.x);
  r.emit(o.out);
  return kExitOk;
}

int cmd_robust(const Options& o) {
  const auto inst = require_instance(o);
  const double c_hat = nominal_optimum(inst).value;
  const auto sol = solve_robust(inst, o.lambda);
  if (sol.status != LpStatusKind::kOptimal) {
    throw Infeasible("robust model is " + std::string(to_string(sol.status)));
  }
  Report r("robust");
  r.add("status", "optimal");
  r.add("lambda", o.lambda);
  r.add("objective", sol.value);
  add_solution(r, inst, sol.x, c_hat);
  r.emit(o.out);
  return kExitOk;
}

int cmd_light(const Options& o) {
  const auto inst = require_instance(o);
  const SlackNorm norm = o.norm == "sum" ? SlackNorm::kSum : SlackNorm::kMax;
  const auto sol = solve_light_robust(inst, o.rho0, norm);
  Report r("light");
  r.add("status", "optimal");
  r.add("norm", o.norm);
  r.add("rho0", o.rho0);
  r.add("objective", sol.slack_norm);
  r.add("slacks", sol.slacks);
  add_solution(r, inst, sol.x, sol.nominal_value);
  r.emit(o.out);
  return kExitOk;
}

int finish_necessity(const char* model, const Options& o, const UncertainInstance& inst, const SolveOutcome& out) {
  Report r(model);
  r.add("status", out.effectively_zero ? "degree within epsilon of 0" : "optimal");
  r.add("rho0", o.rho0);
  r.add_degree(out);
  add_solution(r, inst, out.solution, out.nominal_value);
  r.emit(o.out);
  return kExitOk;
}

int cmd_nec(const Options& o) {
  const auto inst = require_instance(o);
  return finish_necessity("nec", o, inst, solve_nec(inst, o.rho0, o.epsilon));
}

int cmd_soft_nec(const Options& o) {
  const auto inst = require_instance(o);
  const SoftNecParams params{o.rho0, o.z, o.nominal_feasible};
  return finish_necessity("soft-nec", o, inst, solve_soft_nec(inst, params, o.epsilon));
}

int cmd_soft_nec_obj(const Options& o) {
  const auto inst = require_instance(o);
  const SoftNecParams params{o.rho0, o.z, o.nominal_feasible};
  return finish_necessity("soft-nec-obj", o, inst, solve_soft_nec_obj(inst, params, o.epsilon));
}

int cmd_combi(const Options& o) {
  if (o.graph.empty()) throw CLI::ValidationError("--graph", "a graph file is required");
  const EdgeListGraph graph = load_edge_list(o.graph);
  const BudgetedCostRow row = cost_row_from_graph(graph, o.gamma0, o.b0_bar, o.rho0, o.z);
  std::unique_ptr<CombinatorialOracle> oracle;
  if (o.oracle == "mst") {
    oracle = std::make_unique<SpanningTreeOracle>(graph);
  } else {
    oracle = std::make_unique<ShortestPathOracle>(graph);
  }
  const CombinatorialOutcome res = solve_soft_nec_combinatorial(row, *oracle, o.epsilon);
  std::vector<double> x(res.x.begin(), res.x.end());
  const double cost = dot(row.nominal_costs(), x);
  Report r("combi");
  r.add("oracle", o.oracle == "mst" ? "spanning tree" : "shortest path");
  r.add("status", res.outcome.effectively_zero ? "degree within epsilon of 0" : "optimal");
  r.add("rho0", o.rho0);
  r.add_degree(res.outcome);
  r.add("c_hat", res.outcome.nominal_value);
  r.add("cost", cost);
  if (res.outcome.nominal_value != 0.0) {
    r.add("d(x)", std::abs((cost - res.outcome.nominal_value) / res.outcome.nominal_value));
  }
  r.add("oracle_calls", static_cast<double>(res.oracle_calls));
  r.add("x", x);
  r.emit(o.out);
  return kExitOk;
}

std::vector<double> solution_for_model(const Options& o, const UncertainInstance& inst, double& c_hat) {
  const auto nom = nominal_optimum(inst);
  c_hat = nom.value;
  if (o.model == "nominal") return nom.x;
  if (o.model == "robust") {
    auto sol = solve_robust(inst, o.lambda);
    if (sol.status != LpStatusKind::kOptimal) throw Infeasible("robust model is infeasible");
    return sol.x;
  }
  if (o.model == "light") return solve_light_robust(inst, o.rho0, SlackNorm::kMax, c_hat).x;
  if (o.model == "nec") return solve_nec(inst, o.rho0, o.epsilon).solution;
  return solve_soft_nec(inst, SoftNecParams{o.rho0, o.z, o.nominal_feasible}, o.epsilon).solution;
}

int cmd_simulate(const Options& o) {
  const auto inst = require_instance(o);
  double c_hat = 0.0;
  const auto x = solution_for_model(o, inst, c_hat);
  Rng rng(derive_seed(o.seed, 0, 0));
  std::vector<std::vector<Scenario>> scenarios;
  scenarios.reserve(o.scenarios);
  for (std::size_t s = 0; s < o.scenarios; ++s) scenarios.push_back(sample_scenario(inst, rng));
  const SolutionQuality q = evaluate_solution(inst, x, c_hat, scenarios);
  Report r("simulate");
  r.add("solution", o.model);
  r.add("rho0", o.rho0);
  r.add("rng", std::string(kRngName));
  r.add("seed", std::to_string(o.seed));
  r.add("scenarios", static_cast<double>(o.scenarios));
  r.add("c_hat", c_hat);
  r.add("d(x)", q.price);
  r.add("infeas", q.infeasible);
  r.add("aviol", q.mean_violation);
  r.add("x", x);
  r.emit(o.out);
  return kExitOk;
}

int cmd_experiment(const Options& o, bool scenarios_given) {
  ExperimentConfig cfg = o.scale == "full" ? full_scale_config(o.seed) : desk_scale_config(o.seed);
  if (o.instances) cfg.instances_per_p = *o.instances;
  if (scenarios_given) cfg.scenarios = o.scenarios;
  cfg.epsilon = o.epsilon;
  cfg.threads = o.threads;
  const SimulationReport rep =
      run_experiment(cfg, [](const std::string& msg) { std::cerr << "excluded: " << msg << '\n'; });
  const std::string csv = rep.to_csv();
  std::cout << "# experiment scale=" << o.scale << " n=" << cfg.spec.n << " m=" << cfg.spec.m
            << " gamma=" << cfg.spec.gamma << " instances=" << cfg.instances_per_p
            << " scenarios=" << cfg.scenarios << " rng=" << rep.generator << " seed=" << rep.seed << '\n';
  std::cout << csv;
  if (!o.out.empty()) Report::write_file(o.out, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Possibilistic robust linear and combinatorial optimization"};
  app.require_subcommand(1);
  Options o;

  auto add_instance = [&](CLI::App* c) {
    c->add_option("--instance", o.instance, "Instance file (JSON)")->check(CLI::ExistingFile);
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Write a machine-readable copy of the result");
  };
  auto add_rho = [&](CLI::App* c) {
    c->add_option("--rho0", o.rho0, "Tolerance on the cost goal")->check(CLI::NonNegativeNumber);
  };
  auto add_eps = [&](CLI::App* c) {
    c->add_option("--epsilon", o.epsilon, "Bisection accuracy")->check(CLI::PositiveNumber);
  };
  auto add_z = [&](CLI::App* c) {
    c->add_option("--z", o.z, "Shape of the fuzzy cost goal")->check(CLI::NonNegativeNumber);
  };

  auto* nominal = app.add_subcommand("nominal", "Solve the nominal problem");
  add_instance(nominal);
  add_common(nominal);

  auto* robust = app.add_subcommand("robust", "Budgeted robust counterpart on a lambda-cut");
  add_instance(robust);
  add_common(robust);
  robust->add_option("--lambda", o.lambda, "Possibility level of the cut (0: supports)")->check(CLI::Range(0.0, 1.0));

  auto* light = app.add_subcommand("light", "Light robust model");
  add_instance(light);
  add_common(light);
  add_rho(light);
  light->add_option("--norm", o.norm, "Slack norm")->check(CLI::IsMember({"max", "sum"}));

  auto* nec = app.add_subcommand("nec", "Best necessarily feasible solution");
  add_instance(nec);
  add_common(nec);
  add_rho(nec);
  add_eps(nec);

  auto* soft = app.add_subcommand("soft-nec", "Best necessarily soft feasible solution");
  add_instance(soft);
  add_common(soft);
  add_rho(soft);
  add_eps(soft);
  add_z(soft);
  soft->add_flag("--nominal-feasible", o.nominal_feasible, "Also require feasibility under the nominal scenario");

  auto* soft_obj = app.add_subcommand("soft-nec-obj", "Soft model with an uncertain objective");
  add_instance(soft_obj);
  add_common(soft_obj);
  add_rho(soft_obj);
  add_eps(soft_obj);
  add_z(soft_obj);
  soft_obj->add_flag("--nominal-feasible", o.nominal_feasible, "Also require feasibility under the nominal scenario");

  auto* combi = app.add_subcommand("combi", "Soft model for shortest path or spanning tree with uncertain costs");
  add_common(combi);
  add_rho(combi);
  add_eps(combi);
  add_z(combi);
  combi->add_option("--graph", o.graph, "Edge-list graph file")->check(CLI::ExistingFile);
  combi->add_option("--oracle", o.oracle, "sp (shortest path) or mst (spanning tree)")
      ->check(CLI::IsMember({"sp", "mst"}));
  combi->add_option("--gamma0", o.gamma0, "Cost protection level")->check(CLI::NonNegativeNumber);
  combi->add_option("--b0-bar", o.b0_bar, "Soft slack on the cost")->check(CLI::NonNegativeNumber);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo evaluation of one model's solution");
  add_instance(simulate);
  add_common(simulate);
  add_rho(simulate);
  add_eps(simulate);
  add_z(simulate);
  simulate->add_option("--model", o.model, "Solution to evaluate")
      ->check(CLI::IsMember({"nominal", "robust", "light", "nec", "soft-nec"}));
  simulate->add_option("--seed", o.seed, "Master seed");
  simulate->add_option("--scenarios", o.scenarios, "Number of scenarios")->check(CLI::PositiveNumber);
  simulate->add_flag("--nominal-feasible", o.nominal_feasible, "Also require feasibility under the nominal scenario");

  auto* experiment = app.add_subcommand("experiment", "Light robust vs. soft necessity p-sweep (CSV)");
  add_common(experiment);
  add_eps(experiment);
  experiment->add_option("--seed", o.seed, "Master seed");
  auto* scen_opt =
      experiment->add_option("--scenarios", o.scenarios, "Scenarios per instance")->check(CLI::PositiveNumber);
  experiment->add_option("--scale", o.scale, "desk (n=40, 20 instances, 200 scenarios) or full")
      ->check(CLI::IsMember({"desk", "full"}));
  experiment->add_option("--instances", o.instances, "Instances per p value")->check(CLI::PositiveNumber);
  experiment->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (nominal->parsed()) code = cmd_nominal(o);
    else if (robust->parsed()) code = cmd_robust(o);
    else if (light->parsed()) code = cmd_light(o);
    else if (nec->parsed()) code = cmd_nec(o);
    else if (soft->parsed()) code = cmd_soft_nec(o);
    else if (soft_obj->parsed()) code = cmd_soft_nec_obj(o);
    else if (combi->parsed()) code = cmd_combi(o);
    else if (simulate->parsed()) code = cmd_simulate(o);
    else if (experiment->parsed()) code = cmd_experiment(o, scen_opt->count() > 0);
  } catch (const SchemaError& e) {
    std::cerr << "error: invalid instance at " << (e.path().empty() ? "/" : e.path()) << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const AssumptionViolation& e) {
    std::cerr << "assumption violated: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const IterationLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "wall time " << num(seconds) << " s\n";
  return code;
}
