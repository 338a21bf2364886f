#include "possro/combinatorial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "possro/error.hpp"
#include "possro/models.hpp"

namespace possro {

namespace {

std::vector<double> deviations_at(const BudgetedCostRow& row, double lambda) {
  std::vector<double> beta(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) beta[j] = alpha_at(row.coefficients[j], lambda);
  return beta;
}

void check_costs(const CombinatorialOracle& oracle, std::span<const double> costs) {
  if (costs.size() != oracle.size()) throw DomainError("cost vector length does not match the oracle ground set");
  if (oracle.accepts_negative_costs()) return;
  for (double c : costs) {
    if (c < 0.0) throw DomainError("oracle requires nonnegative costs");
  }
}

// Budget at level lambda: c_hat + zeta(1 - lambda) + gamma0(1 - lambda).
double cost_budget(const BudgetedCostRow& row, double c_hat, double lambda) {
  const double flipped = 1.0 - lambda;
  return goal_rhs(row.goal.with_optimum(c_hat), flipped) + relaxed_rhs(row.slack, flipped);
}

}  // namespace

BudgetedCostRow::BudgetedCostRow(std::vector<FuzzyInterval> coefficients_, int protection_, SoftBound slack_,
                                 FuzzyGoal goal_)
    : coefficients(std::move(coefficients_)), protection(protection_), slack(slack_), goal(goal_) {
  if (protection < 0 || static_cast<std::size_t>(protection) > coefficients.size()) {
    throw DomainError("protection level outside [0, n]");
  }
  if (slack.base() != 0.0) throw DomainError("cost slack must have base 0");
}

std::vector<double> BudgetedCostRow::nominal_costs() const {
  std::vector<double> c(size());
  for (std::size_t j = 0; j < size(); ++j) c[j] = coefficients[j].nominal();
  return c;
}

double budgeted_cost(const BudgetedCostRow& row, double lambda, std::span<const int> x) {
  if (x.size() != row.size()) throw DomainError("solution length does not match the ground set");
  double nominal = 0.0;
  std::vector<double> deviations(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    nominal += row.coefficients[j].nominal() * x[j];
    deviations[j] = alpha_at(row.coefficients[j], lambda) * x[j];
  }
  return nominal + sum_of_largest(deviations, row.protection);
}

MinmaxResult minmax_budgeted(const BudgetedCostRow& row, double lambda, const CombinatorialOracle& oracle) {
  check_level(lambda);
  const std::size_t n = row.size();
  const auto nominal = row.nominal_costs();
  check_costs(oracle, nominal);
  const auto beta = deviations_at(row, lambda);

  // Ascending thresholds so that ties go to the smaller theta.
  std::vector<double> thresholds(beta);
  thresholds.push_back(0.0);
  std::stable_sort(thresholds.begin(), thresholds.end());

  MinmaxResult best;
  double best_bound = std::numeric_limits<double>::infinity();
  std::vector<double> adjusted(n);
  for (double theta : thresholds) {
    for (std::size_t j = 0; j < n; ++j) adjusted[j] = nominal[j] + std::max(beta[j] - theta, 0.0);
    OracleResult r = oracle.solve(adjusted);
    ++best.oracle_calls;
    const double bound = row.protection * theta + r.value;
    if (bound < best_bound) {
      best_bound = bound;
      best.x = std::move(r.x);
    }
  }
  best.value = budgeted_cost(row, lambda, best.x);
  return best;
}

MinmaxResult brute_force_minmax(const BudgetedCostRow& row, double lambda,
                                std::span<const std::vector<int>> solutions) {
  check_level(lambda);
  const std::size_t n = row.size();
  if (n > 20) throw DomainError("brute force is limited to n <= 20");
  if (solutions.empty()) throw DomainError("no solutions to enumerate");
  const auto beta = deviations_at(row, lambda);

  MinmaxResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& x : solutions) {
    if (x.size() != n) throw DomainError("solution length does not match the ground set");
    double nominal = 0.0;
    for (std::size_t j = 0; j < n; ++j) nominal += row.coefficients[j].nominal() * x[j];
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<double> picked;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) > row.protection) continue;
      picked.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (1u << j)) picked.push_back(beta[j] * x[j]);
      }
      std::sort(picked.begin(), picked.end(), std::greater<>());
      double extra = 0.0;
      for (double v : picked) extra += v;
      worst = std::max(worst, nominal + extra);
    }
    if (worst < best.value) {
      best.value = worst;
      best.x = x;
    }
  }
  return best;
}

CombinatorialOutcome solve_soft_nec_combinatorial(const BudgetedCostRow& row, const CombinatorialOracle& oracle,
                                                  double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  const auto nominal_costs = row.nominal_costs();
  check_costs(oracle, nominal_costs);
  CombinatorialOutcome result;
  OracleResult nominal = oracle.solve(nominal_costs);
  result.oracle_calls = 1;
  const double c_hat = nominal.value;

  auto& out = result.outcome;
  out.epsilon = epsilon;
  out.nominal_value = c_hat;
  result.x = std::move(nominal.x);

  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > epsilon) {
    const double mid = lo + (hi - lo) / 2.0;
    MinmaxResult probe = minmax_budgeted(row, mid, oracle);
    result.oracle_calls += probe.oracle_calls;
    ++out.iterations;
    const double budget = cost_budget(row, c_hat, mid);
    if (probe.value <= budget + 1e-12 * std::max(1.0, std::abs(budget))) {
      result.x = std::move(probe.x);
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.lambda_bar = hi;
  out.degree = 1.0 - hi;
  out.effectively_zero = out.degree <= epsilon;
  out.solution.assign(result.x.begin(), result.x.end());
  return result;
}

// ---------------------------------------------------------------------------

EdgeListGraph parse_edge_list(std::istream& in) {
  EdgeListGraph graph;
  std::string line;
  std::size_t line_no = 0;
  std::size_t declared_edges = 0;
  bool have_header = false;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      long long nv = 0, ne = 0, s = 0, t = 0;
      if (!(fields >> nv >> ne >> s >> t)) fail("expected header 'n_vertices n_edges source target'");
      if (nv <= 0 || ne < 0 || s < 0 || t < 0 || s >= nv || t >= nv) fail("invalid header values");
      graph.vertices = static_cast<std::size_t>(nv);
      declared_edges = static_cast<std::size_t>(ne);
      graph.source = static_cast<std::size_t>(s);
      graph.target = static_cast<std::size_t>(t);
      have_header = true;
      continue;
    }
    long long tail = 0, head = 0;
    double c_hat = 0.0, c_bar = 0.0;
    if (!(fields >> tail >> head >> c_hat >> c_bar)) fail("expected 'tail head c_hat c_bar'");
    if (tail < 0 || head < 0 || static_cast<std::size_t>(tail) >= graph.vertices ||
        static_cast<std::size_t>(head) >= graph.vertices) {
      fail("vertex id out of range");
    }
    if (!(c_bar >= 0.0)) fail("c_bar must be >= 0");
    graph.edges.push_back({static_cast<std::size_t>(tail), static_cast<std::size_t>(head), c_hat, c_bar});
  }
  if (!have_header) throw std::runtime_error("edge list is empty");
  if (graph.edges.size() != declared_edges) {
    throw std::runtime_error("edge list declares " + std::to_string(declared_edges) + " edges but has " +
                             std::to_string(graph.edges.size()));
  }
  return graph;
}

EdgeListGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return parse_edge_list(in);
}

ShortestPathOracle::ShortestPathOracle(EdgeListGraph graph) : graph_(std::move(graph)) {}

OracleResult ShortestPathOracle::solve(std::span<const double> costs) const {
  check_costs(*this, costs);
  const std::size_t nv = graph_.vertices;
  std::vector<std::vector<std::size_t>> out_edges(nv);
  for (std::size_t e = 0; e < graph_.edges.size(); ++e) out_edges[graph_.edges[e].tail].push_back(e);

  std::vector<double> dist(nv, std::numeric_limits<double>::infinity());
  std::vector<long> via(nv, -1);
  std::vector<bool> done(nv, false);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[graph_.source] = 0.0;
  queue.push({0.0, graph_.source});
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = true;
    for (std::size_t e : out_edges[u]) {
      const std::size_t v = graph_.edges[e].head;
      const double nd = d + costs[e];
      if (nd < dist[v]) {
        dist[v] = nd;
        via[v] = static_cast<long>(e);
        queue.push({nd, v});
      }
    }
  }
  if (!std::isfinite(dist[graph_.target])) throw std::runtime_error("target is unreachable from source");

  OracleResult result;
  result.x.assign(graph_.edges.size(), 0);
  for (std::size_t v = graph_.target; v != graph_.source;) {
    const auto e = static_cast<std::size_t>(via[v]);
    result.x[e] = 1;
    v = graph_.edges[e].tail;
  }
  for (std::size_t e = 0; e < costs.size(); ++e) result.value += costs[e] * result.x[e];
  return result;
}

SpanningTreeOracle::SpanningTreeOracle(EdgeListGraph graph) : graph_(std::move(graph)) {}

OracleResult SpanningTreeOracle::solve(std::span<const double> costs) const {
  check_costs(*this, costs);
  std::vector<std::size_t> order(graph_.edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });

  std::vector<std::size_t> parent(graph_.vertices);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  OracleResult result;
  result.x.assign(graph_.edges.size(), 0);
  std::size_t joined = 0;
  for (std::size_t e : order) {
    const std::size_t a = find(graph_.edges[e].tail);
    const std::size_t b = find(graph_.edges[e].head);
    if (a == b) continue;
    parent[a] = b;
    result.x[e] = 1;
    ++joined;
  }
  if (joined + 1 != graph_.vertices) throw std::runtime_error("graph is not connected");
  for (std::size_t e = 0; e < costs.size(); ++e) result.value += costs[e] * result.x[e];
  return result;
}

BudgetedCostRow cost_row_from_graph(const EdgeListGraph& graph, int protection, double b0_bar, double rho0,
                                    double shape) {
  std::vector<FuzzyInterval> coefficients;
  coefficients.reserve(graph.edges.size());
  for (const auto& e : graph.edges) coefficients.emplace_back(e.c_hat, e.c_bar, shape);
  FuzzyGoal goal;
  goal.tolerance = rho0;
  goal.shape = shape;
  return BudgetedCostRow(std::move(coefficients), protection, SoftBound(0.0, b0_bar, shape), goal);
}

}  // namespace possro
