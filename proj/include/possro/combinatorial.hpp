#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "possro/fuzzy.hpp"
#include "possro/necessity.hpp"

namespace possro {

/// Optimal 0/1 solution of a deterministic combinatorial problem.
struct OracleResult {
  double value = 0.0;
  std::vector<int> x;
};

/// Deterministic solver for min c^T x over a fixed X subset of {0,1}^n.
class CombinatorialOracle {
 public:
  virtual ~CombinatorialOracle() = default;
  virtual std::size_t size() const = 0;
  virtual OracleResult solve(std::span<const double> costs) const = 0;
  /// Whether solve() is valid for negative costs.
  virtual bool accepts_negative_costs() const { return false; }
};

/// Uncertain cost row: costs c~_j, protection Gamma0, soft slack b0 (base 0)
/// and the fuzzy goal (c_hat, rho0).
struct BudgetedCostRow {
  std::vector<FuzzyInterval> coefficients;
  int protection = 0;
  SoftBound slack;
  FuzzyGoal goal;

  BudgetedCostRow() = default;
  BudgetedCostRow(std::vector<FuzzyInterval> coefficients, int protection, SoftBound slack, FuzzyGoal goal);
  std::size_t size() const { return coefficients.size(); }
  std::vector<double> nominal_costs() const;
};

struct MinmaxResult {
  double value = 0.0;
  std::vector<int> x;
  std::size_t oracle_calls = 0;
};

/// Worst case over at most Gamma0 deviating costs at level lambda, for one x:
/// c^T x (index order) plus the Gamma0 largest beta_j(lambda) x_j, summed in
/// descending order.
double budgeted_cost(const BudgetedCostRow& row, double lambda, std::span<const int> x);

/// min over X of the budgeted worst-case cost, by enumerating the n + 1
/// thresholds theta in {0} U {beta_j(lambda)}; exactly n + 1 oracle calls.
MinmaxResult minmax_budgeted(const BudgetedCostRow& row, double lambda, const CombinatorialOracle& oracle);

/// Brute-force reference for minmax_budgeted over an explicit list of
/// solutions: every deviation subset of size <= Gamma0 is enumerated.
MinmaxResult brute_force_minmax(const BudgetedCostRow& row, double lambda,
                                std::span<const std::vector<int>> solutions);

struct CombinatorialOutcome {
  SolveOutcome outcome;
  std::vector<int> x;
  std::size_t oracle_calls = 0;
};

/// Bisection over lambda; lambda is feasible iff
/// minmax(lambda) <= c_hat + zeta(1 - lambda) + gamma0(1 - lambda).
/// c_hat comes from the oracle on the nominal costs (row.goal.nominal_optimum is ignored).
CombinatorialOutcome solve_soft_nec_combinatorial(const BudgetedCostRow& row, const CombinatorialOracle& oracle,
                                                  double epsilon = kDefaultEpsilon);

// ---------------------------------------------------------------------------
// Graph oracles. Edges are the ground set.

struct Edge {
  std::size_t tail = 0;
  std::size_t head = 0;
  double c_hat = 0.0;
  double c_bar = 0.0;
};

struct EdgeListGraph {
  std::size_t vertices = 0;
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<Edge> edges;
};

/// Reads the edge-list format: a header line `n_vertices n_edges source target`
/// followed by one `tail head c_hat c_bar` line per edge. Blank lines and lines
/// starting with '#' are skipped. Throws std::runtime_error with a line number.
EdgeListGraph parse_edge_list(std::istream& in);
EdgeListGraph load_edge_list(const std::string& path);

/// Directed shortest source-target path (Dijkstra); costs must be >= 0.
class ShortestPathOracle final : public CombinatorialOracle {
 public:
  explicit ShortestPathOracle(EdgeListGraph graph);
  std::size_t size() const override { return graph_.edges.size(); }
  OracleResult solve(std::span<const double> costs) const override;

 private:
  EdgeListGraph graph_;
};

/// Minimum spanning tree of the undirected graph (Kruskal); costs must be >= 0.
class SpanningTreeOracle final : public CombinatorialOracle {
 public:
  explicit SpanningTreeOracle(EdgeListGraph graph);
  std::size_t size() const override { return graph_.edges.size(); }
  OracleResult solve(std::span<const double> costs) const override;

 private:
  EdgeListGraph graph_;
};

/// Cost row of a graph: c~_e = <c_hat, c_bar, shape>.
BudgetedCostRow cost_row_from_graph(const EdgeListGraph& graph, int protection, double b0_bar, double rho0,
                                    double shape = 1.0);

}  // namespace possro
