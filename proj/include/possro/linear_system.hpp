#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace possro {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Index of a variable inside a LinearSystem.
struct VarRef {
  std::size_t index = 0;
  bool operator==(const VarRef&) const = default;
};

/// Contiguous, named run of variables.
struct VarBlock {
  std::string name;
  std::size_t first = 0;
  std::size_t size = 0;

  VarRef operator[](std::size_t k) const { return {first + k}; }
  bool empty() const { return size == 0; }
};

struct LinearTerm {
  VarRef var;
  double coef = 0.0;
};

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::vector<LinearTerm> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::string label;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
};

/// Crisp linear program: variables grouped in named blocks, linear constraints,
/// per-variable bounds and an optional minimization objective.
class LinearSystem {
 public:
  VarBlock add_block(std::string name, std::size_t count, double lower = 0.0, double upper = kInfinity);
  VarRef add_variable(std::string name, double lower = 0.0, double upper = kInfinity);

  /// Throws std::out_of_range when a term references an undeclared variable.
  void add_constraint(std::vector<LinearTerm> terms, Sense sense, double rhs, std::string label = {});
  void set_objective(std::vector<LinearTerm> terms, double constant = 0.0);
  void set_bounds(VarRef v, double lower, double upper);

  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<VarBlock>& blocks() const { return blocks_; }

  /// Block by name, if declared.
  std::optional<VarBlock> block(std::string_view name) const;

  bool has_objective() const { return objective_.has_value(); }
  const std::vector<LinearTerm>& objective() const;
  double objective_constant() const { return objective_constant_; }
  double objective_value(std::span<const double> point) const;

  /// Largest absolute violation of any constraint or bound at point.
  double max_violation(std::span<const double> point) const;

  /// Extract the values of block from a full point.
  std::vector<double> slice(const VarBlock& block, std::span<const double> point) const;

 private:
  std::vector<Variable> variables_;
  std::vector<VarBlock> blocks_;
  std::vector<Constraint> constraints_;
  std::optional<std::vector<LinearTerm>> objective_;
  double objective_constant_ = 0.0;
};

double evaluate(std::span<const LinearTerm> terms, std::span<const double> point);

}  // namespace possro
