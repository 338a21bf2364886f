#include "possro/linear_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace possro {

VarBlock LinearSystem::add_block(std::string name, std::size_t count, double lower, double upper) {
  VarBlock block{name, variables_.size(), count};
  for (std::size_t k = 0; k < count; ++k) {
    variables_.push_back({name + "[" + std::to_string(k) + "]", lower, upper});
  }
  blocks_.push_back(block);
  return block;
}

VarRef LinearSystem::add_variable(std::string name, double lower, double upper) {
  VarRef ref{variables_.size()};
  blocks_.push_back({name, ref.index, 1});
  variables_.push_back({std::move(name), lower, upper});
  return ref;
}

void LinearSystem::add_constraint(std::vector<LinearTerm> terms, Sense sense, double rhs, std::string label) {
  for (const auto& t : terms) {
    if (t.var.index >= variables_.size()) throw std::out_of_range("constraint references an undeclared variable");
  }
  constraints_.push_back({std::move(terms), sense, rhs, std::move(label)});
}

void LinearSystem::set_objective(std::vector<LinearTerm> terms, double constant) {
  for (const auto& t : terms) {
    if (t.var.index >= variables_.size()) throw std::out_of_range("objective references an undeclared variable");
  }
  objective_ = std::move(terms);
  objective_constant_ = constant;
}

void LinearSystem::set_bounds(VarRef v, double lower, double upper) {
  auto& var = variables_.at(v.index);
  var.lower = lower;
  var.upper = upper;
}

std::optional<VarBlock> LinearSystem::block(std::string_view name) const {
  auto it = std::find_if(blocks_.begin(), blocks_.end(), [&](const VarBlock& b) { return b.name == name; });
  if (it == blocks_.end()) return std::nullopt;
  return *it;
}

const std::vector<LinearTerm>& LinearSystem::objective() const {
  static const std::vector<LinearTerm> kEmpty;
  return objective_ ? *objective_ : kEmpty;
}

double LinearSystem::objective_value(std::span<const double> point) const {
  return objective_constant_ + evaluate(objective(), point);
}

double LinearSystem::max_violation(std::span<const double> point) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    worst = std::max(worst, variables_[j].lower - point[j]);
    worst = std::max(worst, point[j] - variables_[j].upper);
  }
  for (const auto& c : constraints_) {
    const double lhs = evaluate(c.terms, point);
    switch (c.sense) {
      case Sense::kLessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Sense::kGreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Sense::kEqual: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

std::vector<double> LinearSystem::slice(const VarBlock& block, std::span<const double> point) const {
  return {point.begin() + static_cast<std::ptrdiff_t>(block.first),
          point.begin() + static_cast<std::ptrdiff_t>(block.first + block.size)};
}

double evaluate(std::span<const LinearTerm> terms, std::span<const double> point) {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.coef * point[t.var.index];
  return sum;
}

}  // namespace possro
