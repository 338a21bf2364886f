#pragma once

#include <stdexcept>
#include <string>

#include "possro/instance.hpp"

namespace possro {

/// Instance document rejected by the schema; path() names the offending field
/// in JSON-pointer style, e.g. "/rows/2/a_bar/0".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Instance document:
//   n, m             integers
//   z                optional default shape (1)
//   c                array of n costs, or {c_hat, c_bar, gamma0, b0_bar, z?}
//   rows             m objects {a_hat, a_bar, b, b_bar, gamma, z?}
//   x_set            {box: {lb, ub}} or {polyhedron: {D, d}}; null in ub means +inf
// A row's z applies to its coefficients and to its soft right-hand side.

UncertainInstance parse_instance(const std::string& text);
UncertainInstance load_instance(const std::string& path);

/// Inverse of parse_instance for instances whose rows use one shape throughout.
std::string serialize_instance(const UncertainInstance& instance);

}  // namespace possro
