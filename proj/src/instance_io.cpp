#include "possro/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "possro/error.hpp"

namespace possro {

namespace {

using nlohmann::json;

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(child(path, key), "missing field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(path, "expected a finite number");
  return d;
}

double nonnegative(const json& v, const std::string& path) {
  const double d = number(v, path);
  if (d < 0.0) throw SchemaError(path, "must be >= 0");
  return d;
}

long long integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<long long>();
}

std::vector<double> vector_of(const json& v, const std::string& path, std::size_t n, bool allow_null = false) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  if (v.size() != n) {
    throw SchemaError(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (allow_null && v[j].is_null()) {
      out.push_back(std::numeric_limits<double>::infinity());
    } else {
      out.push_back(number(v[j], child(path, j)));
    }
  }
  return out;
}

double shape_of(const json& obj, const std::string& path, double fallback) {
  const auto it = obj.find("z");
  if (it == obj.end()) return fallback;
  const double z = number(*it, child(path, "z"));
  if (!(z > 0.0)) throw SchemaError(child(path, "z"), "must be > 0");
  return z;
}

int protection(const json& obj, const std::string& path, const char* key, std::size_t n) {
  const std::string p = child(path, key);
  const long long g = integer(field(obj, path, key), p);
  if (g < 0 || static_cast<std::size_t>(g) > n) throw SchemaError(p, "must lie in [0, n]");
  return static_cast<int>(g);
}

std::vector<FuzzyInterval> intervals(const json& obj, const std::string& path, const char* nominal_key,
                                     const char* deviation_key, std::size_t n, double z) {
  const auto nominal = vector_of(field(obj, path, nominal_key), child(path, nominal_key), n);
  const auto deviation = vector_of(field(obj, path, deviation_key), child(path, deviation_key), n);
  std::vector<FuzzyInterval> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (deviation[j] < 0.0) throw SchemaError(child(child(path, deviation_key), j), "must be >= 0");
    out.emplace_back(nominal[j], deviation[j], z);
  }
  return out;
}

FeasibleSet parse_x_set(const json& v, const std::string& path, std::size_t n) {
  if (!v.is_object() || v.size() != 1) throw SchemaError(path, "expected {box: ...} or {polyhedron: ...}");
  if (v.contains("box")) {
    const std::string p = child(path, "box");
    const json& box = v["box"];
    auto lb = vector_of(field(box, p, "lb"), child(p, "lb"), n);
    auto ub = vector_of(field(box, p, "ub"), child(p, "ub"), n, true);
    for (std::size_t j = 0; j < n; ++j) {
      if (lb[j] < 0.0) throw SchemaError(child(child(p, "lb"), j), "must be >= 0");
      if (ub[j] < lb[j]) throw SchemaError(child(child(p, "ub"), j), "below the lower bound");
    }
    return FeasibleSet::box(std::move(lb), std::move(ub));
  }
  if (v.contains("polyhedron")) {
    const std::string p = child(path, "polyhedron");
    const json& poly = v["polyhedron"];
    const json& d_json = field(poly, p, "d");
    if (!d_json.is_array()) throw SchemaError(child(p, "d"), "expected an array");
    auto d = vector_of(d_json, child(p, "d"), d_json.size());
    const json& mat = field(poly, p, "D");
    if (!mat.is_array()) throw SchemaError(child(p, "D"), "expected an array of rows");
    if (mat.size() != d.size()) throw SchemaError(child(p, "D"), "row count differs from the length of d");
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < mat.size(); ++k) rows.push_back(vector_of(mat[k], child(child(p, "D"), k), n));
    return FeasibleSet::polyhedron(n, std::move(rows), std::move(d));
  }
  throw SchemaError(path, "expected {box: ...} or {polyhedron: ...}");
}

json finite_or_null(const std::vector<double>& v) {
  json out = json::array();
  for (double d : v) out.push_back(std::isfinite(d) ? json(d) : json(nullptr));
  return out;
}

}  // namespace

UncertainInstance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("", "expected an object");

  const long long n_raw = integer(field(doc, "", "n"), "/n");
  if (n_raw < 1) throw SchemaError("/n", "must be >= 1");
  const auto n = static_cast<std::size_t>(n_raw);
  const long long m_raw = integer(field(doc, "", "m"), "/m");
  if (m_raw < 0) throw SchemaError("/m", "must be >= 0");
  const auto m = static_cast<std::size_t>(m_raw);
  const double z = shape_of(doc, "", 1.0);

  UncertainInstance inst;
  const json& c = field(doc, "", "c");
  if (c.is_array()) {
    inst.objective = vector_of(c, "/c", n);
  } else if (c.is_object()) {
    const double zc = shape_of(c, "/c", z);
    auto coeffs = intervals(c, "/c", "c_hat", "c_bar", n, zc);
    const int g0 = protection(c, "/c", "gamma0", n);
    const double b0 = nonnegative(field(c, "/c", "b0_bar"), "/c/b0_bar");
    inst.objective = UncertainObjective(std::move(coeffs), g0, SoftBound(0.0, b0, zc));
  } else {
    throw SchemaError("/c", "expected an array or an object");
  }

  const json& rows = field(doc, "", "rows");
  if (!rows.is_array()) throw SchemaError("/rows", "expected an array");
  if (rows.size() != m) {
    throw SchemaError("/rows", "m is " + std::to_string(m) + " but " + std::to_string(rows.size()) + " rows given");
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::string p = child("/rows", i);
    const json& row = rows[i];
    if (!row.is_object()) throw SchemaError(p, "expected an object");
    const double zr = shape_of(row, p, z);
    auto coeffs = intervals(row, p, "a_hat", "a_bar", n, zr);
    const double b = number(field(row, p, "b"), child(p, "b"));
    const double b_bar = nonnegative(field(row, p, "b_bar"), child(p, "b_bar"));
    const int g = protection(row, p, "gamma", n);
    inst.rows.emplace_back(std::move(coeffs), SoftBound(b, b_bar, zr), g);
  }

  inst.feasible_set = parse_x_set(field(doc, "", "x_set"), "/x_set", n);
  inst.validate();
  return inst;
}

UncertainInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const UncertainInstance& inst) {
  json doc;
  const std::size_t n = inst.dimension();
  doc["n"] = n;
  doc["m"] = inst.rows.size();
  if (const auto* c = std::get_if<CostVector>(&inst.objective)) {
    doc["c"] = *c;
  } else {
    const auto& obj = std::get<UncertainObjective>(inst.objective);
    json c_hat = json::array(), c_bar = json::array();
    for (const auto& fi : obj.coefficients) {
      c_hat.push_back(fi.nominal());
      c_bar.push_back(fi.deviation());
    }
    const double zc = obj.coefficients.empty() ? obj.slack.shape() : obj.coefficients.front().shape();
    doc["c"] = {{"c_hat", c_hat}, {"c_bar", c_bar}, {"gamma0", obj.protection}, {"b0_bar", obj.slack.slack()},
                {"z", zc}};
  }
  json rows = json::array();
  for (const auto& row : inst.rows) {
    json a_hat = json::array(), a_bar = json::array();
    for (const auto& fi : row.coefficients) {
      a_hat.push_back(fi.nominal());
      a_bar.push_back(fi.deviation());
    }
    const double zr = row.coefficients.empty() ? row.rhs.shape() : row.coefficients.front().shape();
    rows.push_back({{"a_hat", a_hat},
                    {"a_bar", a_bar},
                    {"b", row.rhs.base()},
                    {"b_bar", row.rhs.slack()},
                    {"gamma", row.protection},
                    {"z", zr}});
  }
  doc["rows"] = rows;
  const FeasibleSet& x = inst.feasible_set;
  if (x.is_box()) {
    doc["x_set"] = {{"box", {{"lb", x.lower}, {"ub", finite_or_null(x.upper)}}}};
  } else {
    doc["x_set"] = {{"polyhedron", {{"D", x.matrix}, {"d", x.rhs}}}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace possro
