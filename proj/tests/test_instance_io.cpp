#include <doctest.h>

#include <random>
#include <string>

#include "oracles.hpp"
#include "possro/error.hpp"
#include "possro/experiment.hpp"
#include "possro/instance_io.hpp"

using namespace possro;

namespace {

std::string error_path(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<accepted>";
}

const char* kMinimal = R"({"n": 2, "m": 1, "c": [-1, -2],
  "rows": [{"a_hat": [1, 2], "a_bar": [0.5, 1], "b": 3, "b_bar": 1, "gamma": 1}],
  "x_set": {"box": {"lb": [0, 0], "ub": [1, null]}}})";

}  // namespace

TEST_CASE("load the worked example") {
  const UncertainInstance inst = load_instance(POSSRO_DATA_DIR "/example.json");
  REQUIRE(inst.dimension() == 4);
  REQUIRE(inst.rows.size() == 1);
  CHECK(inst.nominal_costs() == std::vector<double>{-4, -3, -2, -1});
  CHECK(inst.rows[0].coefficients[0] == FuzzyInterval(0, 7));
  CHECK(inst.rows[0].coefficients[3] == FuzzyInterval(3, 2));
  CHECK(inst.rows[0].rhs == SoftBound(6, 2));
  CHECK(inst.rows[0].protection == 2);
  CHECK(inst.feasible_set == FeasibleSet::unit_box(4));

  const UncertainInstance obj = load_instance(POSSRO_DATA_DIR "/example_objective.json");
  REQUIRE_FALSE(obj.has_crisp_objective());
  const auto& c = std::get<UncertainObjective>(obj.objective);
  CHECK(c.protection == 2);
  CHECK(c.slack == SoftBound(0.0, 1.0));
  CHECK(c.coefficients[2] == FuzzyInterval(-2, 0.5));

  CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), std::runtime_error);
}

TEST_CASE("optional fields") {
  const UncertainInstance inst = parse_instance(kMinimal);
  CHECK(inst.feasible_set.upper[1] == kInfinity);
  CHECK(inst.rows[0].coefficients[0].shape() == 1.0);

  const UncertainInstance shaped = parse_instance(R"({"n": 1, "m": 1, "z": 2, "c": [-1],
    "rows": [{"a_hat": [1], "a_bar": [1], "b": 3, "b_bar": 1, "gamma": 1, "z": 0.5}],
    "x_set": {"polyhedron": {"D": [[1]], "d": [4]}}})");
  CHECK(shaped.rows[0].coefficients[0].shape() == 0.5);
  CHECK(shaped.rows[0].rhs.shape() == 0.5);
  CHECK_FALSE(shaped.feasible_set.is_box());
}

TEST_CASE("schema errors name the offending field") {
  CHECK(error_path("not json") == "");
  CHECK(error_path("[1, 2]") == "");
  CHECK(error_path(R"({"m": 1})") == "/n");
  CHECK(error_path(R"({"n": 0, "m": 0})") == "/n");
  CHECK(error_path(R"({"n": 2.5, "m": 0})") == "/n");
  CHECK(error_path(R"({"n": 1, "m": 0, "x_set": {"box": {"lb": [0], "ub": [1]}}, "rows": []})") == "/c");
  CHECK(error_path(R"({"n": 1, "m": 0, "c": "x", "rows": []})") == "/c");
  CHECK(error_path(R"({"n": 1, "m": 1, "c": [1], "rows": []})") == "/rows");
  CHECK(error_path(R"({"n": 1, "m": 0, "c": [1, 2], "rows": []})") == "/c");

  auto with_row = [](const std::string& row) {
    return std::string(R"({"n": 2, "m": 1, "c": [-1, -2], "rows": [)") + row +
           R"(], "x_set": {"box": {"lb": [0, 0], "ub": [1, 1]}}})";
  };
  CHECK(error_path(with_row(R"({"a_hat": [1, 2], "a_bar": [-1, 1], "b": 3, "b_bar": 1, "gamma": 1})")) ==
        "/rows/0/a_bar/0");
  CHECK(error_path(with_row(R"({"a_hat": [1, "q"], "a_bar": [1, 1], "b": 3, "b_bar": 1, "gamma": 1})")) ==
        "/rows/0/a_hat/1");
  CHECK(error_path(with_row(R"({"a_hat": [1, 2], "a_bar": [1], "b": 3, "b_bar": 1, "gamma": 1})")) ==
        "/rows/0/a_bar");
  CHECK(error_path(with_row(R"({"a_hat": [1, 2], "a_bar": [1, 1], "b_bar": 1, "gamma": 1})")) == "/rows/0/b");
  CHECK(error_path(with_row(R"({"a_hat": [1, 2], "a_bar": [1, 1], "b": 3, "b_bar": -1, "gamma": 1})")) ==
        "/rows/0/b_bar");
  CHECK(error_path(with_row(R"({"a_hat": [1, 2], "a_bar": [1, 1], "b": 3, "b_bar": 1, "gamma": 3})")) ==
        "/rows/0/gamma");
  CHECK(error_path(with_row(R"({"a_hat": [1, 2], "a_bar": [1, 1], "b": 3, "b_bar": 1, "gamma": 1, "z": 0})")) ==
        "/rows/0/z");
  CHECK(error_path(with_row("5")) == "/rows/0");

  const std::string box_prefix = R"({"n": 2, "m": 0, "c": [-1, -2], "rows": [], "x_set": )";
  CHECK(error_path(box_prefix + R"({"box": {"lb": [0, -1], "ub": [1, 1]}}})") == "/x_set/box/lb/1");
  CHECK(error_path(box_prefix + R"({"box": {"lb": [0, 2], "ub": [1, 1]}}})") == "/x_set/box/ub/1");
  CHECK(error_path(box_prefix + R"({"box": {"lb": [0, 0]}}})") == "/x_set/box/ub");
  CHECK(error_path(box_prefix + R"({"ball": {}}})") == "/x_set");
  CHECK(error_path(box_prefix + R"({"polyhedron": {"D": [[1, 1]], "d": [1, 2]}}})") == "/x_set/polyhedron/D");
  CHECK(error_path(box_prefix + R"({"polyhedron": {"D": [[1]], "d": [1]}}})") == "/x_set/polyhedron/D/0");

  const std::string obj = R"({"n": 2, "m": 0, "rows": [], "x_set": {"box": {"lb": [0, 0], "ub": [1, 1]}}, "c": )";
  CHECK(error_path(obj + R"({"c_hat": [1, 1], "c_bar": [1, 1], "gamma0": 1}})") == "/c/b0_bar");
  CHECK(error_path(obj + R"({"c_hat": [1, 1], "c_bar": [1, 1], "gamma0": -1, "b0_bar": 0}})") == "/c/gamma0");
  CHECK(error_path(obj + R"({"c_hat": [1, 1], "c_bar": [1, -1], "gamma0": 1, "b0_bar": 0}})") == "/c/c_bar/1");
}

TEST_CASE("property: serialize then parse is the identity") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const UncertainInstance inst = oracle::random_instance(rng, 1 + rng() % 6, rng() % 4, 0.1);
    REQUIRE(parse_instance(serialize_instance(inst)) == inst);
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GeneratorSpec spec;
    spec.n = 12;
    spec.gamma = 4;
    spec.shape = 0.5 + 0.5 * static_cast<double>(seed);
    spec.seed = seed;
    const UncertainInstance inst = generate_instance(spec);
    const std::string text = serialize_instance(inst);
    REQUIRE(parse_instance(text) == inst);
    REQUIRE(serialize_instance(parse_instance(text)) == text);
  }
  for (const char* name : {"/example.json", "/example_objective.json"}) {
    const UncertainInstance inst = load_instance(std::string(POSSRO_DATA_DIR) + name);
    REQUIRE(parse_instance(serialize_instance(inst)) == inst);
  }
  const UncertainInstance open = parse_instance(kMinimal);
  CHECK(parse_instance(serialize_instance(open)) == open);
}
