#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "possro/combinatorial.hpp"
#include "possro/error.hpp"
#include "possro/experiment.hpp"
#include "possro/instance_io.hpp"
#include "possro/necessity.hpp"

namespace py = pybind11;
using namespace possro;

namespace {

py::dict outcome_dict(const SolveOutcome& o) {
  py::dict d;
  d["degree"] = o.degree;
  d["lambda_bar"] = o.lambda_bar;
  d["x"] = o.solution;
  d["c_hat"] = o.nominal_value;
  d["probes"] = o.iterations;
  d["epsilon"] = o.epsilon;
  d["effectively_zero"] = o.effectively_zero;
  return d;
}

SlackNorm parse_norm(const std::string& norm) {
  if (norm == "max") return SlackNorm::kMax;
  if (norm == "sum") return SlackNorm::kSum;
  throw py::value_error("norm must be 'max' or 'sum'");
}

}  // namespace

PYBIND11_MODULE(_possro, m) {
  m.doc() = "Possibilistic robust optimization core";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<AssumptionViolation>(m, "AssumptionViolation", PyExc_RuntimeError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);

  py::class_<UncertainInstance>(m, "Instance")
      .def_static("from_json", &parse_instance, py::arg("text"))
      .def_static("load", &load_instance, py::arg("path"))
      .def("to_json", &serialize_instance)
      .def_property_readonly("n", &UncertainInstance::dimension)
      .def_property_readonly("m", [](const UncertainInstance& i) { return i.rows.size(); })
      .def("nominal_costs", &UncertainInstance::nominal_costs)
      .def("__eq__", [](const UncertainInstance& a, const UncertainInstance& b) { return a == b; });

  m.def(
      "nominal",
      [](const UncertainInstance& inst) {
        const NominalSolution s = nominal_optimum(inst);
        py::dict d;
        d["value"] = s.value;
        d["x"] = s.x;
        return d;
      },
      py::arg("instance"));

  m.def(
      "robust",
      [](const UncertainInstance& inst, double lambda) {
        const RobustSolution s = solve_robust(inst, lambda);
        py::dict d;
        d["status"] = std::string(to_string(s.status));
        d["value"] = s.value;
        d["x"] = s.x;
        return d;
      },
      py::arg("instance"), py::arg("lambda_") = 0.0);

  m.def(
      "light_robust",
      [](const UncertainInstance& inst, double rho0, const std::string& norm) {
        const LightRobustSolution s = solve_light_robust(inst, rho0, parse_norm(norm));
        py::dict d;
        d["x"] = s.x;
        d["slacks"] = s.slacks;
        d["slack_norm"] = s.slack_norm;
        d["c_hat"] = s.nominal_value;
        d["cost"] = s.cost;
        return d;
      },
      py::arg("instance"), py::arg("rho0"), py::arg("norm") = "max");

  m.def(
      "nec", [](const UncertainInstance& inst, double rho0, double eps) { return outcome_dict(solve_nec(inst, rho0, eps)); },
      py::arg("instance"), py::arg("rho0"), py::arg("epsilon") = kDefaultEpsilon);

  m.def(
      "soft_nec",
      [](const UncertainInstance& inst, double rho0, double z, bool include_nominal, double eps) {
        return outcome_dict(solve_soft_nec(inst, SoftNecParams{rho0, z, include_nominal}, eps));
      },
      py::arg("instance"), py::arg("rho0"), py::arg("z") = 1.0, py::arg("include_nominal") = false,
      py::arg("epsilon") = kDefaultEpsilon);

  m.def(
      "soft_nec_obj",
      [](const UncertainInstance& inst, double rho0, double z, bool include_nominal, double eps) {
        return outcome_dict(solve_soft_nec_obj(inst, SoftNecParams{rho0, z, include_nominal}, eps));
      },
      py::arg("instance"), py::arg("rho0"), py::arg("z") = 1.0, py::arg("include_nominal") = false,
      py::arg("epsilon") = kDefaultEpsilon);

  m.def(
      "combinatorial",
      [](const std::string& edge_list, const std::string& oracle, int gamma0, double b0_bar, double rho0, double z,
         double eps) {
        std::istringstream in(edge_list);
        EdgeListGraph graph = parse_edge_list(in);
        const BudgetedCostRow row = cost_row_from_graph(graph, gamma0, b0_bar, rho0, z);
        CombinatorialOutcome out;
        if (oracle == "sp") {
          out = solve_soft_nec_combinatorial(row, ShortestPathOracle(std::move(graph)), eps);
        } else if (oracle == "mst") {
          out = solve_soft_nec_combinatorial(row, SpanningTreeOracle(std::move(graph)), eps);
        } else {
          throw py::value_error("oracle must be 'sp' or 'mst'");
        }
        py::dict d = outcome_dict(out.outcome);
        d["x"] = out.x;
        d["oracle_calls"] = out.oracle_calls;
        return d;
      },
      py::arg("edge_list"), py::arg("oracle") = "sp", py::arg("gamma0") = 0, py::arg("b0_bar") = 0.0,
      py::arg("rho0") = 0.0, py::arg("z") = 1.0, py::arg("epsilon") = kDefaultEpsilon);

  m.def(
      "generate_instance",
      [](std::size_t n, std::size_t m_rows, int gamma, double shape, std::uint64_t seed) {
        GeneratorSpec spec;
        spec.n = n;
        spec.m = m_rows;
        spec.gamma = gamma;
        spec.shape = shape;
        spec.seed = seed;
        return generate_instance(spec);
      },
      py::arg("n") = 100, py::arg("m") = 5, py::arg("gamma") = 30, py::arg("shape") = 1.0, py::arg("seed") = 0);

  m.def(
      "experiment",
      [](const std::string& scale, std::uint64_t seed, std::optional<std::size_t> instances,
         std::optional<std::size_t> scenarios, unsigned threads) {
        if (scale != "full" && scale != "desk") throw py::value_error("scale must be 'desk' or 'full'");
        ExperimentConfig cfg = scale == "full" ? full_scale_config(seed) : desk_scale_config(seed);
        if (instances) cfg.instances_per_p = *instances;
        if (scenarios) cfg.scenarios = *scenarios;
        cfg.threads = threads;
        py::gil_scoped_release release;
        return run_experiment(cfg).to_csv();
      },
      py::arg("scale") = "desk", py::arg("seed") = 1, py::arg("instances") = py::none(),
      py::arg("scenarios") = py::none(), py::arg("threads") = 1);
}
