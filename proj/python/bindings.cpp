#include "sminlab/alphaeta.hpp"
#include "sminlab/error.hpp"
#include "sminlab/experiments.hpp"
#include "sminlab/io.hpp"
#include "sminlab/linalg.hpp"
#include "sminlab/samplers.hpp"
#include "sminlab/stats.hpp"
#include "sminlab/suites.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sminlab;

namespace {

Matrix to_matrix(const Eigen::MatrixXd& m) { return Matrix(m); }

// Results cross the boundary as JSON text; the Python side decodes them.
std::string estimate_json(const std::string& config_json, std::size_t workers) {
  const auto config = config_from_json(Json::parse(config_json));
  const auto e = config.statistic.kind == StatisticKind::distance_profile ? distance_profile_tail(config, workers)
                                                                          : estimate_tail(config, workers);
  return to_json(e).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Smallest singular values of shifted random matrices";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<UnsupportedSize>(m, "UnsupportedSize", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
  py::register_exception<DegenerateStructure>(m, "DegenerateStructure", PyExc_RuntimeError);

  m.def("row_distances", [](const Eigen::MatrixXd& b) { return row_distances(to_matrix(b)); }, py::arg("b"),
        "dist(R_i, H^i) for every row i.");
  m.def("singular_values", [](const Eigen::MatrixXd& b) { return Eigen::VectorXd(singular_values(to_matrix(b))); },
        py::arg("b"), "Singular values in decreasing order.");
  m.def(
      "singular_data",
      [](const Eigen::MatrixXd& b) {
        const auto d = singular_data(to_matrix(b));
        py::dict out;
        out["s_min"] = d.s_min;
        out["s_max"] = d.s_max;
        out["hs_inverse"] = d.hs_inverse;
        out["row_distances"] = d.row_distances;
        out["singular"] = d.singular;
        return out;
      },
      py::arg("b"));
  m.def(
      "sample_matrix",
      [](const std::string& dist, std::size_t n, std::uint64_t seed, std::uint64_t trial, const std::string& shift) {
        const Matrix a = sample_matrix(RowDistribution::of(dist_kind_from_string(dist)), n, SeedSpec{seed, trial});
        return Eigen::MatrixXd((a + build_shift(parse_shift(shift), n)).eigen());
      },
      py::arg("dist"), py::arg("n"), py::arg("seed"), py::arg("trial") = 0, py::arg("shift") = "zero",
      "One realization of A + M for (seed, trial).");
  m.def(
      "wilson_interval",
      [](std::size_t hits, std::size_t trials, double z) {
        const auto ci = wilson_interval(hits, trials, z);
        return py::make_tuple(ci.low, ci.high);
      },
      py::arg("hits"), py::arg("trials"), py::arg("z") = kZ95);
  m.def("_estimate_tail_json", &estimate_json, py::arg("config_json"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_suite",
      [](const std::string& name, std::size_t instances, std::uint64_t seed) {
        SuiteResult r;
        {
          py::gil_scoped_release release;
          r = run_suite(name, instances == 0 ? default_instances(name) : instances, seed);
        }
        py::dict out;
        out["suite"] = r.suite;
        out["instances"] = r.instances;
        out["qualifying"] = r.qualifying;
        out["checks"] = r.checks;
        out["failures"] = r.failures;
        out["max_error"] = r.max_error;
        out["first_failure"] = r.first_failure;
        out["passed"] = r.passed();
        return out;
      },
      py::arg("name"), py::arg("instances") = 0, py::arg("seed") = 0);
  m.def("suite_names", [] {
    std::vector<std::string> names;
    for (auto s : suite_names()) names.emplace_back(s);
    return names;
  });
  m.def(
      "cube_demo",
      [](std::size_t n, double k, std::size_t atoms) {
        const auto s = cube_example_structure(n, k, atoms);
        const auto c = verify_alpharho(s);
        py::dict out;
        out["event_probability"] = s.event_probability();
        out["lhs"] = c.lhs;
        out["rhs"] = c.rhs;
        out["holds"] = c.holds;
        return out;
      },
      py::arg("n") = 4, py::arg("k") = 10.0, py::arg("atoms") = 40);
}
