#include <optional>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccfour/atlas.hpp"
#include "ccfour/dziobek.hpp"
#include "ccfour/errors.hpp"
#include "ccfour/io.hpp"
#include "ccfour/solver.hpp"
#include "ccfour/tetra.hpp"

namespace py = pybind11;
using namespace ccfour;

namespace {

SolverSettings settings_from(const std::optional<std::string>& json) {
  SolverSettings s;
  if (json) io::apply_settings(s, *json);
  return s;
}

std::string document(const char* command, const MassVector& m, const std::vector<CentralConfiguration>& sols,
                     bool symmetry) {
  io::SolutionDocument doc;
  doc.command = command;
  doc.masses = m.values();
  for (const auto& c : sols) doc.solutions.push_back(io::to_record(c, symmetry));
  return io::serialize(doc);
}

}  // namespace

PYBIND11_MODULE(_ccfour, mod) {
  mod.doc() = "Planar four-body central configurations";

  static py::exception<Error> base(mod, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  mod.attr("SCHEMA_VERSION") = io::kSchemaVersion;

  mod.def("mass_scale", [](const Vec4& m) { return MassVector(m).mu(); }, py::arg("masses"));

  mod.def(
      "tetrahedron", [](const Vec4& m) { return Eigen::MatrixXd(build_tetrahedron(MassVector(m)).E); },
      py::arg("masses"));

  mod.def(
      "sign_pattern",
      [](const Vec4& m, double theta, double phi) {
        return sign_pattern(build_tetrahedron(MassVector(m)), Direction{theta, phi}).label();
      },
      py::arg("masses"), py::arg("theta"), py::arg("phi"));

  mod.def(
      "cayley_menger", [](const std::array<double, 6>& r) { return cayley_menger(DistanceSet(r)); },
      py::arg("distances"));

  mod.def(
      "solve",
      [](const Vec4& m, const std::optional<std::string>& settings) {
        const MassVector masses(m);
        const SolverSettings s = settings_from(settings);
        std::vector<CentralConfiguration> sols;
        {
          py::gil_scoped_release release;
          sols = solve_all(masses, s);
        }
        return document("solve", masses, sols, false);
      },
      py::arg("masses"), py::arg("settings") = py::none());

  mod.def(
      "kite",
      [](const Vec4& m, const std::optional<std::string>& settings) {
        const MassVector masses(m);
        const SolverSettings s = settings_from(settings);
        KiteResult k;
        {
          py::gil_scoped_release release;
          k = solve_kite(masses, s);
        }
        return document("kite", masses, k.solutions, true);
      },
      py::arg("masses"), py::arg("settings") = py::none());

  mod.def(
      "verify",
      [](const std::string& text, const std::optional<Vec4>& masses) {
        const io::SolutionDocument doc = io::parse(text);
        const MassVector m(masses.value_or(doc.masses));
        py::list out;
        for (const auto& r : doc.solutions) {
          const io::RecordCheck c = io::verify_record(m, r);
          py::dict d;
          d["kind"] = r.kind;
          d["passed"] = c.passed();
          d["dziobek"] = c.dziobek;
          d["cayley_menger"] = c.cm;
          d["sigma_minus_1"] = c.sigma_minus_1;
          d["mass"] = c.mass;
          d["kind_matches"] = c.kind_matches;
          d["failure"] = c.failure;
          out.append(d);
        }
        return out;
      },
      py::arg("document"), py::arg("masses") = py::none());
}
