#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nachman/beltrami.h"
#include "nachman/dbar.h"
#include "nachman/errors.h"
#include "nachman/experiments.h"
#include "nachman/faddeev.h"
#include "nachman/forward_solver.h"
#include "nachman/lippmann_schwinger.h"
#include "nachman/nachman_bie.h"

namespace py = pybind11;
using namespace nachman;

namespace {

Conductivity conductivity_from_string(const std::string& text) {
  return conductivity_from_json(nlohmann::json::parse(text));
}

py::dict transform_dict(const ScatteringTransform& t) {
  py::dict d;
  d["k"] = t.kgrid();
  d["t"] = t.values;
  d["cutoff"] = t.cutoff;
  d["radial"] = t.grid.radial;
  d["angular"] = t.grid.angular;
  d["radius"] = t.grid.radius;
  d["source"] = to_string(t.source);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "D-bar reconstruction toolkit: forward problem, scattering transforms, reconstruction";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_ValueError);
  py::register_exception<UnsupportedPhantomError>(m, "UnsupportedPhantomError", PyExc_ValueError);

  py::class_<Conductivity>(m, "Conductivity")
      .def_static("unit", &Conductivity::unit)
      .def_static("two_layer", &Conductivity::two_layer, py::arg("inner_value"), py::arg("interface_radius"),
                  py::arg("r1"))
      .def_static("bump", &Conductivity::bump, py::arg("amplitude") = 0.3, py::arg("support") = 0.6)
      .def_static("from_json", &conductivity_from_string, py::arg("text"))
      .def_static("load", &load_conductivity, py::arg("path"))
      .def_property_readonly("kind", [](const Conductivity& c) { return to_string(c.kind()); })
      .def_property_readonly("r1", &Conductivity::r1)
      .def_property_readonly("ess_inf", &Conductivity::ess_inf)
      .def_property_readonly("ess_sup", &Conductivity::ess_sup)
      .def("__call__", &Conductivity::operator(), py::arg("x"), py::arg("y"))
      .def("to_json", [](const Conductivity& c) { return nlohmann::json(c).dump(); });

  m.def(
      "dn_matrix",
      [](const Conductivity& sigma, int order, int boundary_nodes, bool difference) {
        const FemMesh mesh = mesh_for(sigma, boundary_nodes);
        return (difference ? dn_difference(sigma, order, mesh) : assemble_dn_map(sigma, order, mesh)).entries;
      },
      py::arg("sigma"), py::arg("order") = 16, py::arg("boundary_nodes") = 256, py::arg("difference") = true,
      "DN matrix on phi_n, |n| <= order (entry [m+N, n+N]); the difference Lambda_sigma - Lambda_1 by default.");
  m.def("radial_dn_eigenvalue",
        [](std::vector<double> radii, std::vector<double> values, int n) {
          return radial_dn_eigenvalue(PiecewiseRadial{std::move(radii), std::move(values), 0.0}, n);
        },
        py::arg("radii"), py::arg("values"), py::arg("n"));
  m.def("operator_norm_h12", py::overload_cast<const Eigen::MatrixXcd&>(&operator_norm_h12), py::arg("a"));

  m.def("faddeev_G", &faddeev_G, py::arg("k"), py::arg("x"));
  m.def("faddeev_g", &faddeev_g, py::arg("k"), py::arg("x"));
  m.def(
      "exp_trace",
      [](cplx k, int order) {
        const BoundaryField f = exp_trace(k, order);
        return std::vector<cplx>(f.coeffs().begin(), f.coeffs().end());
      },
      py::arg("k"), py::arg("order") = 16);

  m.def(
      "scattering_transform",
      [](const Conductivity& sigma, double radius, int radial, int angular, const std::string& method, int order) {
        const PolarGrid grid{radius, radial, angular};
        if (method == "boundary") {
          py::gil_scoped_release release;
          BoundaryPipelineOptions opt;
          opt.order = order;
          return boundary_transform(sigma, grid, radius, opt);
        }
        if (method != "direct") throw ArgumentError("method must be 'boundary' or 'direct'");
        py::gil_scoped_release release;
        const Potential q = sample_potential(sigma);
        return sample_transform(grid, radius, TransformSource::kDirect, [&](cplx k) {
          return scattering_transform_direct(k, q, solve_lippmann_schwinger(k, q));
        });
      },
      py::arg("sigma"), py::arg("R") = 6.0, py::arg("radial") = 8, py::arg("angular") = 8,
      py::arg("method") = "boundary", py::arg("order") = 16);

  py::class_<ScatteringTransform>(m, "ScatteringTransform")
      .def("__call__", &ScatteringTransform::operator(), py::arg("k"))
      .def("symmetry_defect", &ScatteringTransform::symmetry_defect)
      .def("as_dict", &transform_dict);

  m.def(
      "reconstruct",
      [](const ScatteringTransform& t, int xgrid, const Conductivity* truth) {
        Reconstruction r;
        {
          py::gil_scoped_release release;
          r = reconstruct_sigma(t, disc_sample_points(xgrid), {}, truth);
        }
        py::dict d;
        d["points"] = r.points;
        d["sigma"] = r.sigma;
        d["metrics"] = metrics_json(r).dump();
        if (r.relative_l2_error) d["relative_l2_error"] = *r.relative_l2_error;
        return d;
      },
      py::arg("t"), py::arg("xgrid") = 32, py::arg("truth") = nullptr);

  m.def(
      "tau",
      [](const Conductivity& sigma, cplx k) {
        py::gil_scoped_release release;
        return ap_transform(beltrami_coefficient(sigma), k).tau;
      },
      py::arg("sigma"), py::arg("k"));

  m.def(
      "convergence_study",
      [](const Conductivity& base, std::vector<int> n_values, std::vector<cplx> kset, int levels) {
        std::string out;
        {
          py::gil_scoped_release release;
          StudyConfig cfg;
          cfg.levels = levels;
          out = nlohmann::json(convergence_study(monotone_sequence(base, n_values), kset, cfg)).dump();
        }
        return out;
      },
      py::arg("base"), py::arg("n_values") = std::vector<int>{2, 4, 8, 16, 32},
      py::arg("kset") = std::vector<cplx>{{1.0, 0.0}}, py::arg("levels") = 1,
      "Runs the study and returns the report as a JSON string.");
}
