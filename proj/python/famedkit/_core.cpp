#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "famedkit/acceptance.hpp"
#include "famedkit/cli.hpp"
#include "famedkit/partition.hpp"
#include "famedkit/report.hpp"

namespace py = pybind11;
namespace fk = famedkit;

namespace {

fk::OrderedTriangulation load(const std::string& name) {
    return fk::load_triangulation(fk::resolve_triangulation_path(name));
}

fk::AngleStructure angles_or_max(const fk::OrderedTriangulation& tri, const std::vector<double>& alpha) {
    if (!alpha.empty()) return {alpha};
    return fk::maximize_volume(tri).maximizer;
}

}

PYBIND11_MODULE(_core, m) {
    m.doc() = "famedkit native core";
    m.attr("__version__") = fk::artifact_version();

    py::register_exception<fk::InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<fk::SingularMatrix>(m, "SingularMatrix", PyExc_ArithmeticError);
    py::register_exception<fk::QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);

    m.def("preset_names", &fk::preset_names);
    m.def("preset_dir", &fk::preset_dir);

    // report builders return JSON text, decoded on the Python side
    m.def("_parse", [](const std::string& f) { return fk::triangulation_json(load(f)).dump(); });
    m.def("_matrices", [](const std::string& f) { return fk::kinematical_json(fk::kinematical(load(f))).dump(); });
    m.def(
        "_famed",
        [](const std::string& f, int drop_edge, const std::string& convention) {
            fk::NZOptions o;
            o.drop_edge = drop_edge;
            o.convention = fk::parse_convention(convention);
            return fk::famed_json(fk::famed_check(load(f), o)).dump();
        },
        py::arg("file"), py::arg("drop_edge") = -1, py::arg("convention") = "gpp-gp");
    m.def(
        "_nz",
        [](const std::string& f, int drop_edge, const std::string& convention) {
            fk::NZOptions o;
            o.drop_edge = drop_edge;
            o.convention = fk::parse_convention(convention);
            return fk::nz_json(fk::nz_system(load(f), o)).dump();
        },
        py::arg("file"), py::arg("drop_edge") = -1, py::arg("convention") = "gpp-gp");
    m.def(
        "_solve",
        [](const std::string& f, std::complex<double> u) {
            auto sol = fk::solve_gluing(load(f), u);
            auto j = fk::shape_json(sol);
            j["volume"] = fk::hyperbolic_volume(sol);
            return j.dump();
        },
        py::arg("file"), py::arg("u") = std::complex<double>(0));
    m.def(
        "_maximize_volume",
        [](const std::string& f, std::optional<double> theta, const std::string& curve) {
            fk::VolumeOptions o;
            o.slice_theta = theta;
            o.slice_curve = curve;
            return fk::volume_json(fk::maximize_volume(load(f), o)).dump();
        },
        py::arg("file"), py::arg("theta") = std::nullopt, py::arg("curve") = "l");
    m.def(
        "one_loop",
        [](const std::string& f, std::complex<double> u) {
            auto tri = load(f);
            auto sol = fk::solve_gluing(tri, u);
            if (!sol.converged) throw std::runtime_error("gluing equations did not converge");
            return fk::one_loop_tau(fk::nz_system(tri), sol, fk::strong_flattening(tri)).tau;
        },
        py::arg("file"), py::arg("u") = std::complex<double>(0));
    m.def(
        "flattening",
        [](const std::string& f) {
            auto fl = fk::strong_flattening(load(f));
            return py::make_tuple(fl.f, fl.fp, fl.fpp);
        },
        py::arg("file"));

    m.def("dilog", &fk::dilog, py::arg("z"));
    m.def("bloch_wigner", &fk::bloch_wigner, py::arg("z"));
    m.def("lobachevsky", &fk::lobachevsky, py::arg("x"));
    m.def("phi_b", &fk::phi_b, py::arg("z"), py::arg("b"));
    m.def("log_phi_b", &fk::log_phi_b, py::arg("z"), py::arg("b"));
    m.def("volume_functional", [](const std::vector<double>& a) { return fk::volume_functional({a}); }, py::arg("angles"));

    m.def(
        "partition_modulus",
        [](const std::string& f, double b, const std::vector<double>& alpha, int nodes) {
            auto tri = load(f);
            fk::ContourOptions o;
            o.nodes = nodes;
            return fk::partition_modulus(tri, angles_or_max(tri, alpha), b, o);
        },
        py::arg("file"), py::arg("b"), py::arg("alpha") = std::vector<double>{}, py::arg("nodes") = 192);
    m.def(
        "predicted_modulus",
        [](const std::string& f, double b, const std::vector<double>& alpha) {
            auto tri = load(f);
            return fk::predicted_modulus(tri, angles_or_max(tri, alpha), b).modulus;
        },
        py::arg("file"), py::arg("b"), py::arg("alpha") = std::vector<double>{});
    m.def(
        "jones",
        [](const std::string& f, std::complex<double> x, double b, const std::vector<double>& alpha, int nodes) {
            auto tri = load(f);
            auto js = fk::jones_setup(tri, angles_or_max(tri, alpha), b);
            fk::ContourOptions o;
            o.nodes = nodes;
            return fk::jones_function(js, x, b, fk::jones_contour(js, b, o));
        },
        py::arg("file"), py::arg("x"), py::arg("b"), py::arg("alpha") = std::vector<double>{}, py::arg("nodes") = 640);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = fk::run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
    m.def(
        "run_criterion",
        [](const std::string& id) {
            auto r = fk::run_criterion(id);
            return py::make_tuple(r.passed, fk::format_line(r));
        },
        py::arg("id"));
}
