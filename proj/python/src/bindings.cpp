// Python bindings. Reports cross the boundary as JSON text and are decoded on the Python
// side, so the dictionaries match the CLI output exactly.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bergspec/classifier.hpp"
#include "bergspec/error.hpp"
#include "bergspec/numerics.hpp"
#include "bergspec/report.hpp"
#include "bergspec/scenario.hpp"
#include "bergspec/svg.hpp"
#include "bergspec/truncation.hpp"

namespace py = pybind11;
using namespace bergspec;

namespace {

ExtReal ext(double x) { return std::isinf(x) && x < 0 ? ExtReal::neg_inf() : ExtReal(x); }

GammaProfile make_profile(double p, double gamma0, std::vector<double> const& repelling) {
    std::vector<ExtReal> rep;
    for (double x : repelling) rep.push_back(ext(x));
    return GammaProfile(p, ext(gamma0), rep);
}

std::string region_json(SpectralRegion const& r) { return dump(to_json(r)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectra of weighted composition semigroups on Bergman spaces";

    auto error = py::register_exception<Error>(m, "BergspecError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<CoverageError>(m, "CoverageError", error.ptr());

    py::class_<FixedPoint>(m, "FixedPoint")
        .def_readonly("zeta", &FixedPoint::zeta)
        .def_readonly("alpha", &FixedPoint::alpha)
        .def_property_readonly("beta", [](FixedPoint const& fp) -> py::object {
            if (fp.beta.neg_inf) return py::float_(-std::numeric_limits<double>::infinity());
            return py::cast(fp.beta.value);
        })
        .def_property_readonly("role", [](FixedPoint const& fp) { return std::string(to_string(fp.role)); });

    py::class_<Scenario>(m, "Scenario")
        .def_property_readonly("p", &Scenario::p)
        .def_property_readonly("model", &Scenario::model_name)
        .def_property_readonly("fixed_points", &Scenario::fixed_points)
        .def("h", &Scenario::h)
        .def("h_prime", &Scenario::h_prime)
        .def("v", &Scenario::v)
        .def("h_inverse", &Scenario::h_inverse)
        .def("flow", &Scenario::flow, py::arg("t"), py::arg("z"))
        .def("cocycle", &Scenario::cocycle, py::arg("t"), py::arg("z"))
        .def("generator_G", &Scenario::generator_G)
        .def("generator_g", &Scenario::generator_g);

    m.def("parse_scenario", [](std::string const& text) { return parse_scenario(text); }, py::arg("text"));

    m.def(
        "classify_json",
        [](Scenario const& s, std::vector<double> const& ts) {
            RunStatus status;
            Json j = classify_report(s, ts, status);
            return py::make_tuple(dump(j), exit_code(status));
        },
        py::arg("scenario"), py::arg("t"));

    m.def(
        "verify_json",
        [](Scenario const& s, std::vector<cplx> const& lambdas, std::vector<double> const& ts) {
            RunStatus status;
            std::string text;
            {
                py::gil_scoped_release release;
                text = dump(verify_report(s, lambdas, ts, Tolerances{}, status));
            }
            return py::make_tuple(text, exit_code(status));
        },
        py::arg("scenario"), py::arg("lambdas"), py::arg("t"));

    m.def(
        "truncate_json",
        [](Scenario const& s, double t, int N, int n_max) {
            RunStatus status;
            std::string text;
            {
                py::gil_scoped_release release;
                text = dump(truncate_report(s, t, N, n_max, Tolerances{}, status));
            }
            return py::make_tuple(text, exit_code(status));
        },
        py::arg("scenario"), py::arg("t"), py::arg("N"), py::arg("n_max"));

    m.def(
        "truncation_matrix",
        [](Scenario const& s, double t, int N) { return Eigen::MatrixXcd(build_matrix(s, t, N).entries); },
        py::arg("scenario"), py::arg("t"), py::arg("N"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "gelfand_radius", [](Eigen::MatrixXcd const& M, int n_max) { return gelfand_radius(M, n_max).radius; },
        py::arg("matrix"), py::arg("n_max"));
    m.def("eigen_cloud", &eigen_cloud, py::arg("matrix"));

    m.def(
        "generator_spectrum_json",
        [](double p, double gamma0, std::vector<double> const& repelling) {
            return region_json(generator_spectrum(make_profile(p, gamma0, repelling)));
        },
        py::arg("p"), py::arg("gamma0"), py::arg("repelling"));
    m.def(
        "operator_spectrum_json",
        [](double p, double gamma0, std::vector<double> const& repelling, double t) {
            return region_json(operator_spectrum(make_profile(p, gamma0, repelling), t));
        },
        py::arg("p"), py::arg("gamma0"), py::arg("repelling"), py::arg("t"));
    m.def(
        "render_svg",
        [](Scenario const& s, std::string const& side, double t) {
            GammaProfile g = gammas_from(s.fixed_points(), s.p());
            if (side == "generator") {
                SpectralRegion r = generator_spectrum(g);
                return render_svg(r, generator_viewport(r));
            }
            if (side == "operator") {
                SpectralRegion r = operator_spectrum(g, t);
                return render_svg(r, operator_viewport(r));
            }
            throw Error(ErrorKind::precondition, "side must be 'generator' or 'operator'");
        },
        py::arg("scenario"), py::arg("side") = "generator", py::arg("t") = 1.0);

    m.def(
        "ap_norm",
        [](Scenario const& s, std::function<cplx(cplx)> f, double p) {
            MembershipVerdict v = ap_norm_rings(s, f, p);
            return py::make_tuple(std::string(to_string(v.status)), v.fitted_exponent, v.limit);
        },
        py::arg("scenario"), py::arg("f"), py::arg("p"));
}
