#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "filippov/bifurcate.hpp"
#include "filippov/cli.hpp"
#include "filippov/errors.hpp"
#include "filippov/gsp.hpp"
#include "filippov/integrate.hpp"
#include "filippov/normal_forms.hpp"
#include "filippov/sigma.hpp"
#include "filippov/svg.hpp"
#include "filippov/system.hpp"

namespace py = pybind11;
using namespace filippov;

namespace {

TransitionFunction transition(const std::string& name) { return TransitionFunction(parse_transition_kind(name)); }

std::string trajectory_csv(const Trajectory& tr) {
    std::ostringstream out;
    write_trajectory_csv(tr, out);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_filippov, m) {
    m.doc() = "Filippov planar systems (C++ core)";

    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<NonSmoothSystem>(m, "System")
        .def_static("from_json", [](const std::string& text) { return system_from_json(nlohmann::json::parse(text)); })
        .def_static("load", &load_system)
        .def("to_json", [](const NonSmoothSystem& s) { return system_to_json(s).dump(); })
        .def("with_param", &NonSmoothSystem::with_param)
        .def("reversed", &NonSmoothSystem::reversed)
        .def("upper", [](const NonSmoothSystem& s, double x, double y) {
            const auto v = s.upper()({x, y});
            return py::make_tuple(v.x, v.y);
        })
        .def("lower", [](const NonSmoothSystem& s, double x, double y) {
            const auto v = s.lower()({x, y});
            return py::make_tuple(v.x, v.y);
        });

    m.def("normal_form_kinds", [] {
        std::vector<std::string> out;
        for (auto k : all_normal_form_kinds()) out.emplace_back(to_string(k));
        return out;
    });
    m.def(
        "normal_form",
        [](const std::string& kind, double lambda, std::optional<double> eps_unfold) {
            return make_normal_form(parse_normal_form_kind(kind), lambda, eps_unfold);
        },
        py::arg("kind"), py::arg("lambda_"), py::arg("eps_unfold") = py::none());

    m.def(
        "classify",
        [](const NonSmoothSystem& s, double y, double tol) { return to_json(classify_sigma_point(s, y, tol)).dump(); },
        py::arg("system"), py::arg("y"), py::arg("tol") = kDefaultSigmaTol);
    m.def(
        "region", [](const NonSmoothSystem& s, double y, double tol) { return to_string(region_of(s, y, tol)); },
        py::arg("system"), py::arg("y"), py::arg("tol") = kDefaultSigmaTol);
    m.def("sliding_field", [](const NonSmoothSystem& s, double y) { return sliding_field(s, y).value; });

    m.def(
        "slow_manifold",
        [](const NonSmoothSystem& s, const std::string& tf, int n_theta, int n_y, double y_min, double y_max) {
            SlowManifoldOptions o;
            o.n_theta = n_theta;
            o.n_y = n_y;
            o.y_min = y_min;
            o.y_max = y_max;
            const auto sm = slow_manifold(s, transition(tf), o);
            std::ostringstream csv;
            write_slow_manifold_csv(sm, csv);
            return py::make_tuple(slow_manifold_to_json(sm).dump(), csv.str());
        },
        py::arg("system"), py::arg("transition") = "cubic", py::arg("n_theta") = 801, py::arg("n_y") = 1001,
        py::arg("y_min") = -50.0, py::arg("y_max") = 50.0);

    m.def(
        "simulate",
        [](const NonSmoothSystem& s, double x0, double y0, double t_max, std::optional<double> eps,
           const std::string& tf, double max_step) {
            IntegrationOptions o;
            o.max_step = max_step;
            const Trajectory tr = eps ? integrate_regularized(s, transition(tf), *eps, {x0, y0}, t_max, o)
                                      : integrate_filippov(s, {x0, y0}, t_max, o);
            return py::make_tuple(trajectory_csv(tr), events_to_json(tr).dump());
        },
        py::arg("system"), py::arg("x0"), py::arg("y0"), py::arg("t_max"), py::arg("eps") = py::none(),
        py::arg("transition") = "cubic", py::arg("max_step") = 0.05);

    m.def(
        "return_map",
        [](double lambda, double eps_unfold, double y0, bool numeric) {
            const auto r = numeric ? numeric_return_map(make_normal_form(NormalFormKind::FoldFoldElliptic, lambda), y0)
                                   : elliptic_return_map(lambda, eps_unfold, y0);
            return py::make_tuple(r.y_out, r.t_upper, r.t_lower, r.domain_ok);
        },
        py::arg("lambda_"), py::arg("eps_unfold") = 0.0, py::arg("y0"), py::arg("numeric") = false);

    m.def(
        "sweep",
        [](const std::string& kind, const std::vector<double>& grid) {
            return report_to_json(sweep(parse_normal_form_kind(kind), grid)).dump();
        },
        py::arg("kind"), py::arg("lambdas"));

    m.def(
        "render_svg",
        [](const std::string& kind, const std::vector<std::string>& csv_texts) {
            PlotSpec spec;
            spec.kind = parse_plot_kind(kind);
            std::vector<CsvTable> tables;
            for (const auto& t : csv_texts) tables.push_back(parse_csv(t));
            return render_svg(spec, tables);
        },
        py::arg("kind"), py::arg("csv_texts"));

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"filippov"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
