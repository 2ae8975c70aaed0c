#include "filippov/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "filippov/bifurcate.hpp"
#include "filippov/errors.hpp"
#include "filippov/gsp.hpp"
#include "filippov/integrate.hpp"
#include "filippov/normal_forms.hpp"
#include "filippov/sigma.hpp"
#include "filippov/svg.hpp"
#include "filippov/system.hpp"
#include "filippov/transition.hpp"

namespace filippov {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 1) throw ArgumentError("--n must be positive");
    if (n == 1) return {a};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    v.back() = b;
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot write '" + path + "'");
    return f;
}

std::string sidecar(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    p.replace_extension(suffix);
    return p.string();
}

struct Args {
    std::string transition = "cubic";

    std::string system_path;
    double y = 0.0;
    double tol = kDefaultSigmaTol;

    double ymin = -1.0;
    double ymax = 1.0;
    int n = 0;

    std::string normal_form;
    std::optional<double> lambda;
    std::string out;
    int n_theta = SlowManifoldOptions{}.n_theta;
    int n_y = SlowManifoldOptions{}.n_y;

    double x0 = 0.0;
    double y0 = 0.0;
    double tmax = 0.0;
    bool regularized = false;
    double eps = 1e-3;
    std::string escape = "stop";
    std::string events;
    double max_step = IntegrationOptions{}.max_step;

    std::optional<double> eps_unfold;
    std::vector<double> y0_range;
    bool numeric = false;

    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::string csv;

    std::string kind;
    std::vector<std::string> inputs;
    std::optional<double> xlo, xhi, ylo, yhi;
};

void classify_cmd(const Args& a, std::ostream& out) {
    NonSmoothSystem sys = load_system(a.system_path);
    if (a.lambda) sys = sys.with_param(kLambda, *a.lambda);
    out << to_json(classify_sigma_point(sys, a.y, a.tol)).dump(2) << '\n';
}

void regions_cmd(const Args& a, std::ostream& out) {
    NonSmoothSystem sys = load_system(a.system_path);
    if (a.lambda) sys = sys.with_param(kLambda, *a.lambda);
    if (!(a.ymax > a.ymin)) throw ArgumentError("--ymax must exceed --ymin");
    if (a.n < 2) throw ArgumentError("--n must be at least 2");
    out << "y,region,class\n";
    for (double y : linspace(a.ymin, a.ymax, a.n)) {
        out << fmt(y) << ',' << to_string(region_of(sys, y, a.tol)) << ',' << classify_sigma_point(sys, y, a.tol).name()
            << '\n';
    }
}

void slow_manifold_cmd(const Args& a, const TransitionFunction& tf, std::ostream& out) {
    NonSmoothSystem sys;
    if (!a.system_path.empty()) {
        sys = load_system(a.system_path);
        if (a.lambda) sys = sys.with_param(kLambda, *a.lambda);
    } else {
        if (a.normal_form.empty()) throw ArgumentError("slow-manifold needs --normal-form or --system");
        if (!a.lambda) throw ArgumentError("slow-manifold needs --lambda");
        sys = make_normal_form(parse_normal_form_kind(a.normal_form), *a.lambda);
    }
    SlowManifoldOptions opts;
    opts.n_theta = a.n_theta;
    opts.n_y = a.n_y;
    const SlowManifold sm = slow_manifold(sys, tf, opts);
    if (a.out.empty()) {
        write_slow_manifold_csv(sm, out);
        return;
    }
    auto csv = open_out(a.out);
    write_slow_manifold_csv(sm, csv);
    auto js = open_out(sidecar(a.out, ".json"));
    js << slow_manifold_to_json(sm).dump(2) << '\n';
}

int simulate_cmd(const Args& a, const TransitionFunction& tf, std::ostream& out, std::ostream& err) {
    NonSmoothSystem sys = load_system(a.system_path);
    if (a.lambda) sys = sys.with_param(kLambda, *a.lambda);
    if (!(a.tmax > 0)) throw ArgumentError("--tmax must be positive");
    IntegrationOptions opts;
    opts.max_step = a.max_step;
    if (a.escape == "upper") {
        opts.escape = EscapeChoice::Upper;
    } else if (a.escape == "lower") {
        opts.escape = EscapeChoice::Lower;
    }
    Trajectory traj;
    int code = 0;
    try {
        if (a.regularized) {
            if (!(a.eps > 0)) throw ArgumentError("--eps must be positive");
            traj = integrate_regularized(sys, tf, a.eps, {a.x0, a.y0}, a.tmax, opts);
        } else {
            traj = integrate_filippov(sys, {a.x0, a.y0}, a.tmax, opts);
        }
    } catch (const IntegrationError& e) {
        err << "numerical failure: " << e.what() << '\n';
        traj = e.partial();
        code = 3;
    }
    std::string events = a.events;
    if (a.out.empty()) {
        write_trajectory_csv(traj, out);
    } else {
        auto csv = open_out(a.out);
        write_trajectory_csv(traj, csv);
        if (events.empty()) events = sidecar(a.out, ".events.json");
    }
    if (!events.empty()) {
        auto js = open_out(events);
        js << events_to_json(traj).dump(2) << '\n';
    }
    return code;
}

void return_map_cmd(const Args& a, std::ostream& out) {
    if (!a.lambda) throw ArgumentError("return-map needs --lambda");
    if (a.y0_range.size() != 2) throw ArgumentError("--y0-range takes two values");
    const double eps = a.eps_unfold.value_or(0.0);
    NonSmoothSystem sys = make_normal_form(NormalFormKind::FoldFoldElliptic, *a.lambda, a.eps_unfold);
    out << "y0,y_out,t_upper,t_lower,domain_ok\n";
    for (double y0 : linspace(a.y0_range[0], a.y0_range[1], a.n)) {
        const ReturnMapResult r = a.numeric ? numeric_return_map(sys, y0) : elliptic_return_map(*a.lambda, eps, y0);
        out << fmt(y0) << ',' << fmt(r.y_out) << ',' << fmt(r.t_upper) << ',' << fmt(r.t_lower) << ','
            << (r.domain_ok ? "true" : "false") << '\n';
    }
}

void sweep_cmd(const Args& a, const TransitionFunction& tf, std::ostream& out) {
    if (a.normal_form.empty()) throw ArgumentError("sweep needs --normal-form");
    if (a.n < 2) throw ArgumentError("--n must be at least 2");
    if (!(a.lambda_max > a.lambda_min)) throw ArgumentError("--lambda-max must exceed --lambda-min");
    SweepOptions opts;
    opts.tf = tf;
    const auto report = sweep(parse_normal_form_kind(a.normal_form), linspace(a.lambda_min, a.lambda_max, a.n), opts);
    if (a.out.empty()) {
        out << report_to_json(report).dump(2) << '\n';
    } else {
        auto js = open_out(a.out);
        js << report_to_json(report).dump(2) << '\n';
    }
    if (!a.csv.empty()) {
        auto csv = open_out(a.csv);
        write_report_csv(report, csv);
    }
}

void plot_cmd(const Args& a) {
    PlotSpec spec;
    spec.kind = parse_plot_kind(a.kind);
    spec.inputs = a.inputs;
    spec.output = a.out;
    if (a.xlo || a.xhi) {
        if (!a.xlo || !a.xhi) throw ArgumentError("--xmin and --xmax go together");
        spec.x = Window{*a.xlo, *a.xhi};
    }
    if (a.ylo || a.yhi) {
        if (!a.ylo || !a.yhi) throw ArgumentError("--ymin and --ymax go together");
        spec.y = Window{*a.ylo, *a.yhi};
    }
    plot(spec);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Args a;
    CLI::App app{"Filippov planar systems: classification, regularization, slow manifolds, sweeps", "filippov"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--transition", a.transition, "transition function")
        ->check(CLI::IsMember({"cubic", "smooth-exp"}))
        ->capture_default_str();

    auto* classify = app.add_subcommand("classify", "classify a point of Sigma (JSON)");
    classify->add_option("--system", a.system_path, "system JSON file")->required();
    classify->add_option("--y", a.y, "point (0, y) on Sigma")->required();
    classify->add_option("--tol", a.tol, "sign tolerance")->capture_default_str();
    classify->add_option("--lambda", a.lambda, "override lambda");

    auto* regions = app.add_subcommand("regions", "region partition of Sigma (CSV)");
    regions->add_option("--system", a.system_path, "system JSON file")->required();
    regions->add_option("--ymin", a.ymin)->required();
    regions->add_option("--ymax", a.ymax)->required();
    regions->add_option("--n", a.n, "number of samples")->required();
    regions->add_option("--tol", a.tol, "sign tolerance")->capture_default_str();
    regions->add_option("--lambda", a.lambda, "override lambda");

    auto* sm = app.add_subcommand("slow-manifold", "slow manifold of the blown-up regularization (CSV + JSON)");
    sm->add_option("--normal-form", a.normal_form, "normal-form kind");
    sm->add_option("--lambda", a.lambda);
    sm->add_option("--system", a.system_path, "system JSON file instead of a normal form");
    sm->add_option("--out", a.out, "CSV path; a .json summary is written next to it");
    sm->add_option("--n-theta", a.n_theta)->capture_default_str();
    sm->add_option("--n-y", a.n_y)->capture_default_str();

    auto* sim = app.add_subcommand("simulate", "Filippov or regularized orbit (CSV t,x,y,mode)");
    sim->add_option("--system", a.system_path, "system JSON file")->required();
    sim->add_option("--x0", a.x0)->required();
    sim->add_option("--y0", a.y0)->required();
    sim->add_option("--tmax", a.tmax)->required();
    sim->add_flag("--regularized", a.regularized, "integrate the eps-regularization");
    sim->add_option("--eps", a.eps)->capture_default_str();
    sim->add_option("--escape", a.escape, "continuation at escaping points")
        ->check(CLI::IsMember({"stop", "upper", "lower"}))
        ->capture_default_str();
    sim->add_option("--max-step", a.max_step)->capture_default_str();
    sim->add_option("--lambda", a.lambda, "override lambda");
    sim->add_option("--out", a.out, "CSV path");
    sim->add_option("--events", a.events, "events JSON path");

    auto* rm = app.add_subcommand("return-map", "first return map of the elliptic fold-fold (CSV)");
    rm->add_option("--lambda", a.lambda)->required();
    rm->add_option("--eps-unfold", a.eps_unfold);
    rm->add_option("--y0-range", a.y0_range)->expected(2)->required();
    rm->add_option("--n", a.n)->required();
    rm->add_flag("--numeric", a.numeric, "integrate instead of the closed form");

    auto* sw = app.add_subcommand("sweep", "bifurcation sweep over lambda (JSON)");
    sw->add_option("--normal-form", a.normal_form)->required();
    sw->add_option("--lambda-min", a.lambda_min)->required();
    sw->add_option("--lambda-max", a.lambda_max)->required();
    sw->add_option("--n", a.n)->required();
    sw->add_option("--out", a.out, "JSON path");
    sw->add_option("--csv", a.csv, "diagram CSV path");

    auto* nf = app.add_subcommand("normal-form", "write a normal-form system file (JSON)");
    nf->add_option("--kind", a.normal_form)->required();
    nf->add_option("--lambda", a.lambda)->required();
    nf->add_option("--eps-unfold", a.eps_unfold);

    auto* pl = app.add_subcommand("plot", "render CSV output as SVG");
    pl->add_option("--kind", a.kind)->check(CLI::IsMember({"slow-manifold", "phase-portrait", "bifurcation"}))->required();
    pl->add_option("--in", a.inputs, "input CSV file(s)")->required();
    pl->add_option("--out", a.out, "SVG path")->required();
    pl->add_option("--xmin", a.xlo);
    pl->add_option("--xmax", a.xhi);
    pl->add_option("--ymin", a.ylo);
    pl->add_option("--ymax", a.yhi);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        const TransitionFunction tf(parse_transition_kind(a.transition));
        if (classify->parsed()) classify_cmd(a, out);
        if (regions->parsed()) regions_cmd(a, out);
        if (sm->parsed()) slow_manifold_cmd(a, tf, out);
        if (sim->parsed()) return simulate_cmd(a, tf, out, err);
        if (rm->parsed()) return_map_cmd(a, out);
        if (sw->parsed()) sweep_cmd(a, tf, out);
        if (pl->parsed()) plot_cmd(a);
        if (nf->parsed()) {
            out << system_to_json(make_normal_form(parse_normal_form_kind(a.normal_form), *a.lambda, a.eps_unfold)).dump(2)
                << '\n';
        }
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace filippov
