#include "filippov/bifurcate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "filippov/errors.hpp"

namespace filippov {

namespace {

int sgn(double v) { return (v > 0) - (v < 0); }

bool is_cusp(SigmaLabel l) {
    return l == SigmaLabel::CuspNaturalX || l == SigmaLabel::CuspInverseX || l == SigmaLabel::CuspNaturalY ||
           l == SigmaLabel::CuspInverseY;
}

template <class F>
double bisect(F f, double lo, double hi) {
    const int s_lo = sgn(f(lo));
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sgn(f(mid)) == s_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void add_singularity(std::vector<SigmaSingularity>& out, double y, const SigmaPointClass& c) {
    for (const auto& s : out) {
        if (std::abs(s.y - y) < 1e-9) return;
    }
    out.push_back({y, c.name()});
}

std::vector<std::string> singularity_stability(const SweepRecord& r) {
    std::vector<std::string> out;
    for (const auto s : r.stabilities()) out.push_back(to_string(s));
    for (const auto& s : r.singularities) {
        if (s.name.rfind("PseudoEquilibrium", 0) == 0) out.push_back(s.name);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool stability_on_sigma_differs(const SweepRecord& a, const SweepRecord& b) {
    for (std::size_t j = 0; j < a.regions.size() && j < b.regions.size(); ++j) {
        const auto ra = a.regions[j];
        const auto rb = b.regions[j];
        if ((ra == SigmaLabel::Sliding && rb == SigmaLabel::Escaping) ||
            (ra == SigmaLabel::Escaping && rb == SigmaLabel::Sliding)) {
            return true;
        }
    }
    for (const auto l : {SigmaLabel::Sliding, SigmaLabel::Escaping}) {
        if ((a.count(l) > 0) != (b.count(l) > 0)) return true;
    }
    return false;
}

bool slow_flow_sign_differs(const SweepRecord& a, const SweepRecord& b) {
    auto sa = a.beta_signatures;
    auto sb = b.beta_signatures;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa != sb;
}

}  // namespace

std::string to_string(Behavior b) {
    switch (b) {
        case Behavior::StabilityOnSigma: return "StabilityOnSigma";
        case Behavior::SlowFlowSign: return "SlowFlowSign";
        case Behavior::SigmaSingularityStability: return "SigmaSingularityStability";
        case Behavior::SewingOrientation: return "SewingOrientation";
    }
    return "?";
}

std::vector<Stability> SweepRecord::stabilities() const {
    std::vector<Stability> out;
    for (const auto& cp : critical_points) out.push_back(cp.stability);
    std::sort(out.begin(), out.end());
    return out;
}

int SweepRecord::count(SigmaLabel label) const {
    return static_cast<int>(std::count(regions.begin(), regions.end(), label));
}

bool BifurcationReport::fires(Behavior b) const {
    return std::any_of(detected_changes.begin(), detected_changes.end(),
                       [b](const DetectedChange& c) { return c.behavior == b; });
}

bool BifurcationReport::fires_between(Behavior b, double lo, double hi) const {
    return std::any_of(detected_changes.begin(), detected_changes.end(), [&](const DetectedChange& c) {
        return c.behavior == b && c.lambda_lo >= lo && c.lambda_hi <= hi;
    });
}

SweepRecord sweep_record(const NonSmoothSystem& system, double lambda, const std::vector<double>& ys,
                         const SweepOptions& opts) {
    SweepRecord r;
    r.lambda = lambda;
    const double tol = opts.sigma_tol;
    const SigmaPointClass organizing = classify_sigma_point(system, 0.0, tol);
    r.organizing_class = organizing.name();
    r.degenerate = organizing.label == SigmaLabel::FoldFold || organizing.label == SigmaLabel::BoundaryEquilibrium ||
                   organizing.label == SigmaLabel::Degenerate || is_cusp(organizing.label);

    auto xf = [&](double y) { return system.upper().px()(0.0, y); };
    auto yf = [&](double y) { return system.lower().px()(0.0, y); };
    r.regions.reserve(ys.size());
    for (double y : ys) r.regions.push_back(region_of(system, y, tol));

    for (std::size_t j = 0; j < ys.size(); ++j) {
        if (r.regions[j] == SigmaLabel::Degenerate) {
            add_singularity(r.singularities, ys[j], classify_sigma_point(system, ys[j], tol));
            continue;
        }
        if (r.regions[j] == SigmaLabel::Sewing) {
            const int s = sgn(xf(ys[j]));
            if (std::find(r.sewing_orientations.begin(), r.sewing_orientations.end(), s) ==
                r.sewing_orientations.end()) {
                r.sewing_orientations.push_back(s);
            }
        }
        if (j + 1 >= ys.size() || r.regions[j + 1] == SigmaLabel::Degenerate) continue;
        const double a = ys[j];
        const double b = ys[j + 1];
        if (sgn(xf(a)) != sgn(xf(b))) {
            const double y = bisect(xf, a, b);
            add_singularity(r.singularities, y, classify_sigma_point(system, y, tol));
        }
        if (sgn(yf(a)) != sgn(yf(b))) {
            const double y = bisect(yf, a, b);
            add_singularity(r.singularities, y, classify_sigma_point(system, y, tol));
        }
        const bool filippov_a = r.regions[j] == SigmaLabel::Sliding || r.regions[j] == SigmaLabel::Escaping;
        if (filippov_a && r.regions[j + 1] == r.regions[j]) {
            auto v = [&](double y) { return sliding_field_value(system, y); };
            if (sgn(v(a)) != sgn(v(b))) {
                const double y = bisect(v, a, b);
                const auto c = classify_pseudo_equilibrium(system, y, std::max(tol, 1e-8));
                add_singularity(r.singularities, y, c);
            }
        }
    }
    std::sort(r.sewing_orientations.begin(), r.sewing_orientations.end());
    std::sort(r.singularities.begin(), r.singularities.end(),
              [](const SigmaSingularity& p, const SigmaSingularity& q) { return p.y < q.y; });

    SlowManifoldOptions mo;
    mo.y_min = opts.y_min;
    mo.y_max = opts.y_max;
    mo.n_theta = opts.n_theta;
    mo.n_y = opts.n_y;
    mo.rtol = opts.rtol;
    const SlowManifold sm = slow_manifold(system, opts.tf, mo);
    r.branch_count = sm.nondegenerate_branch_count();
    for (const auto& v : sm.verticals) r.critical_lines += v.critical_line ? 1 : 0;
    for (const auto& b : sm.branches) {
        for (const auto& cp : b.critical_points) {
            if (cp.stability != Stability::Degenerate) r.critical_points.push_back(cp);
        }
        if (b.horizontal()) continue;
        auto samples = b.samples;
        std::sort(samples.begin(), samples.end(), [](const auto& p, const auto& q) { return p.y < q.y; });
        std::vector<int> sig;
        for (const auto& s : samples) {
            const int v = std::abs(s.ydot) <= 1e-12 * (1.0 + std::abs(s.y)) ? 0 : sgn(s.ydot);
            if (v != 0 && (sig.empty() || sig.back() != v)) sig.push_back(v);
        }
        r.beta_signatures.push_back(sig);
    }
    return r;
}

BifurcationReport sweep(const NonSmoothSystem& family, const std::vector<double>& lambda_grid,
                        const SweepOptions& opts, const std::string& name) {
    if (lambda_grid.size() < 2) throw ArgumentError("lambda grid needs at least 2 points");
    if (!std::is_sorted(lambda_grid.begin(), lambda_grid.end()) ||
        std::adjacent_find(lambda_grid.begin(), lambda_grid.end()) != lambda_grid.end()) {
        throw ArgumentError("lambda grid must be strictly increasing");
    }
    if (opts.n_sigma < 2 || !(opts.y_min < opts.y_max)) throw ArgumentError("invalid Sigma window");
    BifurcationReport rep;
    rep.kind = name;
    rep.lambda_grid = lambda_grid;
    const double dy = (opts.y_max - opts.y_min) / (opts.n_sigma - 1);
    for (int j = 0; j < opts.n_sigma; ++j) rep.y_samples.push_back(opts.y_min + j * dy);
    rep.y_samples.back() = opts.y_max;

    for (double lambda : lambda_grid) {
        rep.records.push_back(sweep_record(family.with_param(kLambda, lambda), lambda, rep.y_samples, opts));
    }

    std::vector<std::size_t> regular;
    for (std::size_t k = 0; k < rep.records.size(); ++k) {
        if (!rep.records[k].degenerate) regular.push_back(k);
    }
    for (std::size_t m = 0; m + 1 < regular.size(); ++m) {
        const auto& a = rep.records[regular[m]];
        const auto& b = rep.records[regular[m + 1]];
        auto add = [&](Behavior beh) { rep.detected_changes.push_back({a.lambda, b.lambda, beh}); };
        if (stability_on_sigma_differs(a, b)) add(Behavior::StabilityOnSigma);
        if (slow_flow_sign_differs(a, b)) add(Behavior::SlowFlowSign);
        if (singularity_stability(a) != singularity_stability(b)) add(Behavior::SigmaSingularityStability);
        if (a.sewing_orientations != b.sewing_orientations) add(Behavior::SewingOrientation);
    }
    return rep;
}

BifurcationReport sweep(NormalFormKind kind, const std::vector<double>& lambda_grid, const SweepOptions& opts) {
    return sweep(make_normal_form(kind, lambda_grid.empty() ? 0.0 : lambda_grid.front()), lambda_grid, opts,
                 std::string(to_string(kind)));
}

nlohmann::json report_to_json(const BifurcationReport& report) {
    using nlohmann::json;
    json records = json::array();
    for (const auto& r : report.records) {
        json cps = json::array();
        for (const auto& cp : r.critical_points) {
            cps.push_back({{"theta", cp.theta},
                           {"rho", BlowupChart::rho_from_theta(cp.theta)},
                           {"y", cp.y},
                           {"stability", to_string(cp.stability)}});
        }
        json sing = json::array();
        for (const auto& s : r.singularities) sing.push_back({{"y", s.y}, {"class", s.name}});
        records.push_back({{"lambda", r.lambda},
                           {"degenerate", r.degenerate},
                           {"organizing_class", r.organizing_class},
                           {"regions",
                            {{"Sewing", r.count(SigmaLabel::Sewing)},
                             {"Sliding", r.count(SigmaLabel::Sliding)},
                             {"Escaping", r.count(SigmaLabel::Escaping)},
                             {"Tangency", r.count(SigmaLabel::Degenerate)}}},
                           {"sewing_orientations", r.sewing_orientations},
                           {"sigma_singularities", sing},
                           {"branch_count", r.branch_count},
                           {"critical_lines", r.critical_lines},
                           {"critical_points", cps},
                           {"beta_signatures", r.beta_signatures}});
    }
    json changes = json::array();
    for (const auto& c : report.detected_changes) {
        changes.push_back({{"lambda_lo", c.lambda_lo}, {"lambda_hi", c.lambda_hi}, {"behavior", to_string(c.behavior)}});
    }
    return {{"kind", report.kind},
            {"lambda_grid", report.lambda_grid},
            {"y_window", {report.y_samples.front(), report.y_samples.back()}},
            {"records", records},
            {"detected_changes", changes}};
}

void write_report_csv(const BifurcationReport& report, std::ostream& out) {
    out << "lambda,degenerate,branch_count,critical_points,attractors,repellers,critical_lines,sewing,sliding,"
           "escaping,sewing_orientation\n";
    char buf[64];
    for (const auto& r : report.records) {
        int att = 0;
        int rep = 0;
        for (const auto& cp : r.critical_points) {
            att += cp.stability == Stability::Attractor;
            rep += cp.stability == Stability::Repeller;
        }
        int orient = 0;
        for (int s : r.sewing_orientations) orient += s;
        std::snprintf(buf, sizeof(buf), "%.17g", r.lambda);
        out << buf << ',' << (r.degenerate ? 1 : 0) << ',' << r.branch_count << ',' << r.critical_points.size() << ','
            << att << ',' << rep << ',' << r.critical_lines << ',' << r.count(SigmaLabel::Sewing) << ','
            << r.count(SigmaLabel::Sliding) << ',' << r.count(SigmaLabel::Escaping) << ',' << orient << '\n';
    }
}

}  // namespace filippov
