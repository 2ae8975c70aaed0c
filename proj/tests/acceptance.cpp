// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "filippov/bifurcate.hpp"
#include "filippov/gsp.hpp"
#include "filippov/integrate.hpp"
#include "filippov/normal_forms.hpp"
#include "filippov/sigma.hpp"
#include "oracles.hpp"

using namespace filippov;
using std::numbers::pi;
using K = NormalFormKind;

namespace {

const TransitionFunction cubic(TransitionKind::Cubic);

/// Collects failed sub-checks with a short reason each.
struct Verdict {
    std::vector<std::string> failures;
    int checks = 0;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures.size() < 8) failures.push_back(what);
        else if (!ok) failures.back() = "...";
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string kname(K k) { return std::string(to_string(k)); }

SlowManifold manifold(K k, double lambda, SlowManifoldOptions o = {}) {
    return slow_manifold(make_normal_form(k, lambda), cubic, o);
}

double phi_at(double theta) { return oracle::cubic_phi(1.0 / std::tan(theta)); }

int count(const std::vector<CriticalPoint>& cps, Stability s) {
    return static_cast<int>(std::count_if(cps.begin(), cps.end(), [&](const auto& c) { return c.stability == s; }));
}

void branches_match_oracle(Verdict& v, K k, double lambda) {
    const auto m = manifold(k, lambda);
    v.expect(!m.branches.empty(), kname(k) + " lambda=" + fmt(lambda) + ": no branch");
    double worst = 0.0;
    for (const auto& b : m.branches) {
        for (const auto& s : b.samples) {
            worst = std::max(worst, oracle::nearest_distance(oracle::manifold_y(k, lambda, s.theta), s.y));
        }
    }
    v.expect(worst < 1e-6, kname(k) + " lambda=" + fmt(lambda) + ": branch error " + fmt(worst));
}

// 1
void sliding_oracle(Verdict& v) {
    std::mt19937 rng(20240601);
    std::uniform_real_distribution<double> u(-3, 3);
    int systems = 0;
    double worst = 0.0;
    while (systems < 200) {
        const NonSmoothSystem s(
            ParametricField{oracle::random_polynomial(rng, 2), oracle::random_polynomial(rng, 2)},
            ParametricField{oracle::random_polynomial(rng, 2), oracle::random_polynomial(rng, 2)});
        std::vector<double> ys;
        for (int tries = 0; tries < 2000 && ys.size() < 20; ++tries) {
            const double y = u(rng);
            const double a = s.upper()({0, y}).x, b = s.lower()({0, y}).x;
            if (a * b < 0 && std::abs(a) > 1e-3 && std::abs(b) > 1e-3) ys.push_back(y);
        }
        if (ys.size() < 20) continue;
        ++systems;
        for (double y : ys) worst = std::max(worst, std::abs(sliding_field(s, y).value - oracle::brute_sliding(s, y)));
    }
    v.expect(worst <= 1e-9, "max deviation " + fmt(worst));
}

// 2
void regular_saddle(Verdict& v) {
    const auto lo = manifold(K::RegularSaddle, -0.5), hi = manifold(K::RegularSaddle, 0.5);
    v.expect(lo.branches.size() == 1 && hi.branches.size() == 1, "branch count");
    if (lo.branches.size() != 1 || hi.branches.size() != 1) return;
    const auto &a = lo.branches[0].samples, &b = hi.branches[0].samples;
    v.expect(a.size() == b.size(), "sample grids differ");
    double diff = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) diff = std::max(diff, std::abs(a[i].y - b[i].y));
    v.expect(diff < 1e-8, "lambda dependence " + fmt(diff));
    for (const auto* m : {&lo, &hi}) {
        const auto& br = m->branches[0];
        v.expect(br.start.kind == EndpointKind::AsymptoteInfinity && br.start.sign == 1, "start " + br.start.label());
        v.expect(br.end.kind == EndpointKind::FiniteLimit && std::abs(br.end.y) < 1e-3, "end " + br.end.label());
        v.expect(std::abs(br.end.theta - (3 * pi / 4 - 1e-3)) < 1e-9, "end theta");
    }
    for (double l : {-0.5, -0.2, 0.0, 0.2, 0.5, 0.9}) {
        const auto cps = manifold(K::RegularSaddle, l).critical_points();
        if (l <= 0) {
            v.expect(cps.empty(), "critical point at lambda=" + fmt(l));
        } else {
            v.expect(cps.size() == 1, "critical points at lambda=" + fmt(l) + ": " + std::to_string(cps.size()));
            for (const auto& c : cps) {
                v.expect(std::abs(phi_at(c.theta) - (l - 1) / (l + 1)) < 1e-8, "location at lambda=" + fmt(l));
                v.expect(c.stability == Stability::Repeller, "stability at lambda=" + fmt(l));
            }
        }
    }
}

// 3
void regular_focus(Verdict& v) {
    for (double l : {-0.4, 0.0, 0.4}) {
        const auto m = manifold(K::RegularFocus, l);
        v.expect(m.branches.size() == 1, "branch count at lambda=" + fmt(l));
        if (m.branches.size() != 1) continue;
        const auto& e = m.branches[0].end;
        v.expect(e.kind == EndpointKind::FiniteLimit && std::abs(e.y + l) < 1e-6,
                 "limit at lambda=" + fmt(l) + ": " + e.label());
    }
    for (double l : {-0.4, -0.2, 0.2, 0.4}) {
        const auto cps = manifold(K::RegularFocus, l).critical_points();
        const bool want = l > 0;
        const bool got = cps.size() == 1 && cps[0].stability == Stability::Attractor;
        v.expect(want ? got : cps.empty(), "lambda=" + fmt(l) + ": " + std::to_string(cps.size()) +
                                               " critical points (beta = -lambda(1-phi) on the manifold)");
    }
}

// 4
void regular_cusp(Verdict& v) {
    for (double l : {-0.2, 0.0, 0.3}) branches_match_oracle(v, K::RegularCusp, l);
    const double l = -0.2;
    const double theta_star = oracle::theta_for_phi((1 + l) / (l - 1));
    const auto m = manifold(K::RegularCusp, l);
    v.expect(m.branches.size() == 2, "lambda=-0.2 branch count");
    for (const auto& b : m.branches) {
        v.expect(std::abs(b.end.theta - theta_star) < 1e-6, "fold theta " + fmt(b.end.theta));
        v.expect(std::abs(b.end.y) < 1e-3, "fold y " + fmt(b.end.y));
    }
    if (m.branches.size() == 2) v.expect(m.branches[0].end.theta == m.branches[1].end.theta, "fold not common");
    const BlowupLocus locus(make_normal_form(K::RegularCusp, l), cubic);
    for (double t = theta_star + 1e-3; t < 3 * pi / 4 - 1e-3; t += 1e-3) {
        // G = (1+phi)/2 + (1-phi)/2 (l - y^2) < 0 at its maximum y = 0 means no root
        v.expect(locus.G(t, 0.0) < 0.0, "root past the fold at theta=" + fmt(t));
    }
    // y grows like 1/sqrt(1 - phi) towards pi/4; widen the window so the branches are not cut by it
    SlowManifoldOptions o;
    o.y_min = -1000;
    o.y_max = 1000;
    for (double lp : {0.0, 0.2, 0.5}) {
        const auto mp = manifold(K::RegularCusp, lp, o);
        v.expect(mp.branches.size() == 2, "lambda=" + fmt(lp) + " branch count");
        for (const auto& b : mp.branches) {
            v.expect(b.samples.front().theta == o.theta_min && b.samples.back().theta == o.theta_max,
                     "lambda=" + fmt(lp) + " branch does not span the window");
            bool graph = true, monotone_up = true, monotone_down = true;
            for (std::size_t i = 1; i < b.samples.size(); ++i) {
                graph = graph && b.samples[i].theta > b.samples[i - 1].theta;
                monotone_up = monotone_up && b.samples[i].y >= b.samples[i - 1].y;
                monotone_down = monotone_down && b.samples[i].y <= b.samples[i - 1].y;
            }
            v.expect(graph && (monotone_up || monotone_down), "lambda=" + fmt(lp) + " not a monotone graph");
        }
    }
    for (double lc : {-0.2, 0.0, 0.3}) {
        const auto cps = manifold(K::RegularCusp, lc).critical_points();
        v.expect(count(cps, Stability::Repeller) == 1, "repellers at lambda=" + fmt(lc));
        for (const auto& c : cps) {
            if (c.stability == Stability::Repeller) v.expect(std::abs(phi_at(c.theta)) < 1e-8, "repeller location");
        }
    }
}

// 5
void hyperbolic(Verdict& v) {
    for (double l : {-0.3, 0.3}) {
        branches_match_oracle(v, K::FoldFoldHyperbolic, l);
        const auto m = manifold(K::FoldFoldHyperbolic, l);
        int asymptotes = 0;
        for (const auto& b : m.branches) {
            for (const auto* e : {&b.start, &b.end}) {
                if (e->kind != EndpointKind::AsymptoteInfinity) continue;
                ++asymptotes;
                v.expect(std::abs(e->theta - pi / 2) < 1e-2, "asymptote theta " + fmt(e->theta));
                const int expected = (e->theta < pi / 2) == (l > 0) ? 1 : -1;
                v.expect(e->sign == expected, "divergence sign at lambda=" + fmt(l));
            }
            for (const auto& s : b.samples) v.expect(s.ydot == -1.0, "beta != -1");
        }
        v.expect(asymptotes == 2, "asymptotes at lambda=" + fmt(l) + ": " + std::to_string(asymptotes));
        v.expect(m.critical_points().empty(), "critical points at lambda=" + fmt(l));
    }
    const auto sys = make_normal_form(K::FoldFoldHyperbolic, 0.0);
    const BlowupLocus locus(sys, cubic);
    double line = 0.0, column = 0.0;
    for (double t = pi / 4 + 1e-3; t < 3 * pi / 4; t += 1e-3) line = std::max(line, std::abs(locus.G(t, 0.0)));
    for (double y = -10; y <= 10; y += 0.01) column = std::max(column, std::abs(locus.G(pi / 2, y)));
    v.expect(line < 1e-10, "line residual " + fmt(line));
    v.expect(column < 1e-10, "column residual " + fmt(column));
    const auto m0 = manifold(K::FoldFoldHyperbolic, 0.0);
    bool has_line = false;
    for (const auto& b : m0.branches) has_line = has_line || (b.horizontal() && std::abs(b.y_max()) < 1e-10);
    v.expect(has_line, "lambda=0 line not found");
    v.expect(m0.verticals.size() == 1 && std::abs(m0.verticals[0].theta - pi / 2) < 1e-9 &&
                 m0.verticals[0].max_residual < 1e-10,
             "lambda=0 column not found");
    v.expect(m0.critical_points().empty(), "critical points at lambda=0");
}

// 6
void parabolic_visible(Verdict& v) {
    const auto m = manifold(K::FoldFoldParabolicVisible, 0.0);
    v.expect(m.verticals.size() == 1, "vertical components: " + std::to_string(m.verticals.size()));
    for (const auto& c : m.verticals) {
        v.expect(std::abs(c.theta - pi / 2) < 1e-9, "column theta " + fmt(c.theta));
        v.expect(c.critical_line && c.max_abs_beta < 1e-10, "beta on column " + fmt(c.max_abs_beta));
    }
    const BlowupLocus locus(make_normal_form(K::FoldFoldParabolicVisible, 0.0), cubic);
    double beta = 0.0;
    for (double y = -10; y <= 10; y += 0.01) beta = std::max(beta, std::abs(locus.beta(pi / 2, y)));
    v.expect(beta < 1e-10, "independent beta check " + fmt(beta));
}

// 7
void invisible_and_elliptic(Verdict& v) {
    for (auto k : {K::FoldFoldParabolicInvisible, K::FoldFoldElliptic}) {
        for (double l : {-0.3, 0.3}) branches_match_oracle(v, k, l);
    }
    auto cps = manifold(K::FoldFoldElliptic, -0.4).critical_points();
    v.expect(cps.size() == 1 && cps[0].stability == Stability::Attractor, "lambda=-0.4 not a single attractor");
    cps = manifold(K::FoldFoldElliptic, 0.4).critical_points();
    v.expect(cps.size() == 1 && cps[0].stability == Stability::Repeller, "lambda=0.4 not a single repeller");
    const auto e0 = make_normal_form(K::FoldFoldElliptic, 0.0);
    for (double y = -1.0; y <= 1.0; y += 1e-3) {
        if (std::abs(y) < 1e-12) continue;
        v.expect(region_of(e0, y) == SigmaLabel::Sewing, "lambda=0 not sewing at y=" + fmt(y));
    }
    for (const auto& c : manifold(K::FoldFoldElliptic, 0.0).critical_points()) {
        v.expect(c.stability == Stability::Degenerate, "lambda=0 hyperbolic critical point");
    }
}

// 8
void return_maps(Verdict& v) {
    double worst = 0.0, worst_mult = 0.0;
    for (double l : {-0.4, -0.2, 0.0, 0.2, 0.4}) {
        const auto sys = make_normal_form(K::FoldFoldElliptic, l);
        const double hi = std::min(l - 0.01, 2 * l - 0.01), lo = l - 2;
        for (int i = 0; i < 50; ++i) {
            const double y0 = lo + (hi - lo) * i / 49.0;
            const auto r = numeric_return_map(sys, y0);
            v.expect(r.domain_ok, "domain at y0=" + fmt(y0));
            worst = std::max(worst, std::abs(r.y_out - (y0 - 2 * l)));
        }
        const double y0 = 0.5 * (lo + hi), h = 1e-3;
        const double m = (numeric_return_map(sys, y0 + h).y_out - numeric_return_map(sys, y0 - h).y_out) / (2 * h);
        worst_mult = std::max(worst_mult, std::abs(m - 1.0));
        // dyadic points: the closed-form difference quotient is exact
        const double d = 0.125, yd = std::floor(lo) - 1.0;
        const double mc = (elliptic_return_map(l, 0.0, yd + d).y_out - elliptic_return_map(l, 0.0, yd - d).y_out) / (2 * d);
        v.expect(mc == 1.0, "closed-form multiplier " + fmt(mc));
    }
    v.expect(worst < 1e-7, "numeric map error " + fmt(worst));
    v.expect(worst_mult < 1e-6, "numeric multiplier error " + fmt(worst_mult));
    for (double l : {-0.4, 0.1, 0.3}) {
        for (double e : {0.01, 0.1, 0.5}) {
            const auto fp = unfolded_fixed_point(l, e);
            v.expect(std::abs(fp.y + 2 * l * (1 - e) / e) < 1e-12, "fixed point lambda=" + fmt(l) + " eps=" + fmt(e));
            v.expect(std::abs(fp.multiplier - (1 - e)) < 1e-12, "multiplier eps=" + fmt(e));
            const auto r = elliptic_return_map(l, e, fp.y);
            if (r.domain_ok) v.expect(std::abs(r.y_out - fp.y) < 1e-12 * (1 + std::abs(fp.y)), "not fixed under the map");
        }
    }
}

// 9
void projections(Verdict& v) {
    for (auto k : {K::FoldFoldHyperbolic, K::FoldFoldParabolicVisible, K::FoldFoldParabolicInvisible,
                   K::FoldFoldElliptic}) {
        for (double l : {-0.3, 0.3}) {
            const auto sys = make_normal_form(k, l);
            const auto m = slow_manifold(sys, cubic);
            for (double y = -1.0; y <= 1.0; y += 0.005) {
                if (std::abs(y) < 2e-3 || std::abs(y - l) < 2e-3) continue;
                bool on = false;
                for (const auto& b : m.branches) on = on || (y >= b.y_min() && y <= b.y_max());
                const auto r = region_of(sys, y);
                v.expect(on == (r == SigmaLabel::Sliding || r == SigmaLabel::Escaping),
                         kname(k) + " lambda=" + fmt(l) + " y=" + fmt(y));
            }
        }
        const int neg = manifold(k, -0.3).nondegenerate_branch_count();
        const int zero = manifold(k, 0.0).nondegenerate_branch_count();
        const int pos = manifold(k, 0.3).nondegenerate_branch_count();
        v.expect(neg != zero && pos != zero, kname(k) + " branch counts " + std::to_string(neg) + "/" +
                                                 std::to_string(zero) + "/" + std::to_string(pos));
    }
}

// 10
struct Orbit {
    K kind;
    double lambda;
    Vec2 q0;
    double t_max;
    bool reversed = false;
};

void convergence(Verdict& v) {
    const std::vector<Orbit> orbits{
        {K::RegularSaddle, -0.3, {-0.1, -1}, 2},          {K::RegularSaddle, 0.3, {-0.1, -1}, 2},
        {K::RegularFocus, -0.3, {-0.1, 1}, 2},            {K::RegularFocus, 0.3, {-0.1, 1}, 2},
        {K::RegularCusp, -0.3, {0.2, 0}, 2, true},        {K::RegularCusp, 0.3, {-0.1, 0.3}, 2},
        {K::FoldFoldHyperbolic, -0.3, {0.2, -0.5}, 1.5},  {K::FoldFoldHyperbolic, 0.3, {0.2, -0.5}, 1.5},
        {K::FoldFoldParabolicVisible, -0.3, {0.2, -1.5}, 1}, {K::FoldFoldParabolicVisible, 0.3, {0.2, -1.5}, 1},
        {K::FoldFoldParabolicInvisible, -0.3, {0.2, 1}, 3.5}, {K::FoldFoldParabolicInvisible, 0.3, {0.2, 1}, 2.5},
        {K::FoldFoldElliptic, -0.3, {0.2, -1}, 2},        {K::FoldFoldElliptic, 0.3, {0.2, -1}, 2},
    };
    IntegrationOptions o;
    o.max_step = 1e-3;
    for (const auto& orb : orbits) {
        auto sys = make_normal_form(orb.kind, orb.lambda);
        if (orb.reversed) sys = sys.reversed();
        const auto ref = integrate_filippov(sys, orb.q0, orb.t_max, o);
        std::vector<double> d;
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            d.push_back(sup_distance(integrate_regularized(sys, cubic, eps, orb.q0, orb.t_max, o), ref));
        }
        const std::string tag = kname(orb.kind) + " lambda=" + fmt(orb.lambda);
        if (std::getenv("ACCEPTANCE_VERBOSE")) std::printf("  %s: %g %g %g (%zu samples)\n", tag.c_str(), d[0], d[1], d[2], ref.sample_count());
        v.expect(d[0] > d[1] && d[1] > d[2], tag + " not decreasing " + fmt(d[0]) + "," + fmt(d[1]) + "," + fmt(d[2]));
        const double r1 = d[0] / d[1], r2 = d[1] / d[2];
        v.expect(std::max(r1, r2) / std::min(r1, r2) <= 3.0, tag + " ratios " + fmt(r1) + "," + fmt(r2));
    }
}

// 11
struct Row {
    K kind;
    std::vector<std::vector<Stability>> stabilities;  // lambda < 0, = 0, > 0
    std::vector<int> critical_lines;
};

void sweeps(Verdict& v) {
    using S = Stability;
    const std::vector<Row> table{
        {K::RegularSaddle, {{}, {}, {S::Repeller}}, {0, 0, 0}},
        {K::RegularFocus, {{}, {}, {S::Attractor}}, {0, 0, 0}},
        {K::RegularCusp, {{S::Attractor, S::Repeller}, {S::Attractor, S::Repeller}, {S::Attractor, S::Repeller}},
         {0, 0, 0}},
        {K::FoldFoldHyperbolic, {{}, {}, {}}, {0, 0, 0}},
        {K::FoldFoldParabolicVisible, {{}, {}, {}}, {0, 1, 0}},
        {K::FoldFoldParabolicInvisible, {{}, {}, {}}, {0, 0, 0}},
        {K::FoldFoldElliptic, {{S::Attractor}, {}, {S::Repeller}}, {0, 0, 0}},
    };
    for (const auto& row : table) {
        const auto rep = sweep(row.kind, {-0.3, 0.0, 0.3});
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& r = rep.records[i];
            const std::string tag = kname(row.kind) + " lambda=" + fmt(r.lambda);
            v.expect(r.stabilities() == row.stabilities[i],
                     tag + ": " + std::to_string(r.critical_points.size()) + " critical points");
            v.expect(r.critical_lines == row.critical_lines[i], tag + " critical lines");
        }
        v.expect(!rep.detected_changes.empty(), kname(row.kind) + ": no behavior change across lambda=0");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
        {"sliding field vs convex-combination scan", sliding_oracle},
        {"regular saddle", regular_saddle},
        {"regular focus", regular_focus},
        {"regular cusp", regular_cusp},
        {"hyperbolic fold-fold", hyperbolic},
        {"parabolic visible critical line", parabolic_visible},
        {"parabolic invisible and elliptic", invisible_and_elliptic},
        {"return maps", return_maps},
        {"sliding set vs slow manifold; branch-count change", projections},
        {"regularized vs Filippov convergence", convergence},
        {"bifurcation sweep descriptors", sweeps},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        criteria[i].second(v);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        v.expect(secs < 10.0, "took " + fmt(secs) + " s");
        const bool ok = v.failures.empty();
        failed += !ok;
        std::printf("%s %2zu  %-50s (%d checks, %.2f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first, v.checks,
                    secs);
        for (const auto& f : v.failures) std::printf("         %s\n", f.c_str());
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
