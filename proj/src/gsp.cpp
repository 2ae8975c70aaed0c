#include "filippov/gsp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "filippov/errors.hpp"

namespace filippov {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarter = kPi / 4;
constexpr double kThreeQuarter = 3 * kPi / 4;

int sgn(double v) { return (v > 0) - (v < 0); }

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
    return v[v.size() / 2];
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

FastSlowSample fast_slow_fields(const NonSmoothSystem& system, const TransitionFunction& tf, double theta, double y) {
    if (!(theta > 0.0 && theta < kPi)) throw DomainError("theta must lie in (0, pi), got " + fmt(theta));
    const double phi = tf.value(std::cos(theta) / std::sin(theta));
    const double a = 0.5 * (1.0 + phi);
    const double b = 0.5 * (1.0 - phi);
    const Vec2 X = system.upper()({0.0, y});
    const Vec2 Y = system.lower()({0.0, y});
    FastSlowSample s;
    s.residual = a * X.x + b * Y.x;
    s.alpha = -std::sin(theta) * s.residual;
    s.beta = a * X.y + b * Y.y;
    return s;
}

BlowupLocus::BlowupLocus(const NonSmoothSystem& system, TransitionFunction tf) : tf_(std::move(tf)) {
    f1 = system.upper().px().on_y_axis();
    g1 = system.upper().py().on_y_axis();
    f2 = system.lower().px().on_y_axis();
    g2 = system.lower().py().on_y_axis();
    df1 = derivative(f1);
    df2 = derivative(f2);
    ddf1 = derivative(df1);
    ddf2 = derivative(df2);
}

BlowupLocus::Weights BlowupLocus::weights(double theta) const {
    if (theta <= kQuarter) return {1.0, 0.0, 0.0};
    if (theta >= kThreeQuarter) return {0.0, 1.0, 0.0};
    const double s = std::sin(theta);
    const auto [phi, dphi] = tf_(std::cos(theta) / s);
    return {0.5 * (1.0 + phi), 0.5 * (1.0 - phi), -0.5 * dphi / (s * s)};
}

double BlowupLocus::G(double theta, double y) const {
    const auto w = weights(theta);
    return w.a * horner(f1, y) + w.b * horner(f2, y);
}

double BlowupLocus::G_y(double theta, double y) const {
    const auto w = weights(theta);
    return w.a * horner(df1, y) + w.b * horner(df2, y);
}

double BlowupLocus::beta(double theta, double y) const {
    const auto w = weights(theta);
    return w.a * horner(g1, y) + w.b * horner(g2, y);
}

bool BlowupLocus::newton(double theta, double& y, double rtol, int max_iter) const {
    const auto w = weights(theta);
    for (int k = 0; k < max_iter; ++k) {
        const double g = w.a * horner(f1, y) + w.b * horner(f2, y);
        const double gy = w.a * horner(df1, y) + w.b * horner(df2, y);
        if (g == 0.0) return true;
        if (gy == 0.0 || !std::isfinite(gy)) break;
        const double step = g / gy;
        y -= step;
        if (!std::isfinite(y)) return false;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(y))) break;
    }
    return std::abs(G(theta, y)) < rtol;
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::Attractor: return "Attractor";
        case Stability::Repeller: return "Repeller";
        case Stability::Degenerate: return "Degenerate";
    }
    return "?";
}

std::string Endpoint::label() const {
    switch (kind) {
        case EndpointKind::AsymptoteInfinity: return sign > 0 ? "AsymptoteInfinity(+)" : "AsymptoteInfinity(-)";
        case EndpointKind::FiniteLimit: return "FiniteLimit(" + fmt(std::abs(y) < 1e-300 ? 0.0 : y) + ")";
        case EndpointKind::DomainEdge: return "DomainEdge";
    }
    return "?";
}

bool SlowManifoldBranch::horizontal() const { return samples.size() >= 2 && y_max() - y_min() <= 1e-9; }

double SlowManifoldBranch::y_min() const {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) v = std::min(v, s.y);
    return v;
}

double SlowManifoldBranch::y_max() const {
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) v = std::max(v, s.y);
    return v;
}

int SlowManifold::nondegenerate_branch_count() const {
    int n = static_cast<int>(verticals.size());
    for (const auto& b : branches) n += b.horizontal() ? 0 : 1;
    return n;
}

std::vector<CriticalPoint> SlowManifold::critical_points() const {
    std::vector<CriticalPoint> out;
    for (const auto& b : branches) out.insert(out.end(), b.critical_points.begin(), b.critical_points.end());
    return out;
}

namespace {

struct OpenBranch {
    std::vector<ManifoldSample> samples;
    std::vector<double> dys;
};

class ManifoldBuilder {
public:
    ManifoldBuilder(const BlowupLocus& locus, const SlowManifoldOptions& o) : L(locus), o(o) {
        dtheta = (o.theta_max - o.theta_min) / (o.n_theta - 1);
        dy_grid = (o.y_max - o.y_min) / (o.n_y - 1);
        for (int k = 0; k < o.n_theta; ++k) thetas.push_back(o.theta_min + k * dtheta);
        thetas.back() = o.theta_max;
        for (int j = 0; j < o.n_y; ++j) ys.push_back(o.y_min + j * dy_grid);
        ys.back() = o.y_max;
    }

    SlowManifold build() {
        scan_columns();
        detect_verticals();
        link();
        for (auto& b : result.branches) finish_branch(b);
        return std::move(result);
    }

private:
    ManifoldSample sample(double theta, double y) const {
        return {theta, BlowupChart::rho_from_theta(theta), y, L.beta(theta, y)};
    }

    bool in_window(double y) const { return y >= o.y_min && y <= o.y_max; }

    void scan_columns() {
        values.assign(thetas.size(), {});
        roots.assign(thetas.size(), {});
        vertical_column.assign(thetas.size(), false);
        for (std::size_t k = 0; k < thetas.size(); ++k) {
            const double th = thetas[k];
            auto& v = values[k];
            v.resize(ys.size());
            double colmax = 0.0;
            for (std::size_t j = 0; j < ys.size(); ++j) {
                v[j] = L.G(th, ys[j]);
                colmax = std::max(colmax, std::abs(v[j]));
            }
            if (colmax < o.rtol) {
                vertical_column[k] = true;
                continue;
            }
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (std::abs(v[j]) < o.rtol) {
                    roots[k].push_back(ys[j]);
                    continue;
                }
                if (j + 1 < ys.size() && std::abs(v[j + 1]) >= o.rtol && v[j] * v[j + 1] < 0.0) {
                    double lo = ys[j];
                    double hi = ys[j + 1];
                    const double glo = v[j];
                    for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, std::abs(lo)); ++it) {
                        const double mid = 0.5 * (lo + hi);
                        if (sgn(L.G(th, mid)) == sgn(glo)) {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    double y = 0.5 * (lo + hi);
                    const double y_bis = y;
                    if (!L.newton(th, y, o.rtol, 5) || std::abs(y - y_bis) > hi - lo + 1e-12) {
                        y = y_bis;
                    }
                    if (std::abs(L.G(th, y)) < o.rtol) {
                        roots[k].push_back(y);
                    } else {
                        ++result.dropped;
                    }
                }
            }
        }
    }

    void add_vertical(double th) {
        VerticalComponent vc;
        vc.theta = th;
        for (double y : ys) {
            vc.max_residual = std::max(vc.max_residual, std::abs(L.G(th, y)));
            vc.max_abs_beta = std::max(vc.max_abs_beta, std::abs(L.beta(th, y)));
        }
        if (vc.max_residual >= o.rtol) return;
        vc.critical_line = vc.max_abs_beta < 1e-10;
        result.verticals.push_back(vc);
    }

    void detect_verticals() {
        for (std::size_t k = 0; k < thetas.size(); ++k) {
            if (vertical_column[k]) {
                add_vertical(thetas[k]);
                continue;
            }
            if (k + 1 >= thetas.size() || vertical_column[k + 1]) continue;
            std::size_t flips = 0;
            std::size_t probe = 0;
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (values[k][j] * values[k + 1][j] < 0.0) ++flips;
                if (std::abs(values[k][j]) > std::abs(values[k][probe])) probe = j;
            }
            if (flips * 10 < ys.size() * 9) continue;
            double lo = thetas[k];
            double hi = thetas[k + 1];
            const int s_lo = sgn(values[k][probe]);
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (sgn(L.G(mid, ys[probe])) == s_lo) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            add_vertical(std::abs(L.G(lo, ys[probe])) < std::abs(L.G(hi, ys[probe])) ? lo : hi);
        }
    }

    bool acceptable(const OpenBranch& b, double dy) const {
        const double floor = 0.05 * dy_grid;
        if (std::abs(dy) <= floor || b.dys.empty()) return true;
        std::vector<double> recent;
        for (auto it = b.dys.rbegin(); it != b.dys.rend() && recent.size() < 5; ++it) recent.push_back(std::abs(*it));
        if (std::abs(dy) <= 10.0 * median(recent)) return true;
        const double last = b.dys.back();
        return sgn(dy) == sgn(last) && std::abs(dy) <= 10.0 * std::abs(last);
    }

    void close(OpenBranch& b) {
        if (b.samples.size() >= 3) {
            SlowManifoldBranch br;
            br.samples = std::move(b.samples);
            result.branches.push_back(std::move(br));
        }
    }

    void link() {
        std::vector<OpenBranch> open;
        for (std::size_t k = 0; k < thetas.size(); ++k) {
            if (vertical_column[k]) continue;
            const auto& r = roots[k];
            struct Pair {
                double d;
                std::size_t branch;
                std::size_t root;
            };
            std::vector<Pair> pairs;
            for (std::size_t i = 0; i < open.size(); ++i) {
                for (std::size_t m = 0; m < r.size(); ++m) {
                    pairs.push_back({std::abs(r[m] - open[i].samples.back().y), i, m});
                }
            }
            std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
                return a.d < b.d || (a.d == b.d && (a.branch < b.branch || (a.branch == b.branch && a.root < b.root)));
            });
            std::vector<bool> branch_used(open.size(), false);
            std::vector<bool> root_used(r.size(), false);
            for (const auto& p : pairs) {
                if (branch_used[p.branch] || root_used[p.root]) continue;
                const double dy = r[p.root] - open[p.branch].samples.back().y;
                if (!acceptable(open[p.branch], dy)) continue;
                branch_used[p.branch] = true;
                root_used[p.root] = true;
                open[p.branch].dys.push_back(dy);
                open[p.branch].samples.push_back(sample(thetas[k], r[p.root]));
            }
            std::vector<OpenBranch> next;
            for (std::size_t i = 0; i < open.size(); ++i) {
                if (branch_used[i]) {
                    next.push_back(std::move(open[i]));
                } else {
                    close(open[i]);
                }
            }
            for (std::size_t m = 0; m < r.size(); ++m) {
                if (!root_used[m]) next.push_back({{sample(thetas[k], r[m])}, {}});
            }
            open = std::move(next);
        }
        for (auto& b : open) close(b);
        std::sort(result.branches.begin(), result.branches.end(), [](const auto& a, const auto& b) {
            const auto& sa = a.samples.front();
            const auto& sb = b.samples.front();
            return sa.theta < sb.theta || (sa.theta == sb.theta && sa.y < sb.y);
        });
    }

    std::size_t column_of(double theta) const {
        const auto it = std::lower_bound(thetas.begin(), thetas.end(), theta - 1e-12 * dtheta);
        return static_cast<std::size_t>(it - thetas.begin());
    }

    /// Push the branch end toward the next column by bisection in theta,
    /// continuing the root with Newton, until the root leaves the window or folds.
    void refine_end(SlowManifoldBranch& b, bool at_front) {
        const auto& s = at_front ? b.samples.front() : b.samples.back();
        const std::size_t col = column_of(s.theta);
        if (at_front ? col == 0 : col + 1 >= thetas.size()) return;
        const std::size_t nb = at_front ? col - 1 : col + 1;
        if (vertical_column[nb]) return;
        double th_a = s.theta;
        double y_a = s.y;
        double th_b = thetas[nb];
        const auto& s2 = at_front ? b.samples[1] : b.samples[b.samples.size() - 2];
        double last_dy = y_a - s2.y;
        const double floor = 0.05 * dy_grid;
        std::vector<ManifoldSample> added;
        for (int it = 0; it < 60 && std::abs(th_b - th_a) > 1e-10; ++it) {
            const double th_m = 0.5 * (th_a + th_b);
            if (th_m == th_a || th_m == th_b) break;
            double y_m = y_a;
            // Past a fold min |G| can still be below rtol; insist on a converged root.
            const bool ok = L.newton(th_m, y_m, o.rtol, 100) &&
                            std::abs(L.G(th_m, y_m)) < 1e-3 * o.rtol * (1.0 + std::abs(y_m)) && in_window(y_m) &&
                            std::abs(y_m - y_a) <= 10.0 * std::max(std::abs(last_dy), floor) &&
                            (sgn(y_m - y_a) == sgn(last_dy) || std::abs(y_m - y_a) <= floor);
            if (ok) {
                last_dy = y_m - y_a;
                th_a = th_m;
                y_a = y_m;
                added.push_back(sample(th_m, y_m));
            } else {
                th_b = th_m;
            }
        }
        if (at_front) {
            b.samples.insert(b.samples.begin(), added.rbegin(), added.rend());
        } else {
            b.samples.insert(b.samples.end(), added.begin(), added.end());
        }
    }

    /// Newton on (G, G_y) = 0 in (theta, y).
    bool fold_point(double& th, double& y) const {
        for (int it = 0; it < 60; ++it) {
            const auto w = L.weights(th);
            const double g = w.a * horner(L.f1, y) + w.b * horner(L.f2, y);
            const double gy = w.a * horner(L.df1, y) + w.b * horner(L.df2, y);
            const double gt = w.da * (horner(L.f1, y) - horner(L.f2, y));
            const double gyt = w.da * (horner(L.df1, y) - horner(L.df2, y));
            const double gyy = w.a * horner(L.ddf1, y) + w.b * horner(L.ddf2, y);
            const double det = gt * gyy - gy * gyt;
            if (det == 0.0 || !std::isfinite(det)) return false;
            const double dth = (g * gyy - gy * gy) / det;
            const double dyv = (gt * gy - gyt * g) / det;
            th -= dth;
            y -= dyv;
            if (!std::isfinite(th) || !std::isfinite(y)) return false;
            if (std::abs(dth) < 1e-16 && std::abs(dyv) < 1e-14) break;
        }
        return std::abs(L.G(th, y)) < o.rtol && std::abs(L.G_y(th, y)) < 1e-6;
    }

    Endpoint classify_end(SlowManifoldBranch& b, bool at_front) {
        const auto& s = at_front ? b.samples.front() : b.samples.back();
        Endpoint e;
        e.theta = s.theta;
        e.y = s.y;
        const double edge = s.y > 0 ? std::abs(o.y_max) : std::abs(o.y_min);
        if (std::abs(s.y) > 0.9 * edge && b.samples.size() >= 5) {
            bool monotone = true;
            for (int i = 0; i < 4 && monotone; ++i) {
                const auto& u = at_front ? b.samples[static_cast<std::size_t>(i)]
                                         : b.samples[b.samples.size() - 1 - static_cast<std::size_t>(i)];
                const auto& v = at_front ? b.samples[static_cast<std::size_t>(i) + 1]
                                         : b.samples[b.samples.size() - 2 - static_cast<std::size_t>(i)];
                monotone = std::abs(u.y) >= std::abs(v.y) && sgn(u.y) == sgn(s.y);
            }
            const auto& fifth = at_front ? b.samples[4] : b.samples[b.samples.size() - 5];
            monotone = monotone && std::abs(s.y) > std::abs(fifth.y);
            if (monotone) {
                e.kind = EndpointKind::AsymptoteInfinity;
                e.sign = sgn(s.y);
                return e;
            }
        }
        const std::size_t col = column_of(s.theta);
        const bool at_edge_column = at_front ? col == 0 : col + 1 >= thetas.size();
        if (at_edge_column) {
            double y = s.y;
            const double chart_edge = at_front ? kQuarter : kThreeQuarter;
            if (L.newton(chart_edge, y, o.rtol, 200) && std::abs(y - s.y) <= 1e-2 * (1.0 + std::abs(s.y))) {
                e.kind = EndpointKind::FiniteLimit;
                e.y = y;
            }
            return e;
        }
        double th = s.theta;
        double y = s.y;
        if (fold_point(th, y) && std::abs(th - s.theta) < 2 * dtheta && std::abs(y - s.y) < 0.1 * (1 + std::abs(s.y))) {
            e.kind = EndpointKind::FiniteLimit;
            e.theta = th;
            e.y = y;
            if (at_front ? th < s.theta : th > s.theta) {
                const auto f = sample(th, y);
                if (at_front) {
                    b.samples.insert(b.samples.begin(), f);
                } else {
                    b.samples.push_back(f);
                }
            }
        }
        return e;
    }

    /// Root of beta along the branch between samples i and i+1.
    CriticalPoint locate_critical(const SlowManifoldBranch& b, std::size_t i) const {
        const auto& p = b.samples[i];
        const auto& q = b.samples[i + 1];
        double lo = p.theta;
        double hi = q.theta;
        double y_lo = p.y;
        const int s_lo = sgn(p.ydot);
        double y_best = p.y;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            double y = y_lo + (q.y - y_lo) * (mid - lo) / (q.theta - lo);
            if (!L.newton(mid, y, o.rtol)) y = y_lo + (q.y - y_lo) * (mid - lo) / (q.theta - lo);
            y_best = y;
            if (sgn(L.beta(mid, y)) == s_lo) {
                lo = mid;
                y_lo = y;
            } else {
                hi = mid;
            }
        }
        CriticalPoint cp;
        cp.theta = 0.5 * (lo + hi);
        cp.y = y_best;
        return cp;
    }

    static int beta_sign(const ManifoldSample& s) {
        return std::abs(s.ydot) <= 1e-12 * (1.0 + std::abs(s.y)) ? 0 : sgn(s.ydot);
    }

    Stability orient(const SlowManifoldBranch& b, const ManifoldSample& before, const ManifoldSample& after) const {
        const double dy = after.y - before.y;
        if (b.horizontal() || std::abs(dy) <= 1e-14) return Stability::Degenerate;
        // sign of beta first in increasing y
        const int first = dy > 0 ? sgn(before.ydot) : sgn(after.ydot);
        return first > 0 ? Stability::Attractor : Stability::Repeller;
    }

    void find_critical_points(SlowManifoldBranch& b) const {
        const auto& s = b.samples;
        const std::size_t n = s.size();
        std::size_t i = 0;
        while (i < n) {
            if (beta_sign(s[i]) != 0) {
                if (i + 1 < n && beta_sign(s[i + 1]) * beta_sign(s[i]) < 0) {
                    CriticalPoint cp = locate_critical(b, i);
                    cp.stability = orient(b, s[i], s[i + 1]);
                    b.critical_points.push_back(cp);
                }
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j + 1 < n && beta_sign(s[j + 1]) == 0) ++j;
            const std::size_t mid = (i + j) / 2;
            CriticalPoint cp{s[mid].theta, s[mid].y, Stability::Degenerate};
            if (i > 0 && j + 1 < n && i == j && beta_sign(s[i - 1]) * beta_sign(s[j + 1]) < 0) {
                cp.stability = orient(b, s[i - 1], s[j + 1]);
            }
            b.critical_points.push_back(cp);
            i = j + 1;
        }
    }

    void finish_branch(SlowManifoldBranch& b) {
        refine_end(b, true);
        refine_end(b, false);
        b.start = classify_end(b, true);
        b.end = classify_end(b, false);
        find_critical_points(b);
    }

    const BlowupLocus& L;
    const SlowManifoldOptions& o;
    double dtheta = 0.0;
    double dy_grid = 0.0;
    std::vector<double> thetas;
    std::vector<double> ys;
    std::vector<std::vector<double>> values;
    std::vector<std::vector<double>> roots;
    std::vector<bool> vertical_column;
    SlowManifold result;
};

}  // namespace

SlowManifold slow_manifold(const NonSmoothSystem& system, const TransitionFunction& tf,
                           const SlowManifoldOptions& opts) {
    if (opts.n_theta < 2 || opts.n_y < 2) throw ArgumentError("slow-manifold grids need at least 2 points per axis");
    if (!(opts.theta_min < opts.theta_max) || !(opts.y_min < opts.y_max)) {
        throw ArgumentError("slow-manifold windows must be non-degenerate");
    }
    if (opts.theta_min < kQuarter || opts.theta_max > kThreeQuarter) {
        throw DomainError("theta window must lie inside [pi/4, 3pi/4]");
    }
    if (!(opts.rtol > 0.0)) throw ArgumentError("rtol must be positive");
    const BlowupLocus locus(system, tf);
    return ManifoldBuilder(locus, opts).build();
}

std::vector<double> closed_form_slow_manifold(NormalFormKind kind, double lambda, const TransitionFunction& tf,
                                              double theta) {
    if (!(theta > 0.0 && theta < kPi)) throw DomainError("theta must lie in (0, pi)");
    const double phi = tf.value(std::cos(theta) / std::sin(theta));
    switch (kind) {
        case NormalFormKind::RegularSaddle:
            if (phi >= 1.0) return {};
            return {(1.0 + phi) / (1.0 - phi)};
        case NormalFormKind::RegularFocus:
            if (phi >= 1.0) return {};
            return {-lambda - (1.0 + phi) / (1.0 - phi)};
        case NormalFormKind::RegularCusp: {
            if (phi >= 1.0) return {};
            const double radicand = (lambda * (1.0 - phi) + 1.0 + phi) / (1.0 - phi);
            if (radicand < 0.0) return {};
            if (radicand == 0.0) return {0.0};
            const double r = std::sqrt(radicand);
            return {-r, r};
        }
        case NormalFormKind::FoldFoldHyperbolic:
        case NormalFormKind::FoldFoldParabolicVisible:
            if (std::abs(phi) < 1e-15) return {};  // cot(pi/2) evaluates to 6e-17
            return {lambda * (1.0 + phi) / (2.0 * phi)};
        case NormalFormKind::FoldFoldParabolicInvisible:
        case NormalFormKind::FoldFoldElliptic:
            return {lambda * (1.0 + phi) / 2.0};
    }
    throw UnsupportedKindError("no closed-form slow manifold for this kind");
}

void write_slow_manifold_csv(const SlowManifold& sm, std::ostream& out) {
    out << "branch_id,theta,rho,y,ydot,label\n";
    char buf[160];
    auto row = [&](const std::string& id, double theta, double y, double ydot, const std::string& label) {
        std::snprintf(buf, sizeof(buf), ",%.17g,%.17g,%.17g,%.17g,", theta, BlowupChart::rho_from_theta(theta), y,
                      ydot);
        out << id << buf << label << '\n';
    };
    for (std::size_t i = 0; i < sm.branches.size(); ++i) {
        const auto& b = sm.branches[i];
        const std::string id = std::to_string(i);
        for (std::size_t k = 0; k < b.samples.size(); ++k) {
            const auto& s = b.samples[k];
            std::string label = "sample";
            if (k == 0) label = "start:" + b.start.label();
            if (k + 1 == b.samples.size()) label = "end:" + b.end.label();
            row(id, s.theta, s.y, s.ydot, label);
        }
        for (const auto& cp : b.critical_points) row(id, cp.theta, cp.y, 0.0, "critical:" + to_string(cp.stability));
    }
    for (std::size_t i = 0; i < sm.verticals.size(); ++i) {
        const auto& v = sm.verticals[i];
        const std::string label = v.critical_line ? "vertical:critical-line" : "vertical";
        row("v" + std::to_string(i), v.theta, std::numeric_limits<double>::quiet_NaN(), v.max_abs_beta, label);
    }
}

nlohmann::json slow_manifold_to_json(const SlowManifold& sm) {
    using nlohmann::json;
    auto endpoint = [](const Endpoint& e) {
        json j{{"label", e.label()}, {"theta", e.theta}, {"rho", BlowupChart::rho_from_theta(e.theta)}, {"y", e.y}};
        if (e.kind == EndpointKind::AsymptoteInfinity) j["sign"] = e.sign;
        return j;
    };
    json branches = json::array();
    for (std::size_t i = 0; i < sm.branches.size(); ++i) {
        const auto& b = sm.branches[i];
        json cps = json::array();
        for (const auto& cp : b.critical_points) {
            cps.push_back({{"theta", cp.theta},
                           {"rho", BlowupChart::rho_from_theta(cp.theta)},
                           {"y", cp.y},
                           {"stability", to_string(cp.stability)}});
        }
        branches.push_back({{"branch_id", i},
                            {"samples", b.samples.size()},
                            {"horizontal", b.horizontal()},
                            {"start", endpoint(b.start)},
                            {"end", endpoint(b.end)},
                            {"critical_points", cps}});
    }
    json verticals = json::array();
    for (const auto& v : sm.verticals) {
        verticals.push_back({{"theta", v.theta},
                             {"rho", BlowupChart::rho_from_theta(v.theta)},
                             {"max_residual", v.max_residual},
                             {"max_abs_beta", v.max_abs_beta},
                             {"critical_line", v.critical_line}});
    }
    return {{"branches", branches},
            {"verticals", verticals},
            {"dropped", sm.dropped},
            {"nondegenerate_branch_count", sm.nondegenerate_branch_count()}};
}

}  // namespace filippov
