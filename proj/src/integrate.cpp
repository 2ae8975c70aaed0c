#include "filippov/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "dopri5.hpp"
#include "filippov/regularize.hpp"
#include "filippov/sigma.hpp"

namespace filippov {

namespace {

using detail::Dopri5;
using detail::State;

constexpr double kLieTol = kDefaultSigmaTol;

template <std::size_t N>
struct RunResult {
    bool hit = false;
    double t = 0.0;
    State<N> y{};
};

/// Advance rhs from (t0, y0) to t_end, recording accepted samples through
/// record(t, y, f). guard(y) >= 0 on admissible states; a step ending with
/// guard < -gtol is cut back to the root of guard (|guard| <= gtarget).
template <std::size_t N, class Rhs, class Guard, class Record, class Partial>
RunResult<N> run(const Rhs& rhs, double t0, const State<N>& y0, double t_end, double& h, const IntegrationOptions& o,
                 const Guard& guard, double gtol, double gtarget, const Record& record, long& steps,
                 const Partial& partial) {
    Dopri5<N, const Rhs&> stepper(rhs, o.rtol, o.atol);
    double t = t0;
    State<N> y = y0;
    State<N> f = rhs(y);
    record(t, y, f);
    while (t < t_end) {
        if (++steps > o.max_steps) throw IntegrationError("step budget exhausted", partial());
        const double hh = std::min({h, o.max_step, t_end - t});
        const auto r = stepper.step(y, f, hh);
        if (r.err > 1.0) {
            h = Dopri5<N, const Rhs&>::next_step(hh, r.err);
            if (h < o.min_step) throw IntegrationError("step size collapsed below minimum", partial());
            continue;
        }
        const double g_end = guard(r.y);
        if (g_end < -gtol) {
            auto exact = [&](double s) -> std::pair<double, State<N>> {
                if (s <= 0.0) return {guard(y), y};
                if (s >= 1.0) return {g_end, r.y};
                const auto rr = stepper.step(y, f, s * hh);
                return {guard(rr.y), rr.y};
            };
            double lo = 0.0;
            double hi = 1.0;
            for (int k = 0; k < 30; ++k) {
                const double mid = 0.5 * (lo + hi);
                if (guard(detail::hermite<N>(y, f, r.y, r.f, hh, mid)) >= 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            auto [glo, ylo] = exact(lo);
            auto [ghi, yhi] = exact(hi);
            if (glo < 0.0) std::tie(lo, glo, ylo) = std::tuple{0.0, guard(y), y};
            if (ghi >= 0.0) std::tie(hi, ghi, yhi) = std::tuple{1.0, g_end, r.y};
            double s_best = glo < 0.0 ? 0.0 : lo;
            State<N> y_best = ylo;
            double g_best = glo;
            if (glo >= 0.0) {
                // Illinois regula falsi on exact steps.
                int side = 0;
                for (int k = 0; k < 80 && std::abs(g_best) > gtarget && hi - lo > 1e-16; ++k) {
                    double s = (lo * ghi - hi * glo) / (ghi - glo);
                    if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);
                    auto [gs, ys] = exact(s);
                    s_best = s;
                    y_best = ys;
                    g_best = gs;
                    if (gs >= 0.0) {
                        lo = s;
                        glo = gs;
                        if (side == 1) ghi *= 0.5;
                        side = 1;
                    } else {
                        hi = s;
                        ghi = gs;
                        if (side == -1) glo *= 0.5;
                        side = -1;
                    }
                }
            }
            const double te = t + s_best * hh;
            record(te, y_best, rhs(y_best));
            return {true, te, y_best};
        }
        t = (t_end - t - hh <= 1e-15 * std::max(1.0, std::abs(t_end))) ? t_end : t + hh;
        y = r.y;
        f = r.f;
        record(t, y, f);
        h = Dopri5<N, const Rhs&>::next_step(hh, r.err);
    }
    return {false, t, y};
}

int forward_sign(const PolyField& field, double y) {
    for (int k = 1; k <= 3; ++k) {
        const double v = lie_derivative(field, k, {0.0, y});
        if (std::abs(v) > kLieTol) return v > 0 ? 1 : -1;
    }
    return 0;
}

enum class Decision { Upper, Lower, Slide, Escape, Tangent };

Decision decide(const NonSmoothSystem& system, double y) {
    const int sx = forward_sign(system.upper(), y);
    const int sy = forward_sign(system.lower(), y);
    if (sx == 0 || sy == 0) return Decision::Tangent;
    if (sx > 0 && sy > 0) return Decision::Upper;
    if (sx < 0 && sy < 0) return Decision::Lower;
    return sx < 0 ? Decision::Slide : Decision::Escape;
}

State<2> field_rhs(const PolyField& F, const State<2>& q) {
    const Vec2 v = F({q[0], q[1]});
    return {v.x, v.y};
}

void push_event(Trajectory& traj, double t, double y, EventKind kind) {
    if (!traj.events.empty() && t <= traj.events.back().t) {
        traj.events.back() = {traj.events.back().t, y, kind};
        return;
    }
    traj.events.push_back({t, y, kind});
}

auto recorder2(TrajectorySegment& seg) {
    return [&seg](double t, const State<2>& q, const State<2>& f) {
        seg.samples.push_back({t, q[0], q[1], f[0], f[1]});
    };
}

}  // namespace

std::string_view to_string(FlowMode mode) {
    switch (mode) {
        case FlowMode::UpperFlow: return "UpperFlow";
        case FlowMode::LowerFlow: return "LowerFlow";
        case FlowMode::Sliding: return "Sliding";
        case FlowMode::Smooth: return "Smooth";
    }
    return "?";
}

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::CrossUp: return "CrossUp";
        case EventKind::CrossDown: return "CrossDown";
        case EventKind::SlideStart: return "SlideStart";
        case EventKind::SlideEnd: return "SlideEnd";
        case EventKind::Tangency: return "Tangency";
        case EventKind::Stop: return "Stop";
    }
    return "?";
}

double Trajectory::t_start() const {
    for (const auto& s : segments) {
        if (!s.samples.empty()) return s.samples.front().t;
    }
    return 0.0;
}

double Trajectory::t_end() const {
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        if (!it->samples.empty()) return it->samples.back().t;
    }
    return 0.0;
}

Vec2 Trajectory::start() const {
    for (const auto& s : segments) {
        if (!s.samples.empty()) return {s.samples.front().x, s.samples.front().y};
    }
    return {};
}

Vec2 Trajectory::end() const {
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        if (!it->samples.empty()) return {it->samples.back().x, it->samples.back().y};
    }
    return {};
}

std::size_t Trajectory::sample_count() const {
    std::size_t n = 0;
    for (const auto& s : segments) n += s.samples.size();
    return n;
}

Vec2 Trajectory::state_at(double t) const {
    if (t <= t_start()) return start();
    if (t >= t_end()) return end();
    for (const auto& seg : segments) {
        const auto& s = seg.samples;
        if (s.empty() || t < s.front().t || t > s.back().t) continue;
        auto it = std::lower_bound(s.begin(), s.end(), t,
                                   [](const TrajectorySample& a, double v) { return a.t < v; });
        if (it == s.begin()) return {it->x, it->y};
        const auto& b = *it;
        const auto& a = *(it - 1);
        const double h = b.t - a.t;
        if (h <= 0.0) return {b.x, b.y};
        const auto q = detail::hermite<2>({a.x, a.y}, {a.dx, a.dy}, {b.x, b.y}, {b.dx, b.dy}, h, (t - a.t) / h);
        return {q[0], q[1]};
    }
    return end();
}

Trajectory integrate_filippov(const NonSmoothSystem& system, Vec2 q0, double t_max, const IntegrationOptions& o) {
    if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
    const PolyField& X = system.upper();
    const PolyField& Y = system.lower();
    Trajectory traj;
    long steps = 0;
    double h = o.initial_step;
    double t = 0.0;
    Vec2 q = q0;
    auto partial = [&traj] { return traj; };

    auto start_on_sigma = [&](double y, bool initial) -> std::optional<FlowMode> {
        switch (decide(system, y)) {
            case Decision::Upper: return FlowMode::UpperFlow;
            case Decision::Lower: return FlowMode::LowerFlow;
            case Decision::Slide: return FlowMode::Sliding;
            case Decision::Escape:
                if (o.escape == EscapeChoice::Upper) return FlowMode::UpperFlow;
                if (o.escape == EscapeChoice::Lower) return FlowMode::LowerFlow;
                (void)initial;
                push_event(traj, t, y, EventKind::Stop);
                return std::nullopt;
            case Decision::Tangent:
                push_event(traj, t, y, EventKind::Tangency);
                return std::nullopt;
        }
        return std::nullopt;
    };

    std::optional<FlowMode> mode;
    if (q.x > o.xtol) {
        mode = FlowMode::UpperFlow;
    } else if (q.x < -o.xtol) {
        mode = FlowMode::LowerFlow;
    } else {
        q.x = 0.0;
        mode = start_on_sigma(q.y, true);
        if (mode == FlowMode::Sliding) push_event(traj, t, q.y, EventKind::SlideStart);
    }
    if (!mode) {
        const Vec2 v = X(q);
        traj.segments.push_back({FlowMode::UpperFlow, {{t, q.x, q.y, v.x, v.y}}});
        return traj;
    }

    int stall = 0;
    int n_events = 0;
    while (t < t_max) {
        traj.segments.push_back({*mode, {}});
        auto& seg = traj.segments.back();
        double t_new = t;
        bool hit = false;
        if (*mode == FlowMode::Sliding) {
            auto rhs = [&](const State<1>& s) -> State<1> { return {sliding_field_value(system, s[0])}; };
            auto guard = [&](const State<1>& s) {
                return std::min(-X.px()(0.0, s[0]), Y.px()(0.0, s[0]));
            };
            auto rec = [&seg](double tt, const State<1>& s, const State<1>& f) {
                seg.samples.push_back({tt, 0.0, s[0], 0.0, f[0]});
            };
            const auto r = run<1>(rhs, t, State<1>{q.y}, t_max, h, o, guard, 0.0, 1e-13, rec, steps, partial);
            hit = r.hit;
            t_new = r.t;
            q = {0.0, r.y[0]};
        } else {
            const PolyField& F = *mode == FlowMode::UpperFlow ? X : Y;
            const double orient = *mode == FlowMode::UpperFlow ? 1.0 : -1.0;
            auto rhs = [&F](const State<2>& s) { return field_rhs(F, s); };
            auto guard = [orient](const State<2>& s) { return orient * s[0]; };
            const auto r = run<2>(rhs, t, State<2>{q.x, q.y}, t_max, h, o, guard, o.xtol, o.xtol, recorder2(seg),
                                  steps, partial);
            hit = r.hit;
            t_new = r.t;
            q = {r.y[0], r.y[1]};
            if (hit) {
                q.x = 0.0;
                seg.samples.back().x = 0.0;
            }
        }
        t = t_new;
        if (!hit) break;
        stall = seg.samples.size() <= 1 || seg.samples.back().t <= seg.samples.front().t ? stall + 1 : 0;
        if (stall > 3) {
            push_event(traj, t, q.y, EventKind::Tangency);
            return traj;
        }

        std::optional<FlowMode> next;
        EventKind kind = EventKind::Stop;
        if (*mode == FlowMode::Sliding) {
            const double gx = -X.px()(0.0, q.y);
            const double gy = Y.px()(0.0, q.y);
            if (gx <= gy && lie_derivative(X, 2, q) > kLieTol) {
                next = FlowMode::UpperFlow;
            } else if (gy < gx && lie_derivative(Y, 2, q) < -kLieTol) {
                next = FlowMode::LowerFlow;
            }
            if (!next) {
                push_event(traj, t, q.y, EventKind::Tangency);
                return traj;
            }
            kind = EventKind::SlideEnd;
        } else {
            next = start_on_sigma(q.y, false);
            if (!next) return traj;
            if (*next == FlowMode::Sliding) {
                kind = EventKind::SlideStart;
            } else if (*next == FlowMode::UpperFlow && *mode == FlowMode::LowerFlow) {
                kind = EventKind::CrossUp;
            } else if (*next == FlowMode::LowerFlow && *mode == FlowMode::UpperFlow) {
                kind = EventKind::CrossDown;
            } else {
                kind = EventKind::Tangency;  // touched Sigma and stays on its side
            }
        }
        if (kind != EventKind::Tangency) push_event(traj, t, q.y, kind);
        mode = next;
        if (++n_events >= o.max_events) break;
    }
    push_event(traj, t, q.y, EventKind::Stop);
    return traj;
}

namespace {

template <class Field>
Trajectory integrate_smooth(const Field& field, Vec2 q0, double t_max, const IntegrationOptions& o) {
    if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
    Trajectory traj;
    traj.segments.push_back({FlowMode::Smooth, {}});
    long steps = 0;
    double h = o.initial_step;
    auto rhs = [&field](const State<2>& s) {
        const Vec2 v = field(Vec2{s[0], s[1]});
        return State<2>{v.x, v.y};
    };
    auto no_guard = [](const State<2>&) { return 1.0; };
    auto partial = [&traj] { return traj; };
    const auto r = run<2>(rhs, 0.0, State<2>{q0.x, q0.y}, t_max, h, o, no_guard, 0.0, 0.0,
                          recorder2(traj.segments.back()), steps, partial);
    traj.events.push_back({r.t, r.y[1], EventKind::Stop});
    return traj;
}

}  // namespace

Trajectory integrate_regularized(const NonSmoothSystem& system, const TransitionFunction& tf, double eps, Vec2 q0,
                                 double t_max, const IntegrationOptions& opts) {
    const RegularizedSystem rs(system, tf, eps);
    return integrate_smooth(rs, q0, t_max, opts);
}

Trajectory integrate_field(const PolyField& field, Vec2 q0, double t_max, const IntegrationOptions& opts) {
    return integrate_smooth(field, q0, t_max, opts);
}

SectionHit flow_to_section(const PolyField& field, Vec2 q0, double t_bound, const IntegrationOptions& o) {
    if (!(t_bound > 0.0)) throw DomainError("time bound must be positive");
    long steps = 0;
    double h = o.initial_step;
    TrajectorySegment scratch;
    auto rhs = [&field](const State<2>& s) { return field_rhs(field, s); };
    auto rec = [&scratch](double t, const State<2>& q, const State<2>& f) {
        if (scratch.samples.size() < 2) scratch.samples.push_back({t, q[0], q[1], f[0], f[1]});
    };
    auto partial = [] { return Trajectory{}; };

    // Departure side: sign of the first nonvanishing Lie derivative at q0.
    double side = q0.x;
    if (std::abs(side) <= o.xtol) {
        side = 0.0;
        for (int k = 1; k <= 3 && side == 0.0; ++k) {
            const double v = lie_derivative(field, k, q0);
            if (std::abs(v) > kLieTol) side = v;
        }
        if (side == 0.0) return {};
    }
    const double orient = side > 0 ? 1.0 : -1.0;
    auto guard = [orient](const State<2>& s) { return orient * s[0]; };
    const auto r = run<2>(rhs, 0.0, State<2>{q0.x, q0.y}, t_bound, h, o, guard, 0.0, o.xtol * 1e-2, rec, steps,
                          partial);
    if (!r.hit) return {};
    return {true, r.t, {0.0, r.y[1]}};
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
    const double lo = std::max(a.t_start(), b.t_start());
    const double hi = std::min(a.t_end(), b.t_end());
    double best = 0.0;
    auto probe = [&](double t) {
        if (t < lo || t > hi) return;
        best = std::max(best, norm(a.state_at(t) - b.state_at(t)));
    };
    for (const auto* tr : {&a, &b}) {
        for (const auto& seg : tr->segments) {
            for (const auto& s : seg.samples) probe(s.t);
        }
    }
    return best;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
    out << "t,x,y,mode\n";
    char buf[128];
    for (const auto& seg : trajectory.segments) {
        for (const auto& s : seg.samples) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,", s.t, s.x, s.y);
            out << buf << to_string(seg.mode) << '\n';
        }
    }
}

nlohmann::json events_to_json(const Trajectory& trajectory) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : trajectory.events) {
        events.push_back({{"t", e.t}, {"y", e.y}, {"event", std::string(to_string(e.kind))}});
    }
    nlohmann::json segments = nlohmann::json::array();
    for (const auto& seg : trajectory.segments) {
        if (seg.samples.empty()) continue;
        segments.push_back({{"mode", std::string(to_string(seg.mode))},
                            {"t_start", seg.samples.front().t},
                            {"t_end", seg.samples.back().t}});
    }
    return {{"events", events}, {"segments", segments}};
}

}  // namespace filippov
