#include "filippov/transition.hpp"

#include <algorithm>
#include <cmath>

#include "filippov/errors.hpp"

namespace filippov {

std::string_view to_string(TransitionKind kind) {
    switch (kind) {
        case TransitionKind::Cubic: return "cubic";
        case TransitionKind::SmoothExp: return "smooth-exp";
        case TransitionKind::UserTable: return "user-table";
    }
    return "cubic";
}

TransitionKind parse_transition_kind(std::string_view name) {
    if (name == "cubic") return TransitionKind::Cubic;
    if (name == "smooth-exp") return TransitionKind::SmoothExp;
    if (name == "user-table") return TransitionKind::UserTable;
    throw ArgumentError("unknown transition kind '" + std::string(name) + "'");
}

TransitionFunction::TransitionFunction(TransitionKind kind) : kind_(kind) {
    if (kind == TransitionKind::UserTable) throw ArgumentError("user-table transition needs samples; use from_table");
}

TransitionFunction TransitionFunction::from_table(std::vector<double> s, std::vector<double> phi) {
    if (s.size() != phi.size() || s.size() < 2) throw ArgumentError("transition table needs >= 2 (s, phi) pairs");
    if (s.front() != -1.0 || s.back() != 1.0 || phi.front() != -1.0 || phi.back() != 1.0) {
        throw ArgumentError("transition table must run from (-1,-1) to (1,1)");
    }
    for (std::size_t k = 1; k < s.size(); ++k) {
        if (!(s[k] > s[k - 1]) || !(phi[k] > phi[k - 1])) {
            throw ArgumentError("transition table must be strictly increasing in s and phi");
        }
    }
    TransitionFunction tf;
    tf.kind_ = TransitionKind::UserTable;
    const std::size_t n = s.size();
    std::vector<double> delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) delta[k] = (phi[k + 1] - phi[k]) / (s[k + 1] - s[k]);
    // Fritsch-Carlson: harmonic-mean interior slopes keep each cubic piece monotone.
    std::vector<double> m(n);
    m.front() = delta.front();
    m.back() = delta.back();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double h0 = s[k] - s[k - 1];
        const double h1 = s[k + 1] - s[k];
        const double w0 = 2.0 * h1 + h0;
        const double w1 = h1 + 2.0 * h0;
        m[k] = (w0 + w1) / (w0 / delta[k - 1] + w1 / delta[k]);
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double a = m[k] / delta[k];
        const double b = m[k + 1] / delta[k];
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            m[k] = tau * a * delta[k];
            m[k + 1] = tau * b * delta[k];
        }
    }
    tf.s_ = std::move(s);
    tf.phi_ = std::move(phi);
    tf.slope_ = std::move(m);
    return tf;
}

TransitionValue TransitionFunction::operator()(double s) const {
    if (s <= -1.0) return {-1.0, 0.0};
    if (s >= 1.0) return {1.0, 0.0};
    switch (kind_) {
        case TransitionKind::Cubic:
            return {0.5 * s * (3.0 - s * s), 1.5 * (1.0 - s * s)};
        case TransitionKind::SmoothExp: {
            // phi = tanh(w/2), w = c (1/(1-s) - 1/(1+s)) + k s: flat to all orders at +-1
            // while 1 - |phi| stays representable on the whole open interval.
            constexpr double c = 0.03;
            constexpr double k = 3.0;
            const double w = c * (1.0 / (1.0 - s) - 1.0 / (1.0 + s)) + k * s;
            const double dw = c * (1.0 / ((1.0 - s) * (1.0 - s)) + 1.0 / ((1.0 + s) * (1.0 + s))) + k;
            const double e = std::exp(-std::abs(w));
            const double v = (1.0 - e) / (1.0 + e);
            return {w < 0 ? -v : v, 2.0 * e / ((1.0 + e) * (1.0 + e)) * dw};
        }
        case TransitionKind::UserTable:
            return table_eval(s);
    }
    return {0.0, 0.0};
}

TransitionValue TransitionFunction::table_eval(double s) const {
    auto it = std::upper_bound(s_.begin(), s_.end(), s);
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - s_.begin()) - 1));
    k = std::min(k, s_.size() - 2);
    const double h = s_[k + 1] - s_[k];
    const double t = (s - s_[k]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    const double value = h00 * phi_[k] + h10 * h * slope_[k] + h01 * phi_[k + 1] + h11 * h * slope_[k + 1];
    const double d00 = (6 * t2 - 6 * t) / h;
    const double d10 = 3 * t2 - 4 * t + 1;
    const double d01 = (-6 * t2 + 6 * t) / h;
    const double d11 = 3 * t2 - 2 * t;
    const double deriv = d00 * phi_[k] + d10 * slope_[k] + d01 * phi_[k + 1] + d11 * slope_[k + 1];
    return {value, deriv};
}

double TransitionFunction::inverse(double v) const {
    if (v <= -1.0) return -1.0;
    if (v >= 1.0) return 1.0;
    double lo = -1.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (value(mid) < v ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TransitionValue transition_eval(const TransitionFunction& tf, double s) { return tf(s); }

}  // namespace filippov
