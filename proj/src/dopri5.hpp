#pragma once

// Dormand-Prince 5(4) stepper with FSAL and a standard I-controller.
// Internal to the library; the drivers in integrate.cpp own event handling.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace filippov::detail {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> out = y;
    for (const auto& [c, k] : terms) {
        for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
    }
    return out;
}

template <std::size_t N>
struct StepResult {
    State<N> y;
    State<N> f;  // rhs at the new point (FSAL)
    double err = 0.0;
};

template <std::size_t N, class Rhs>
class Dopri5 {
public:
    Dopri5(Rhs rhs, double rtol, double atol) : rhs_(std::move(rhs)), rtol_(rtol), atol_(atol) {}

    State<N> rhs(const State<N>& y) const { return rhs_(y); }

    /// One trial step of size h from (y, f0); err is the scaled RMS error norm.
    StepResult<N> step(const State<N>& y, const State<N>& f0, double h) const {
        constexpr double c21 = 1.0 / 5.0;
        constexpr double c31 = 3.0 / 40.0, c32 = 9.0 / 40.0;
        constexpr double c41 = 44.0 / 45.0, c42 = -56.0 / 15.0, c43 = 32.0 / 9.0;
        constexpr double c51 = 19372.0 / 6561.0, c52 = -25360.0 / 2187.0, c53 = 64448.0 / 6561.0,
                         c54 = -212.0 / 729.0;
        constexpr double c61 = 9017.0 / 3168.0, c62 = -355.0 / 33.0, c63 = 46732.0 / 5247.0, c64 = 49.0 / 176.0,
                         c65 = -5103.0 / 18656.0;
        constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                         b6 = 11.0 / 84.0;
        constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                         e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

        const State<N>& k1 = f0;
        const State<N> k2 = rhs_(axpy<N>(y, h, {{c21, &k1}}));
        const State<N> k3 = rhs_(axpy<N>(y, h, {{c31, &k1}, {c32, &k2}}));
        const State<N> k4 = rhs_(axpy<N>(y, h, {{c41, &k1}, {c42, &k2}, {c43, &k3}}));
        const State<N> k5 = rhs_(axpy<N>(y, h, {{c51, &k1}, {c52, &k2}, {c53, &k3}, {c54, &k4}}));
        const State<N> k6 = rhs_(axpy<N>(y, h, {{c61, &k1}, {c62, &k2}, {c63, &k3}, {c64, &k4}, {c65, &k5}}));
        StepResult<N> r;
        r.y = axpy<N>(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        r.f = rhs_(r.y);
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * r.f[i]);
            const double sc = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(r.y[i]));
            acc += (e / sc) * (e / sc);
        }
        r.err = std::sqrt(acc / static_cast<double>(N));
        if (!std::isfinite(r.err)) r.err = 1e300;
        return r;
    }

    static double next_step(double h, double err) {
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        return h * factor;
    }

private:
    Rhs rhs_;
    double rtol_;
    double atol_;
};

/// Cubic Hermite interpolant on [t0, t0 + h].
template <std::size_t N>
State<N> hermite(const State<N>& y0, const State<N>& f0, const State<N>& y1, const State<N>& f1, double h,
                 double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    State<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    return out;
}

}  // namespace filippov::detail
