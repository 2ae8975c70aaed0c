#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace filippov {

enum class TransitionKind { Cubic, SmoothExp, UserTable };

std::string_view to_string(TransitionKind kind);
TransitionKind parse_transition_kind(std::string_view name);

struct TransitionValue {
    double value = 0.0;
    double derivative = 0.0;
};

/// Monotone saturating profile phi: phi = -1 on (-inf, -1], phi = 1 on
/// [1, inf), phi' > 0 on (-1, 1).
///
/// Cubic is s(3 - s^2)/2 (C^1 after gluing). SmoothExp is tanh(w/2) of a
/// blow-up coordinate w(s) built from 1/(1 -+ s), flat to all orders at +-1.
/// UserTable interpolates strictly increasing samples with a monotone cubic
/// Hermite (Fritsch-Carlson) spline.
class TransitionFunction {
public:
    TransitionFunction() = default;
    explicit TransitionFunction(TransitionKind kind);

    /// Table through (s_k, phi_k); s must start at -1 and end at 1, phi must
    /// be strictly increasing from -1 to 1. Throws ArgumentError otherwise.
    static TransitionFunction from_table(std::vector<double> s, std::vector<double> phi);

    TransitionKind kind() const { return kind_; }

    TransitionValue operator()(double s) const;
    double value(double s) const { return (*this)(s).value; }

    /// Inverse on (-1, 1) by bisection; v is clamped to [-1, 1].
    double inverse(double v) const;

private:
    TransitionValue table_eval(double s) const;

    TransitionKind kind_ = TransitionKind::Cubic;
    std::vector<double> s_;
    std::vector<double> phi_;
    std::vector<double> slope_;
};

TransitionValue transition_eval(const TransitionFunction& tf, double s);

}  // namespace filippov
