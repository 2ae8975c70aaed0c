#pragma once

#include "filippov/system.hpp"
#include "filippov/transition.hpp"

namespace filippov {

/// Z_eps(q) = (1 + phi(x/eps))/2 X(q) + (1 - phi(x/eps))/2 Y(q).
class RegularizedSystem {
public:
    RegularizedSystem(NonSmoothSystem base, TransitionFunction tf, double eps);

    const NonSmoothSystem& base() const { return base_; }
    const TransitionFunction& transition() const { return tf_; }
    double eps() const { return eps_; }

    Vec2 operator()(Vec2 q) const;

private:
    NonSmoothSystem base_;
    TransitionFunction tf_;
    double eps_;
};

Vec2 eval_regularized(const RegularizedSystem& rs, Vec2 point);

}  // namespace filippov
