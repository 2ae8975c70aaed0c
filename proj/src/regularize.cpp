#include "filippov/regularize.hpp"

#include "filippov/errors.hpp"

namespace filippov {

RegularizedSystem::RegularizedSystem(NonSmoothSystem base, TransitionFunction tf, double eps)
    : base_(std::move(base)), tf_(std::move(tf)), eps_(eps) {
    if (!(eps > 0.0)) throw DomainError("regularization eps must be positive");
}

Vec2 RegularizedSystem::operator()(Vec2 q) const {
    // Outside the strip the weights are exactly 1/0; skip the other field.
    if (q.x >= eps_) return base_.upper()(q);
    if (q.x <= -eps_) return base_.lower()(q);
    const double phi = tf_.value(q.x / eps_);
    const double a = 0.5 * (1.0 + phi);
    const double b = 0.5 * (1.0 - phi);
    return a * base_.upper()(q) + b * base_.lower()(q);
}

Vec2 eval_regularized(const RegularizedSystem& rs, Vec2 point) { return rs(point); }

}  // namespace filippov
