#include "filippov/field.hpp"

#include <cmath>

#include "filippov/errors.hpp"

namespace filippov {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

PolyField::PolyField(Polynomial px, Polynomial py) : px_(std::move(px)), py_(std::move(py)) {
    if (px_.degree() > kMaxFieldDegree || py_.degree() > kMaxFieldDegree) {
        throw ArgumentError("field component exceeds degree " + std::to_string(kMaxFieldDegree));
    }
    lie_[0] = px_;
    lie_[1] = apply(lie_[0]);
    lie_[2] = apply(lie_[1]);
}

Polynomial PolyField::apply(const Polynomial& h) const { return px_ * h.dx() + py_ * h.dy(); }

const Polynomial& PolyField::lie_polynomial(int order) const {
    if (order < 1 || order > 3) throw DomainError("Lie derivative order must be 1, 2 or 3");
    return lie_[static_cast<std::size_t>(order - 1)];
}

Vec2 eval_field(const PolyField& field, Vec2 point) { return field(point); }

double lie_derivative(const PolyField& field, int order, Vec2 point) {
    return field.lie_polynomial(order)(point.x, point.y);
}

PolyField ParametricField::substitute(const std::map<std::string, double>& params) const {
    return {px.substitute(params), py.substitute(params)};
}

}  // namespace filippov
