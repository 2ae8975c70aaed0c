#pragma once

#include <array>
#include <map>
#include <string>

#include "filippov/polynomial.hpp"

namespace filippov {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
};

double norm(Vec2 v);

/// Highest total degree accepted for a field component.
inline constexpr int kMaxFieldDegree = 8;

/// Planar vector field (px, py) with polynomial components.
///
/// The discontinuity function is fixed to f(x, y) = x, so the Lie derivative
/// X.f is just px and higher iterates are exact polynomials.
class PolyField {
public:
    PolyField() = default;
    PolyField(Polynomial px, Polynomial py);

    const Polynomial& px() const { return px_; }
    const Polynomial& py() const { return py_; }

    Vec2 operator()(Vec2 p) const { return {px_(p.x, p.y), py_(p.x, p.y)}; }

    /// Derivative of h along the field: px * dh/dx + py * dh/dy.
    Polynomial apply(const Polynomial& h) const;

    /// X^k.f as a polynomial, k in 1..3.
    const Polynomial& lie_polynomial(int order) const;

    PolyField operator-() const { return {-px_, -py_}; }
    PolyField scaled(double s) const { return {px_ * s, py_ * s}; }

private:
    Polynomial px_;
    Polynomial py_;
    std::array<Polynomial, 3> lie_;
};

Vec2 eval_field(const PolyField& field, Vec2 point);

/// X^order.f evaluated at point; order outside 1..3 throws DomainError.
double lie_derivative(const PolyField& field, int order, Vec2 point);

/// Field whose coefficients may reference named parameters.
struct ParametricField {
    ParametricPolynomial px;
    ParametricPolynomial py;

    PolyField substitute(const std::map<std::string, double>& params) const;
};

}  // namespace filippov
