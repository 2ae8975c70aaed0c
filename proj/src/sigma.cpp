#include "filippov/sigma.hpp"

#include <cmath>
#include <limits>

#include "filippov/errors.hpp"

namespace filippov {

std::string to_string(SigmaLabel label) {
    switch (label) {
        case SigmaLabel::Sewing: return "Sewing";
        case SigmaLabel::Sliding: return "Sliding";
        case SigmaLabel::Escaping: return "Escaping";
        case SigmaLabel::FoldVisibleX: return "FoldVisibleX";
        case SigmaLabel::FoldInvisibleX: return "FoldInvisibleX";
        case SigmaLabel::FoldVisibleY: return "FoldVisibleY";
        case SigmaLabel::FoldInvisibleY: return "FoldInvisibleY";
        case SigmaLabel::CuspNaturalX: return "CuspNaturalX";
        case SigmaLabel::CuspInverseX: return "CuspInverseX";
        case SigmaLabel::CuspNaturalY: return "CuspNaturalY";
        case SigmaLabel::CuspInverseY: return "CuspInverseY";
        case SigmaLabel::FoldFold: return "FoldFold";
        case SigmaLabel::PseudoEquilibrium: return "PseudoEquilibrium";
        case SigmaLabel::BoundaryEquilibrium: return "BoundaryEquilibrium";
        case SigmaLabel::Degenerate: return "Degenerate";
    }
    return "Degenerate";
}

std::string to_string(FoldFoldKind kind) {
    switch (kind) {
        case FoldFoldKind::None: return "None";
        case FoldFoldKind::Elliptic: return "Elliptic";
        case FoldFoldKind::Hyperbolic: return "Hyperbolic";
        case FoldFoldKind::ParabolicVisible: return "ParabolicVisible";
        case FoldFoldKind::ParabolicInvisible: return "ParabolicInvisible";
    }
    return "None";
}

std::string to_string(PseudoKind kind) {
    switch (kind) {
        case PseudoKind::None: return "None";
        case PseudoKind::SigmaSaddle: return "SigmaSaddle";
        case PseudoKind::SigmaAttractor: return "SigmaAttractor";
        case PseudoKind::SigmaRepeller: return "SigmaRepeller";
    }
    return "None";
}

std::string SigmaPointClass::name() const {
    switch (label) {
        case SigmaLabel::FoldFold: return "FoldFold(" + to_string(fold_fold) + ")";
        case SigmaLabel::PseudoEquilibrium: return "PseudoEquilibrium(" + to_string(pseudo) + ")";
        case SigmaLabel::BoundaryEquilibrium:
            return std::string("BoundaryEquilibrium(") + (side == Side::Upper ? "upper" : "lower") + ")";
        default: return to_string(label);
    }
}

bool SigmaPointClass::is_regular_region() const {
    return label == SigmaLabel::Sewing || label == SigmaLabel::Sliding || label == SigmaLabel::Escaping;
}

SignData sign_data(const NonSmoothSystem& system, double y) {
    const Vec2 q{0.0, y};
    const auto& X = system.upper();
    const auto& Y = system.lower();
    return {lie_derivative(X, 1, q), lie_derivative(Y, 1, q), lie_derivative(X, 2, q),
            lie_derivative(Y, 2, q), lie_derivative(X, 3, q), lie_derivative(Y, 3, q)};
}

SigmaLabel region_of(const NonSmoothSystem& system, double y, double tol) {
    const Vec2 q{0.0, y};
    const double xf = lie_derivative(system.upper(), 1, q);
    const double yf = lie_derivative(system.lower(), 1, q);
    if (std::abs(xf) < tol || std::abs(yf) < tol) return SigmaLabel::Degenerate;
    if (xf * yf > 0.0) return SigmaLabel::Sewing;
    return xf < 0.0 ? SigmaLabel::Sliding : SigmaLabel::Escaping;
}

SigmaPointClass classify_sigma_point(const NonSmoothSystem& system, double y, double tol) {
    if (!(tol > 0.0)) throw DomainError("classification tolerance must be positive");
    SigmaPointClass c;
    c.y = y;
    c.signs = sign_data(system, y);
    const SignData& s = c.signs;
    const Vec2 q{0.0, y};

    if (norm(system.upper()(q)) < tol || norm(system.lower()(q)) < tol) {
        c.label = SigmaLabel::BoundaryEquilibrium;
        c.side = norm(system.upper()(q)) < tol ? Side::Upper : Side::Lower;
        return c;
    }

    const bool x_tangent = std::abs(s.xf) < tol;
    const bool y_tangent = std::abs(s.yf) < tol;

    if (!x_tangent && !y_tangent) {
        if (s.xf * s.yf > 0.0) {
            c.label = SigmaLabel::Sewing;
            return c;
        }
        c.label = s.xf < 0.0 ? SigmaLabel::Sliding : SigmaLabel::Escaping;
        if (std::abs(sliding_field(system, y).value) < tol) return classify_pseudo_equilibrium(system, y, tol);
        return c;
    }

    if (x_tangent && y_tangent) {
        if (std::abs(s.x2f) < tol || std::abs(s.y2f) < tol) {
            c.label = SigmaLabel::Degenerate;
            return c;
        }
        c.label = SigmaLabel::FoldFold;
        if (s.x2f > 0.0 && s.y2f < 0.0) c.fold_fold = FoldFoldKind::Elliptic;
        else if (s.x2f < 0.0 && s.y2f > 0.0) c.fold_fold = FoldFoldKind::Hyperbolic;
        else if (s.x2f > 0.0) c.fold_fold = FoldFoldKind::ParabolicVisible;
        else c.fold_fold = FoldFoldKind::ParabolicInvisible;
        return c;
    }

    if (x_tangent) {
        c.side = Side::Upper;
        if (std::abs(s.x2f) >= tol) c.label = s.x2f > 0.0 ? SigmaLabel::FoldVisibleX : SigmaLabel::FoldInvisibleX;
        else if (std::abs(s.x3f) >= tol) c.label = s.x3f > 0.0 ? SigmaLabel::CuspNaturalX : SigmaLabel::CuspInverseX;
        else c.label = SigmaLabel::Degenerate;
        return c;
    }

    // Y lives on x <= 0: mirror the signs so "visible" means the contact
    // parabola lies in Sigma-.
    c.side = Side::Lower;
    if (std::abs(s.y2f) >= tol) c.label = s.y2f < 0.0 ? SigmaLabel::FoldVisibleY : SigmaLabel::FoldInvisibleY;
    else if (std::abs(s.y3f) >= tol) c.label = s.y3f < 0.0 ? SigmaLabel::CuspNaturalY : SigmaLabel::CuspInverseY;
    else c.label = SigmaLabel::Degenerate;
    return c;
}

SlidingSample sliding_field(const NonSmoothSystem& system, double y) {
    const Vec2 q{0.0, y};
    const Vec2 X = system.upper()(q);
    const Vec2 Y = system.lower()(q);
    const double f1 = X.x;
    const double f2 = Y.x;
    if (!(f1 * f2 < 0.0)) {
        const std::string region = f1 * f2 > 0.0 ? "Sewing" : "tangency";
        throw PreconditionError("sliding field undefined at y=" + std::to_string(y) + ": point is in the " + region +
                                " region");
    }
    SlidingSample s;
    s.y = y;
    s.weight = f2 / (f2 - f1);
    s.value = (f2 * X.y - f1 * Y.y) / (f2 - f1);
    s.region = f1 < 0.0 ? SigmaLabel::Sliding : SigmaLabel::Escaping;
    return s;
}

double sliding_field_value(const NonSmoothSystem& system, double y) {
    const Vec2 q{0.0, y};
    const Vec2 X = system.upper()(q);
    const Vec2 Y = system.lower()(q);
    const double den = Y.x - X.x;
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (Y.x * X.y - X.x * Y.y) / den;
}

SigmaPointClass classify_pseudo_equilibrium(const NonSmoothSystem& system, double y, double tol) {
    const SlidingSample here = sliding_field(system, y);
    if (!(std::abs(here.value) < tol)) {
        throw PreconditionError("sliding field does not vanish at y=" + std::to_string(y));
    }
    SigmaPointClass c;
    c.y = y;
    c.signs = sign_data(system, y);
    c.label = SigmaLabel::PseudoEquilibrium;

    // Step outward until the sliding field is clearly nonzero on each side.
    double below = 0.0;
    double above = 0.0;
    for (double h = 1e-7 * std::max(1.0, std::abs(y)); h < 1e-1; h *= 4.0) {
        try {
            below = sliding_field(system, y - h).value;
            above = sliding_field(system, y + h).value;
        } catch (const PreconditionError&) {
            break;
        }
        if (std::abs(below) > tol && std::abs(above) > tol) break;
    }
    const bool attractor = below > tol && above < -tol;
    const bool repeller = below < -tol && above > tol;
    if (!attractor && !repeller) {
        c.label = SigmaLabel::Degenerate;
        return c;
    }
    const bool sigma3 = here.region == SigmaLabel::Sliding;
    if (sigma3) c.pseudo = attractor ? PseudoKind::SigmaAttractor : PseudoKind::SigmaSaddle;
    else c.pseudo = attractor ? PseudoKind::SigmaSaddle : PseudoKind::SigmaRepeller;
    return c;
}

nlohmann::json to_json(const SigmaPointClass& c) {
    return {{"label", c.name()},
            {"y", c.y},
            {"signs",
             {{"Xf", c.signs.xf},
              {"Yf", c.signs.yf},
              {"X2f", c.signs.x2f},
              {"Y2f", c.signs.y2f},
              {"X3f", c.signs.x3f},
              {"Y3f", c.signs.y3f}}}};
}

}  // namespace filippov
