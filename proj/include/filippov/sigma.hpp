#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "filippov/system.hpp"

namespace filippov {

inline constexpr double kDefaultSigmaTol = 1e-9;

enum class SigmaLabel {
    Sewing,
    Sliding,   // Sigma3: X.f < 0, Y.f > 0
    Escaping,  // Sigma2: X.f > 0, Y.f < 0
    FoldVisibleX,
    FoldInvisibleX,
    FoldVisibleY,
    FoldInvisibleY,
    CuspNaturalX,
    CuspInverseX,
    CuspNaturalY,
    CuspInverseY,
    FoldFold,
    PseudoEquilibrium,
    BoundaryEquilibrium,
    Degenerate,
};

enum class FoldFoldKind { None, Elliptic, Hyperbolic, ParabolicVisible, ParabolicInvisible };
enum class PseudoKind { None, SigmaSaddle, SigmaAttractor, SigmaRepeller };
enum class Side { None, Upper, Lower };

/// Lie derivatives of f = x along X and Y at the classified point.
struct SignData {
    double xf = 0.0, yf = 0.0;
    double x2f = 0.0, y2f = 0.0;
    double x3f = 0.0, y3f = 0.0;
};

struct SigmaPointClass {
    SigmaLabel label = SigmaLabel::Degenerate;
    FoldFoldKind fold_fold = FoldFoldKind::None;
    PseudoKind pseudo = PseudoKind::None;
    Side side = Side::None;
    double y = 0.0;
    SignData signs;

    /// "Sewing", "FoldFold(Hyperbolic)", "BoundaryEquilibrium(lower)", ...
    std::string name() const;
    bool is_regular_region() const;
    friend bool operator==(const SigmaPointClass&, const SigmaPointClass&) = default;
};

std::string to_string(SigmaLabel label);
std::string to_string(FoldFoldKind kind);
std::string to_string(PseudoKind kind);

SignData sign_data(const NonSmoothSystem& system, double y);

/// Decision tree: boundary equilibria, then regular regions by (X.f, Y.f),
/// tangencies refined by second and third Lie derivatives, fold-folds by the
/// sign pair (X^2.f, Y^2.f). Sliding/escaping points where the sliding field
/// vanishes are handed to classify_pseudo_equilibrium.
SigmaPointClass classify_sigma_point(const NonSmoothSystem& system, double y, double tol = kDefaultSigmaTol);

/// Sewing / Sliding / Escaping from the first Lie derivatives alone, or
/// Degenerate when either is within tol of zero.
SigmaLabel region_of(const NonSmoothSystem& system, double y, double tol = kDefaultSigmaTol);

struct SlidingSample {
    double y = 0.0;
    double value = 0.0;
    SigmaLabel region = SigmaLabel::Sliding;
    /// Weight of X in the convex combination, f2 / (f2 - f1).
    double weight = 0.0;
};

/// y-component of the convex combination of X and Y tangent to Sigma at
/// (0, y); throws PreconditionError outside the sliding/escaping region.
SlidingSample sliding_field(const NonSmoothSystem& system, double y);

/// The same formula without the region check; NaN where f1 = f2.
double sliding_field_value(const NonSmoothSystem& system, double y);

/// Requires a sliding/escaping y with |Z^Sigma(y)| < tol. Stability from the
/// one-sided signs of the sliding field; no sign change gives Degenerate.
SigmaPointClass classify_pseudo_equilibrium(const NonSmoothSystem& system, double y, double tol = kDefaultSigmaTol);

nlohmann::json to_json(const SigmaPointClass& c);

}  // namespace filippov
