#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "filippov/system.hpp"

namespace filippov {

enum class NormalFormKind {
    RegularSaddle,
    RegularFocus,
    RegularCusp,
    FoldFoldHyperbolic,
    FoldFoldParabolicVisible,
    FoldFoldParabolicInvisible,
    FoldFoldElliptic,
};

const std::vector<NormalFormKind>& all_normal_form_kinds();

/// CLI spelling: "regular-saddle", "hyperbolic", "parabolic-visible", ...
std::string_view to_string(NormalFormKind kind);
/// Accepts the CLI spelling and the enumerator name; throws ArgumentError.
NormalFormKind parse_normal_form_kind(std::string_view name);

bool is_fold_fold(NormalFormKind kind);

/// X on x >= 0, Y on x <= 0, lambda stored as a parameter:
///   RegularSaddle               X = (1, 1)        Y = (-y, -x - l)
///   RegularFocus                X = (1, 1)        Y = (x + y + l, -x + y - l)
///   RegularCusp                 X = (1, 1)        Y = (l - y^2, -1)
///   FoldFoldHyperbolic          X = (y - l, -1)   Y = (-y, -1)
///   FoldFoldParabolicVisible    X = (y - l, 1)    Y = (-y, -1)
///   FoldFoldParabolicInvisible  X = (y - l, -1)   Y = (y, -1)
///   FoldFoldElliptic            X = (y - l, 1)    Y = (y, -1)
/// eps_unfold is accepted for the elliptic kind only (ArgumentError otherwise)
/// and marks a map-level unfolding; the fields stay the eps = 0 ones.
NonSmoothSystem make_normal_form(NormalFormKind kind, double lambda,
                                 std::optional<double> eps_unfold = std::nullopt);

struct ReturnMapResult {
    double y_out = 0.0;
    double t_upper = 0.0;
    double t_lower = 0.0;
    bool domain_ok = false;
};

/// Closed-form first return of the elliptic fold-fold from (0, y0), y0 < lambda.
/// eps = 0: y0 - 2 lambda. eps != 0: (1 - eps) y0 - 2 lambda + 2 lambda eps + q y0^2.
/// Times are those of the eps = 0 flows: t_upper = 2(lambda - y0), t_lower = 2(2 lambda - y0).
ReturnMapResult elliptic_return_map(double lambda, double eps_unfold, double y0, double quadratic = 0.0);

/// Fixed point and multiplier of the linear unfolded map (eps != 0).
struct FixedPoint {
    double y = 0.0;
    double multiplier = 0.0;
};
FixedPoint unfolded_fixed_point(double lambda, double eps_unfold);

struct ReturnMapOptions {
    double t_bound = 100.0;
    double rtol = 1e-12;
    double atol = 1e-14;
    double max_step = 0.05;
};

/// First return by event-detected integration: upper field from (0, y0) to
/// its next Sigma hit, then lower field to its next hit. Requires the lambda = 0
/// member to be an elliptic fold-fold at y = 0; otherwise domain_ok = false.
ReturnMapResult numeric_return_map(const NonSmoothSystem& system, double y0, const ReturnMapOptions& opts = {});

}  // namespace filippov
