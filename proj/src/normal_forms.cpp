#include "filippov/normal_forms.hpp"

#include <cmath>

#include "filippov/errors.hpp"
#include "filippov/integrate.hpp"
#include "filippov/sigma.hpp"

namespace filippov {

namespace {

using Term = ParametricPolynomial::Term;

ParametricPolynomial terms(std::vector<Term> t) { return ParametricPolynomial(std::move(t)); }

// y - lambda
ParametricPolynomial y_minus_lambda() { return terms({{0, 1, 1.0, {}}, {0, 0, -1.0, kLambda}}); }
ParametricPolynomial constant(double c) { return terms({{0, 0, c, {}}}); }

struct KindName {
    NormalFormKind kind;
    std::string_view cli;
    std::string_view enumerator;
};

constexpr KindName kNames[] = {
    {NormalFormKind::RegularSaddle, "regular-saddle", "RegularSaddle"},
    {NormalFormKind::RegularFocus, "regular-focus", "RegularFocus"},
    {NormalFormKind::RegularCusp, "regular-cusp", "RegularCusp"},
    {NormalFormKind::FoldFoldHyperbolic, "hyperbolic", "FoldFoldHyperbolic"},
    {NormalFormKind::FoldFoldParabolicVisible, "parabolic-visible", "FoldFoldParabolicVisible"},
    {NormalFormKind::FoldFoldParabolicInvisible, "parabolic-invisible", "FoldFoldParabolicInvisible"},
    {NormalFormKind::FoldFoldElliptic, "elliptic", "FoldFoldElliptic"},
};

}  // namespace

const std::vector<NormalFormKind>& all_normal_form_kinds() {
    static const std::vector<NormalFormKind> kinds = [] {
        std::vector<NormalFormKind> v;
        for (const auto& n : kNames) v.push_back(n.kind);
        return v;
    }();
    return kinds;
}

std::string_view to_string(NormalFormKind kind) {
    for (const auto& n : kNames) {
        if (n.kind == kind) return n.cli;
    }
    return "?";
}

NormalFormKind parse_normal_form_kind(std::string_view name) {
    for (const auto& n : kNames) {
        if (n.cli == name || n.enumerator == name) return n.kind;
    }
    throw ArgumentError("unknown normal form '" + std::string(name) + "'");
}

bool is_fold_fold(NormalFormKind kind) {
    return kind == NormalFormKind::FoldFoldHyperbolic || kind == NormalFormKind::FoldFoldParabolicVisible ||
           kind == NormalFormKind::FoldFoldParabolicInvisible || kind == NormalFormKind::FoldFoldElliptic;
}

NonSmoothSystem make_normal_form(NormalFormKind kind, double lambda, std::optional<double> eps_unfold) {
    if (eps_unfold && kind != NormalFormKind::FoldFoldElliptic) {
        throw ArgumentError("eps_unfold applies to the elliptic fold-fold only, not " + std::string(to_string(kind)));
    }
    const ParametricField unit{constant(1.0), constant(1.0)};
    ParametricField X;
    ParametricField Y;
    switch (kind) {
        case NormalFormKind::RegularSaddle:
            X = unit;
            Y = {terms({{0, 1, -1.0, {}}}), terms({{1, 0, -1.0, {}}, {0, 0, -1.0, kLambda}})};
            break;
        case NormalFormKind::RegularFocus:
            X = unit;
            Y = {terms({{1, 0, 1.0, {}}, {0, 1, 1.0, {}}, {0, 0, 1.0, kLambda}}),
                 terms({{1, 0, -1.0, {}}, {0, 1, 1.0, {}}, {0, 0, -1.0, kLambda}})};
            break;
        case NormalFormKind::RegularCusp:
            X = unit;
            Y = {terms({{0, 0, 1.0, kLambda}, {0, 2, -1.0, {}}}), constant(-1.0)};
            break;
        case NormalFormKind::FoldFoldHyperbolic:
            X = {y_minus_lambda(), constant(-1.0)};
            Y = {terms({{0, 1, -1.0, {}}}), constant(-1.0)};
            break;
        case NormalFormKind::FoldFoldParabolicVisible:
            X = {y_minus_lambda(), constant(1.0)};
            Y = {terms({{0, 1, -1.0, {}}}), constant(-1.0)};
            break;
        case NormalFormKind::FoldFoldParabolicInvisible:
            X = {y_minus_lambda(), constant(-1.0)};
            Y = {terms({{0, 1, 1.0, {}}}), constant(-1.0)};
            break;
        case NormalFormKind::FoldFoldElliptic:
            X = {y_minus_lambda(), constant(1.0)};
            Y = {terms({{0, 1, 1.0, {}}}), constant(-1.0)};
            break;
    }
    NonSmoothSystem system(std::move(X), std::move(Y), {{kLambda, lambda}});
    if (eps_unfold) system = system.with_map_level_unfolding(*eps_unfold);
    return system;
}

ReturnMapResult elliptic_return_map(double lambda, double eps_unfold, double y0, double quadratic) {
    ReturnMapResult r;
    const double y1 = 2.0 * lambda - y0;
    if (!(y0 < lambda) || !(y1 > 0.0)) return r;
    r.domain_ok = true;
    r.t_upper = 2.0 * (lambda - y0);
    r.t_lower = 2.0 * y1;
    if (eps_unfold == 0.0 && quadratic == 0.0) {
        r.y_out = y0 - 2.0 * lambda;
    } else {
        r.y_out = (1.0 - eps_unfold) * y0 - 2.0 * lambda + 2.0 * lambda * eps_unfold + quadratic * y0 * y0;
    }
    return r;
}

FixedPoint unfolded_fixed_point(double lambda, double eps_unfold) {
    if (eps_unfold == 0.0) throw DomainError("the eps_unfold = 0 map is a translation with no isolated fixed point");
    return {-2.0 * lambda * (1.0 - eps_unfold) / eps_unfold, 1.0 - eps_unfold};
}

ReturnMapResult numeric_return_map(const NonSmoothSystem& system, double y0, const ReturnMapOptions& opts) {
    ReturnMapResult r;
    NonSmoothSystem organizing = system;
    if (system.has_param(kLambda)) organizing = system.with_param(kLambda, 0.0);
    const SigmaPointClass c = classify_sigma_point(organizing, 0.0);
    if (c.label != SigmaLabel::FoldFold || c.fold_fold != FoldFoldKind::Elliptic) return r;

    IntegrationOptions io;
    io.rtol = opts.rtol;
    io.atol = opts.atol;
    io.max_step = opts.max_step;
    const SectionHit up = flow_to_section(system.upper(), {0.0, y0}, opts.t_bound, io);
    if (!up.found) return r;
    const SectionHit down = flow_to_section(system.lower(), up.point, opts.t_bound, io);
    if (!down.found) return r;
    r.domain_ok = true;
    r.y_out = down.point.y;
    r.t_upper = up.t;
    r.t_lower = down.t;
    return r;
}

}  // namespace filippov
