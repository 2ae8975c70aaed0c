#include "doctest.h"

#include <cmath>
#include <random>

#include "filippov/errors.hpp"
#include "filippov/normal_forms.hpp"
#include "filippov/sigma.hpp"
#include "oracles.hpp"

using namespace filippov;

namespace {

const Polynomial X = Polynomial::x();
const Polynomial Y = Polynomial::y();

NonSmoothSystem sys(Polynomial f1, Polynomial g1, Polynomial f2, Polynomial g2) {
    return NonSmoothSystem(ParametricField{f1, g1}, ParametricField{f2, g2});
}

NonSmoothSystem nf(NormalFormKind k, double lambda) { return make_normal_form(k, lambda); }

/// Random degree <= 2 system together with 20 points of Sigma lying in its
/// sliding or escaping region (fewer if the region is too small).
std::vector<double> crossing_free_points(const NonSmoothSystem& s, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-3, 3);
    std::vector<double> ys;
    for (int tries = 0; tries < 2000 && ys.size() < 20; ++tries) {
        const double y = u(rng);
        const double a = s.upper()({0, y}).x, b = s.lower()({0, y}).x;
        if (a * b < 0 && std::abs(a) > 1e-3 && std::abs(b) > 1e-3) ys.push_back(y);
    }
    return ys;
}

}  // namespace

TEST_CASE("classify examples") {
    CHECK(classify_sigma_point(nf(NormalFormKind::RegularSaddle, 0), -1).label == SigmaLabel::Sewing);
    const auto hyp = classify_sigma_point(nf(NormalFormKind::FoldFoldHyperbolic, 0), 0);
    CHECK(hyp.label == SigmaLabel::FoldFold);
    CHECK(hyp.fold_fold == FoldFoldKind::Hyperbolic);
    CHECK(hyp.name() == "FoldFold(Hyperbolic)");
    const auto be = classify_sigma_point(nf(NormalFormKind::RegularSaddle, 0), 0);
    CHECK(be.label == SigmaLabel::BoundaryEquilibrium);
    CHECK(be.name() == "BoundaryEquilibrium(lower)");
    CHECK(classify_sigma_point(nf(NormalFormKind::FoldFoldElliptic, 0), 0).name() == "FoldFold(Elliptic)");
}

TEST_CASE("organizing points of the fold-fold normal forms") {
    CHECK(classify_sigma_point(nf(NormalFormKind::FoldFoldParabolicVisible, 0), 0).name() ==
          "FoldFold(ParabolicVisible)");
    CHECK(classify_sigma_point(nf(NormalFormKind::FoldFoldParabolicInvisible, 0), 0).name() ==
          "FoldFold(ParabolicInvisible)");
    CHECK(classify_sigma_point(nf(NormalFormKind::RegularFocus, 0), 0).label == SigmaLabel::BoundaryEquilibrium);
    const auto cusp = classify_sigma_point(nf(NormalFormKind::RegularCusp, 0), 0);
    CHECK(cusp.side == Side::Lower);
    CHECK((cusp.label == SigmaLabel::CuspNaturalY || cusp.label == SigmaLabel::CuspInverseY));
}

TEST_CASE("single folds are side aware") {
    // X = (y, 1): X.f = y, X^2.f = 1 > 0, visible from Sigma+.
    const auto up = sys(Y, Polynomial(1.0), Polynomial(1.0), Polynomial(0.0));
    CHECK(classify_sigma_point(up, 0).label == SigmaLabel::FoldVisibleX);
    const auto up_inv = sys(Y, Polynomial(-1.0), Polynomial(1.0), Polynomial(0.0));
    CHECK(classify_sigma_point(up_inv, 0).label == SigmaLabel::FoldInvisibleX);
    // Y = (y, -1): Y^2.f = -1 < 0, the parabola lies in Sigma-.
    const auto lo = sys(Polynomial(1.0), Polynomial(0.0), Y, Polynomial(-1.0));
    CHECK(classify_sigma_point(lo, 0).label == SigmaLabel::FoldVisibleY);
    const auto lo_inv = sys(Polynomial(1.0), Polynomial(0.0), Y, Polynomial(1.0));
    CHECK(classify_sigma_point(lo_inv, 0).label == SigmaLabel::FoldInvisibleY);
}

TEST_CASE("classification carries the sign data that produced it") {
    const auto c = classify_sigma_point(nf(NormalFormKind::FoldFoldHyperbolic, 0), 0);
    CHECK(c.signs.xf == 0.0);
    CHECK(c.signs.yf == 0.0);
    CHECK(c.signs.x2f == -1.0);
    CHECK(c.signs.y2f == 1.0);
    const auto j = to_json(c);
    CHECK(j["label"] == "FoldFold(Hyperbolic)");
    CHECK(j["signs"]["X2f"] == -1.0);
}

TEST_CASE("region definitions") {
    const auto s = nf(NormalFormKind::FoldFoldHyperbolic, 0.0);  // X.f = y, Y.f = -y
    CHECK(region_of(s, -0.5) == SigmaLabel::Sliding);
    CHECK(region_of(s, 0.5) == SigmaLabel::Escaping);
    CHECK(region_of(s, 0.0) == SigmaLabel::Degenerate);
    const auto e = nf(NormalFormKind::FoldFoldElliptic, 0.0);  // X.f = y, Y.f = y
    CHECK(region_of(e, -0.5) == SigmaLabel::Sewing);
    CHECK(region_of(e, 0.5) == SigmaLabel::Sewing);
}

TEST_CASE("sliding field examples") {
    const auto saddle = nf(NormalFormKind::RegularSaddle, 0.0);
    const auto s = sliding_field(saddle, 1.0);
    CHECK(s.region == SigmaLabel::Escaping);
    CHECK(s.value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.value == doctest::Approx(oracle::brute_sliding(saddle, 1.0)).epsilon(1e-9));
    for (double lambda : {-0.4, 0.0, 0.7}) {
        const auto hyp = nf(NormalFormKind::FoldFoldHyperbolic, lambda);
        CHECK(sliding_field(hyp, std::min(0.0, lambda) - 0.5).value == doctest::Approx(-1.0).epsilon(1e-15));
    }
    const auto pv = nf(NormalFormKind::FoldFoldParabolicVisible, 0.0);
    const auto v = sliding_field(pv, -0.5);
    CHECK(v.weight == doctest::Approx(0.5));
    CHECK(v.value == doctest::Approx(oracle::brute_sliding(pv, -0.5)).scale(1.0).epsilon(1e-9));
    CHECK(std::abs(v.value) < 1e-12);
}

TEST_CASE("sliding field rejects sewing and tangency points") {
    const auto saddle = nf(NormalFormKind::RegularSaddle, 0.0);
    CHECK_THROWS_AS(sliding_field(saddle, -1.0), PreconditionError);
    CHECK_THROWS_WITH_AS(sliding_field(saddle, -1.0), doctest::Contains("Sewing"), PreconditionError);
    CHECK_THROWS_AS(sliding_field(nf(NormalFormKind::FoldFoldHyperbolic, 0.0), 0.0), PreconditionError);
}

TEST_CASE("pseudo-equilibria") {
    const auto a = sys(Polynomial(-1.0), Y, Polynomial(1.0), Y);
    CHECK(sliding_field(a, 0.3).value == doctest::Approx(0.3));
    const auto c = classify_pseudo_equilibrium(a, 0.0);
    CHECK(c.label == SigmaLabel::PseudoEquilibrium);
    CHECK(c.pseudo == PseudoKind::SigmaSaddle);
    CHECK(classify_sigma_point(a, 0.0).pseudo == PseudoKind::SigmaSaddle);

    const auto b = sys(Polynomial(-1.0), -Y, Polynomial(1.0), -Y);
    CHECK(classify_pseudo_equilibrium(b, 0.0).pseudo == PseudoKind::SigmaAttractor);
    CHECK(classify_pseudo_equilibrium(b.reversed(), 0.0).pseudo == PseudoKind::SigmaRepeller);
    CHECK(classify_pseudo_equilibrium(a.reversed(), 0.0).pseudo == PseudoKind::SigmaSaddle);

    const auto flat = sys(Polynomial(-1.0), Y * Y, Polynomial(1.0), Y * Y);
    CHECK(classify_pseudo_equilibrium(flat, 0.0).label == SigmaLabel::Degenerate);
    CHECK_THROWS_AS(classify_pseudo_equilibrium(a, 0.5), PreconditionError);
}

TEST_CASE("sliding field matches the convex-combination scan on random systems") {
    std::mt19937 rng(20240601);
    int systems = 0, points = 0;
    while (systems < 200) {
        const auto s = sys(oracle::random_polynomial(rng, 2), oracle::random_polynomial(rng, 2),
                           oracle::random_polynomial(rng, 2), oracle::random_polynomial(rng, 2));
        const auto ys = crossing_free_points(s, rng);
        if (ys.size() < 20) continue;
        ++systems;
        for (double y : ys) {
            const auto v = sliding_field(s, y);
            CHECK(v.weight >= 0.0);
            CHECK(v.weight <= 1.0);
            CHECK(std::abs(v.value - oracle::brute_sliding(s, y)) <= 1e-9);
            ++points;
        }
    }
    CHECK(points == 4000);
}

TEST_CASE("escaping field is minus the sliding field of the reversed system") {
    std::mt19937 rng(5);
    for (int k = 0; k < 50; ++k) {
        const auto s = sys(oracle::random_polynomial(rng, 2), oracle::random_polynomial(rng, 2),
                           oracle::random_polynomial(rng, 2), oracle::random_polynomial(rng, 2));
        for (double y : crossing_free_points(s, rng)) {
            const auto v = sliding_field(s, y);
            const auto r = sliding_field(s.reversed(), y);
            CHECK(r.region != v.region);
            CHECK(r.value == doctest::Approx(-v.value).epsilon(1e-13));
        }
    }
}

TEST_CASE("classification is invariant under positive scaling") {
    for (auto kind : all_normal_form_kinds()) {
        for (double lambda : {-0.3, 0.0, 0.3}) {
            const auto s = nf(kind, lambda);
            for (double k : {0.5, 3.0}) {
                const auto t = s.scaled(k);
                for (double y = -2; y <= 2; y += 0.125) {
                    CAPTURE(to_string(kind));
                    CAPTURE(y);
                    CHECK(classify_sigma_point(t, y).name() == classify_sigma_point(s, y).name());
                }
            }
        }
    }
}

TEST_CASE("region partition changes only where X.f Y.f changes sign") {
    for (auto kind : all_normal_form_kinds()) {
        for (double lambda : {-0.5, -0.1, 0.0, 0.1, 0.5}) {
            const auto s = nf(kind, lambda);
            const int n = 801;
            SigmaLabel prev{};
            double prev_prod = 0;
            for (int i = 0; i < n; ++i) {
                const double y = -2.0 + 4.0 * i / (n - 1);
                const double a = s.upper()({0, y}).x, b = s.lower()({0, y}).x;
                const auto label = region_of(s, y);
                const auto c = classify_sigma_point(s, y);
                if (std::abs(a) > 1e-9 && std::abs(b) > 1e-9) {
                    CHECK(label == (a * b > 0 ? SigmaLabel::Sewing : a < 0 ? SigmaLabel::Sliding : SigmaLabel::Escaping));
                    if (a * b < 0 && std::abs(sliding_field_value(s, y)) < 1e-9) {
                        CHECK((c.label == SigmaLabel::PseudoEquilibrium || c.label == SigmaLabel::Degenerate));
                    } else {
                        CHECK(c.label == label);
                    }
                    if (i > 0 && prev != SigmaLabel::Degenerate && label != prev) CHECK(a * b * prev_prod <= 0);
                } else {
                    CHECK_FALSE(c.is_regular_region());
                }
                prev = label;
                prev_prod = a * b;
            }
        }
    }
}
