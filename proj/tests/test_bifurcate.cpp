#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "filippov/bifurcate.hpp"
#include "filippov/errors.hpp"

using namespace filippov;

namespace {

std::vector<Stability> stab(const SweepRecord& r) { return r.stabilities(); }

}  // namespace

TEST_CASE("elliptic sweep") {
    const auto rep = sweep(NormalFormKind::FoldFoldElliptic, {-0.4, 0.0, 0.4});
    REQUIRE(rep.records.size() == 3);
    CHECK(stab(rep.records[0]) == std::vector<Stability>{Stability::Attractor});
    CHECK(stab(rep.records[1]).empty());
    CHECK(stab(rep.records[2]) == std::vector<Stability>{Stability::Repeller});
    CHECK(rep.records[1].degenerate);
    CHECK(rep.records[1].organizing_class == "FoldFold(Elliptic)");
    CHECK(rep.fires(Behavior::SlowFlowSign));
    CHECK(rep.fires(Behavior::SigmaSingularityStability));
    CHECK(rep.fires_between(Behavior::SlowFlowSign, -0.4, 0.4));
    CHECK(rep.kind == "elliptic");
}

TEST_CASE("elliptic lambda = 0 is pure sewing near the fold-fold") {
    SweepOptions o;
    const auto rep = sweep(NormalFormKind::FoldFoldElliptic, {-0.1, 0.0, 0.1}, o);
    const auto& r = rep.records[1];
    for (std::size_t i = 0; i < rep.y_samples.size(); ++i) {
        const double y = rep.y_samples[i];
        if (std::abs(y) > 1.0 || y == 0.0) continue;
        CAPTURE(y);
        CHECK(r.regions[i] == SigmaLabel::Sewing);
    }
    CHECK(r.count(SigmaLabel::Sliding) == 0);
    CHECK(r.count(SigmaLabel::Escaping) == 0);
}

TEST_CASE("changes are reported between consecutive non-degenerate rows") {
    for (auto k : all_normal_form_kinds()) {
        const std::vector<double> grid{-0.4, -0.2, 0.0, 0.2, 0.4};
        const auto rep = sweep(k, grid);
        CAPTURE(to_string(k));
        for (const auto& c : rep.detected_changes) {
            auto lo = std::find(grid.begin(), grid.end(), c.lambda_lo);
            auto hi = std::find(grid.begin(), grid.end(), c.lambda_hi);
            REQUIRE(lo != grid.end());
            REQUIRE(hi != grid.end());
            CHECK(lo < hi);
            for (auto it = lo + 1; it < hi; ++it) {
                CHECK(rep.records[static_cast<std::size_t>(it - grid.begin())].degenerate);
            }
            CHECK_FALSE(rep.records[static_cast<std::size_t>(lo - grid.begin())].degenerate);
            CHECK_FALSE(rep.records[static_cast<std::size_t>(hi - grid.begin())].degenerate);
        }
    }
}

TEST_CASE("refining the grid narrows changes without removing them") {
    for (auto k : all_normal_form_kinds()) {
        const auto coarse = sweep(k, {-0.4, 0.0, 0.4});
        const auto fine = sweep(k, {-0.4, -0.25, -0.1, 0.0, 0.1, 0.25, 0.4});
        CAPTURE(to_string(k));
        for (const auto& c : coarse.detected_changes) {
            bool found = false;
            for (const auto& f : fine.detected_changes) {
                found = found || (f.behavior == c.behavior && f.lambda_lo >= c.lambda_lo && f.lambda_hi <= c.lambda_hi);
            }
            CAPTURE(to_string(c.behavior));
            CHECK(found);
        }
    }
}

TEST_CASE("every family changes behavior across lambda = 0") {
    for (auto k : all_normal_form_kinds()) {
        const auto rep = sweep(k, {-0.3, 0.0, 0.3});
        CAPTURE(to_string(k));
        CHECK_FALSE(rep.detected_changes.empty());
    }
}

TEST_CASE("descriptor table") {
    auto row = [](NormalFormKind k, double l) { return sweep(k, {l, l + 1e-3}).records[0]; };
    CHECK(row(NormalFormKind::RegularSaddle, -0.3).critical_points.empty());
    CHECK(stab(row(NormalFormKind::RegularSaddle, 0.3)) == std::vector<Stability>{Stability::Repeller});
    CHECK(row(NormalFormKind::RegularSaddle, 0.3).branch_count == 1);
    CHECK(row(NormalFormKind::RegularCusp, -0.3).branch_count == 2);
    CHECK(stab(row(NormalFormKind::RegularCusp, 0.3)) ==
          std::vector<Stability>{Stability::Attractor, Stability::Repeller});
    CHECK(row(NormalFormKind::FoldFoldHyperbolic, 0.3).branch_count == 2);
    CHECK(row(NormalFormKind::FoldFoldHyperbolic, 0.3).critical_points.empty());
    CHECK(row(NormalFormKind::FoldFoldParabolicInvisible, -0.3).critical_points.empty());
    const auto pv0 = sweep(NormalFormKind::FoldFoldParabolicVisible, {-0.1, 0.0, 0.1}).records[1];
    CHECK(pv0.critical_lines == 1);
}

TEST_CASE("regular focus sweep" * doctest::test_suite("claims")) {
    const auto rep = sweep(NormalFormKind::RegularFocus, {-0.5, 0.0, 0.5});
    CHECK(rep.records[0].critical_points.size() == 0);
    CHECK(rep.records[1].critical_points.size() == 0);
    CHECK(rep.records[2].critical_points.size() == 1);
    CHECK(stab(rep.records[2]) == std::vector<Stability>{Stability::Attractor});
    CHECK(rep.fires_between(Behavior::SigmaSingularityStability, 0.0, 0.5));
}

TEST_CASE("custom family") {
    // Hyperbolic fold-fold written by hand with lambda on the lower field instead.
    ParametricField up{Polynomial::y(), Polynomial(-1.0)};
    ParametricPolynomial lpx;
    lpx.add(0, 1, -1.0).add(0, 0, 1.0, kLambda);
    const NonSmoothSystem fam(up, ParametricField{lpx, Polynomial(-1.0)}, {{kLambda, 0.0}});
    const auto rep = sweep(fam, {-0.3, 0.0, 0.3}, {}, "shifted-hyperbolic");
    CHECK(rep.kind == "shifted-hyperbolic");
    CHECK(rep.records[1].degenerate);
    CHECK(rep.fires(Behavior::SewingOrientation));
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(sweep(NormalFormKind::FoldFoldElliptic, {0.1}), ArgumentError);
    CHECK_THROWS_AS(sweep(NormalFormKind::FoldFoldElliptic, {0.1, -0.1}), ArgumentError);
    CHECK_THROWS_AS(sweep(NormalFormKind::FoldFoldElliptic, {0.1, 0.1}), ArgumentError);
}

TEST_CASE("report output") {
    const auto rep = sweep(NormalFormKind::FoldFoldElliptic, {-0.4, 0.0, 0.4});
    const auto j = report_to_json(rep);
    CHECK(j["records"].size() == 3);
    CHECK(j["records"][0]["critical_points"][0]["stability"] == "Attractor");
    CHECK(j["detected_changes"].size() == rep.detected_changes.size());
    std::ostringstream out;
    write_report_csv(rep, out);
    const std::string csv = out.str();
    CHECK(csv.rfind("lambda,degenerate,branch_count", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find('\r') == std::string::npos);
}
