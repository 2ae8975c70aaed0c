#pragma once

#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "filippov/normal_forms.hpp"
#include "filippov/system.hpp"
#include "filippov/transition.hpp"

namespace filippov {

/// Polar blow-up x = r cos(theta), eps = r sin(theta). The transition is
/// non-constant only for theta in (pi/4, 3pi/4), reparametrized by
/// rho = 2 theta - pi/2 in (0, pi).
struct BlowupChart {
    double theta = std::numbers::pi / 2;
    double r = 0.0;

    double rho() const { return rho_from_theta(theta); }
    static double rho_from_theta(double theta) { return 2.0 * theta - std::numbers::pi / 2; }
    static double theta_from_rho(double rho) { return (2.0 * rho + std::numbers::pi) / 4.0; }
};

struct FastSlowSample {
    double alpha = 0.0;     // theta' at r = 0
    double beta = 0.0;      // reduced y'
    double residual = 0.0;  // G = A f1 + B f2; alpha = -sin(theta) G
};

/// A = (1 + phi(cot theta))/2, B = (1 - phi)/2, fields at (0, y):
/// alpha = -sin(theta)(A f1 + B f2), beta = A g1 + B g2. DomainError outside (0, pi).
FastSlowSample fast_slow_fields(const NonSmoothSystem& system, const TransitionFunction& tf, double theta, double y);

/// G, beta and their partial derivatives on the r = 0 locus, with the
/// y-restrictions of the fields precomputed.
class BlowupLocus {
public:
    BlowupLocus(const NonSmoothSystem& system, TransitionFunction tf);

    struct Weights {
        double a = 0.0, b = 0.0;
        double da = 0.0;  // dA/dtheta; dB/dtheta = -da
    };
    /// Exact weights at the chart boundaries theta = pi/4 (A = 1) and 3pi/4 (B = 1).
    Weights weights(double theta) const;

    double G(double theta, double y) const;
    double G_y(double theta, double y) const;
    double beta(double theta, double y) const;

    /// Newton on y -> G(theta, y) from y_start; returns false on divergence.
    bool newton(double theta, double& y, double rtol, int max_iter = 50) const;

    const TransitionFunction& transition() const { return tf_; }

    std::vector<double> f1, f2, g1, g2;
    std::vector<double> df1, df2, ddf1, ddf2;

private:
    TransitionFunction tf_;
};

enum class EndpointKind { AsymptoteInfinity, FiniteLimit, DomainEdge };
enum class Stability { Attractor, Repeller, Degenerate };

std::string to_string(Stability s);

struct Endpoint {
    EndpointKind kind = EndpointKind::DomainEdge;
    int sign = 0;        // AsymptoteInfinity: direction of divergence
    double theta = 0.0;  // where the branch ends
    double y = 0.0;      // FiniteLimit: the limit value; otherwise last sample

    /// "AsymptoteInfinity(+)", "FiniteLimit(-0.3)", "DomainEdge"
    std::string label() const;
};

struct CriticalPoint {
    double theta = 0.0;
    double y = 0.0;
    Stability stability = Stability::Degenerate;
};

struct ManifoldSample {
    double theta = 0.0;
    double rho = 0.0;
    double y = 0.0;
    double ydot = 0.0;
};

struct SlowManifoldBranch {
    std::vector<ManifoldSample> samples;  // strictly increasing theta
    Endpoint start;
    Endpoint end;
    std::vector<CriticalPoint> critical_points;

    bool horizontal() const;
    double y_min() const;
    double y_max() const;
};

/// A column theta = theta0 on which G vanishes for every y in the window.
struct VerticalComponent {
    double theta = 0.0;
    double max_residual = 0.0;
    double max_abs_beta = 0.0;
    /// beta vanishes along the whole column: a line of equilibria.
    bool critical_line = false;
};

struct SlowManifoldOptions {
    double theta_min = std::numbers::pi / 4 + 1e-3;
    double theta_max = 3 * std::numbers::pi / 4 - 1e-3;
    double y_min = -50.0;
    double y_max = 50.0;
    int n_theta = 801;
    int n_y = 1001;
    double rtol = 1e-10;
};

struct SlowManifold {
    std::vector<SlowManifoldBranch> branches;
    std::vector<VerticalComponent> verticals;
    int dropped = 0;  // roots whose polish did not reach rtol

    /// Non-horizontal branches plus vertical components.
    int nondegenerate_branch_count() const;
    std::vector<CriticalPoint> critical_points() const;
};

SlowManifold slow_manifold(const NonSmoothSystem& system, const TransitionFunction& tf,
                           const SlowManifoldOptions& opts = {});

/// All real y with G(theta, y) = 0 from the explicit formulas of the normal forms.
std::vector<double> closed_form_slow_manifold(NormalFormKind kind, double lambda, const TransitionFunction& tf,
                                              double theta);

void write_slow_manifold_csv(const SlowManifold& sm, std::ostream& out);
nlohmann::json slow_manifold_to_json(const SlowManifold& sm);

}  // namespace filippov
