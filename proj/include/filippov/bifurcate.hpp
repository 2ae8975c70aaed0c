#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "filippov/gsp.hpp"
#include "filippov/normal_forms.hpp"
#include "filippov/sigma.hpp"

namespace filippov {

enum class Behavior { StabilityOnSigma, SlowFlowSign, SigmaSingularityStability, SewingOrientation };

std::string to_string(Behavior b);

struct SweepOptions {
    double y_min = -2.0;
    double y_max = 2.0;
    int n_sigma = 801;
    int n_theta = 401;
    int n_y = 801;
    double rtol = 1e-10;
    double sigma_tol = kDefaultSigmaTol;
    TransitionFunction tf;
};

struct SigmaSingularity {
    double y = 0.0;
    std::string name;
};

struct SweepRecord {
    double lambda = 0.0;
    /// Organizing point y = 0 is a fold-fold, boundary equilibrium, cusp or
    /// degenerate point; excluded from change attribution.
    bool degenerate = false;
    std::string organizing_class;

    std::vector<SigmaLabel> regions;  // one per Sigma sample
    std::vector<SigmaSingularity> singularities;
    std::vector<int> sewing_orientations;  // sorted subset of {-1, +1}

    int branch_count = 0;  // non-horizontal branches plus vertical components
    int critical_lines = 0;
    std::vector<CriticalPoint> critical_points;       // non-degenerate only
    std::vector<std::vector<int>> beta_signatures;    // per branch, signs of beta in increasing y

    std::vector<Stability> stabilities() const;  // sorted
    int count(SigmaLabel label) const;
};

struct DetectedChange {
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    Behavior behavior = Behavior::StabilityOnSigma;
};

struct BifurcationReport {
    std::string kind;
    std::vector<double> lambda_grid;
    std::vector<double> y_samples;
    std::vector<SweepRecord> records;
    std::vector<DetectedChange> detected_changes;

    bool fires(Behavior b) const;
    bool fires_between(Behavior b, double lo, double hi) const;
};

/// Per-lambda region partition, slow manifold and critical points of a
/// lambda-family, and the four behavior descriptors compared between
/// consecutive non-degenerate rows.
BifurcationReport sweep(const NonSmoothSystem& family, const std::vector<double>& lambda_grid,
                        const SweepOptions& opts = {}, const std::string& name = "custom");
BifurcationReport sweep(NormalFormKind kind, const std::vector<double>& lambda_grid, const SweepOptions& opts = {});

SweepRecord sweep_record(const NonSmoothSystem& system, double lambda, const std::vector<double>& ys,
                         const SweepOptions& opts);

nlohmann::json report_to_json(const BifurcationReport& report);
void write_report_csv(const BifurcationReport& report, std::ostream& out);

}  // namespace filippov
