#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "filippov/field.hpp"

namespace filippov {

using ParamMap = std::map<std::string, double>;

inline constexpr const char* kLambda = "lambda";
inline constexpr const char* kEpsUnfold = "eps_unfold";

/// Z = (X, Y) split by Sigma = {x = 0}: X (upper) acts on x >= 0, Y (lower)
/// on x <= 0. Parameters are substituted into the parametric coefficients at
/// construction; with_param() re-substitutes without touching term structure.
class NonSmoothSystem {
public:
    NonSmoothSystem() = default;
    NonSmoothSystem(ParametricField upper, ParametricField lower, ParamMap params = {});

    const PolyField& upper() const { return upper_; }
    const PolyField& lower() const { return lower_; }
    const ParametricField& upper_parametric() const { return upper_param_; }
    const ParametricField& lower_parametric() const { return lower_param_; }
    const ParamMap& params() const { return params_; }

    bool has_param(const std::string& name) const { return params_.contains(name); }
    double param(const std::string& name) const;
    NonSmoothSystem with_param(const std::string& name, double value) const;

    /// True for the elliptic fold-fold carrying an eps_unfold value: the
    /// unfolding acts on the return map only, the lower field is the eps=0 one.
    bool map_level_unfolding() const { return map_level_unfolding_; }
    NonSmoothSystem with_map_level_unfolding(double eps_unfold) const;

    /// -Z = (-X, -Y): same orbits, reversed time.
    NonSmoothSystem reversed() const;
    /// (kX, kY) for k > 0.
    NonSmoothSystem scaled(double k) const;

private:
    ParametricField upper_param_;
    ParametricField lower_param_;
    ParamMap params_;
    PolyField upper_;
    PolyField lower_;
    bool map_level_unfolding_ = false;
};

/// System file: {"upper": {"px": [[i,j,c(,param)]...], "py": [...]}, "lower": {...},
///               "params": {"lambda": r, "eps_unfold": r}}
/// A term's optional fourth entry names the parameter its coefficient multiplies.
NonSmoothSystem system_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const NonSmoothSystem& system);
NonSmoothSystem load_system(const std::string& path);

}  // namespace filippov
