#include "filippov/system.hpp"

#include <fstream>

#include "filippov/errors.hpp"

namespace filippov {

namespace {

ParametricPolynomial negated(const ParametricPolynomial& p, double k = -1.0) {
    ParametricPolynomial out;
    for (const auto& t : p.terms()) out.add(t.i, t.j, k * t.c, t.param);
    return out;
}

ParametricPolynomial poly_from_json(const nlohmann::json& terms, const std::string& where) {
    if (!terms.is_array()) throw ArgumentError(where + ": expected an array of [i, j, c] terms");
    ParametricPolynomial p;
    for (const auto& term : terms) {
        if (!term.is_array() || term.size() < 3 || term.size() > 4) {
            throw ArgumentError(where + ": each term must be [i, j, c] or [i, j, c, param]");
        }
        if (!term[0].is_number_integer() || !term[1].is_number_integer() || !term[2].is_number()) {
            throw ArgumentError(where + ": exponents must be integers and c a number");
        }
        const int i = term[0].get<int>();
        const int j = term[1].get<int>();
        if (i < 0 || j < 0) throw ArgumentError(where + ": exponents must be non-negative");
        std::string param;
        if (term.size() == 4) {
            if (!term[3].is_string()) throw ArgumentError(where + ": parameter name must be a string");
            param = term[3].get<std::string>();
        }
        p.add(i, j, term[2].get<double>(), param);
    }
    return p;
}

nlohmann::json poly_to_json(const ParametricPolynomial& p) {
    auto out = nlohmann::json::array();
    for (const auto& t : p.terms()) {
        auto term = nlohmann::json::array({t.i, t.j, t.c});
        if (!t.param.empty()) term.push_back(t.param);
        out.push_back(term);
    }
    return out;
}

ParametricField field_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("px") || !j.contains("py")) {
        throw ArgumentError(where + ": expected an object with px and py");
    }
    return {poly_from_json(j.at("px"), where + ".px"), poly_from_json(j.at("py"), where + ".py")};
}

}  // namespace

NonSmoothSystem::NonSmoothSystem(ParametricField upper, ParametricField lower, ParamMap params)
    : upper_param_(std::move(upper)), lower_param_(std::move(lower)), params_(std::move(params)) {
    upper_ = upper_param_.substitute(params_);
    lower_ = lower_param_.substitute(params_);
}

double NonSmoothSystem::param(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end()) throw ArgumentError("system has no parameter '" + name + "'");
    return it->second;
}

NonSmoothSystem NonSmoothSystem::with_param(const std::string& name, double value) const {
    NonSmoothSystem out = *this;
    out.params_[name] = value;
    out.upper_ = out.upper_param_.substitute(out.params_);
    out.lower_ = out.lower_param_.substitute(out.params_);
    return out;
}

NonSmoothSystem NonSmoothSystem::with_map_level_unfolding(double eps_unfold) const {
    NonSmoothSystem out = with_param(kEpsUnfold, eps_unfold);
    out.map_level_unfolding_ = true;
    return out;
}

NonSmoothSystem NonSmoothSystem::reversed() const { return scaled(-1.0); }

NonSmoothSystem NonSmoothSystem::scaled(double k) const {
    NonSmoothSystem out({negated(upper_param_.px, k), negated(upper_param_.py, k)},
                        {negated(lower_param_.px, k), negated(lower_param_.py, k)}, params_);
    out.map_level_unfolding_ = map_level_unfolding_;
    return out;
}

NonSmoothSystem system_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("upper") || !j.contains("lower")) {
        throw ArgumentError("system definition needs 'upper' and 'lower'");
    }
    ParamMap params;
    if (j.contains("params")) {
        if (!j.at("params").is_object()) throw ArgumentError("'params' must be an object");
        for (const auto& [name, value] : j.at("params").items()) {
            if (!value.is_number()) throw ArgumentError("parameter '" + name + "' must be a number");
            params[name] = value.get<double>();
        }
    }
    return {field_from_json(j.at("upper"), "upper"), field_from_json(j.at("lower"), "lower"), params};
}

nlohmann::json system_to_json(const NonSmoothSystem& system) {
    nlohmann::json j;
    j["upper"] = {{"px", poly_to_json(system.upper_parametric().px)}, {"py", poly_to_json(system.upper_parametric().py)}};
    j["lower"] = {{"px", poly_to_json(system.lower_parametric().px)}, {"py", poly_to_json(system.lower_parametric().py)}};
    j["params"] = nlohmann::json::object();
    for (const auto& [name, value] : system.params()) j["params"][name] = value;
    return j;
}

NonSmoothSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open system file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ArgumentError("system file '" + path + "' is not valid JSON: " + e.what());
    }
    return system_from_json(j);
}

}  // namespace filippov
