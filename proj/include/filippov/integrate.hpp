#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "filippov/errors.hpp"
#include "filippov/field.hpp"
#include "filippov/system.hpp"
#include "filippov/transition.hpp"

namespace filippov {

enum class FlowMode { UpperFlow, LowerFlow, Sliding, Smooth };
enum class EventKind { CrossUp, CrossDown, SlideStart, SlideEnd, Tangency, Stop };
/// Forward continuation from an escaping point is not unique.
enum class EscapeChoice { Stop, Upper, Lower };

std::string_view to_string(FlowMode mode);
std::string_view to_string(EventKind kind);

struct TrajectorySample {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double dx = 0.0;  // velocity, used for Hermite interpolation
    double dy = 0.0;
};

struct TrajectorySegment {
    FlowMode mode = FlowMode::UpperFlow;
    std::vector<TrajectorySample> samples;
};

struct TrajectoryEvent {
    double t = 0.0;
    double y = 0.0;
    EventKind kind = EventKind::Stop;
};

struct Trajectory {
    std::vector<TrajectorySegment> segments;
    std::vector<TrajectoryEvent> events;

    double t_start() const;
    double t_end() const;
    Vec2 start() const;
    Vec2 end() const;
    /// Cubic Hermite interpolation inside the segment containing t (clamped).
    Vec2 state_at(double t) const;
    std::size_t sample_count() const;
};

struct IntegrationOptions {
    double initial_step = 1e-3;
    double max_step = 0.05;
    double min_step = 1e-12;
    double rtol = 1e-10;
    double atol = 1e-12;
    double xtol = 1e-10;
    int max_events = 1000;
    long max_steps = 5'000'000;
    EscapeChoice escape = EscapeChoice::Stop;
};

/// Step-size collapse; carries what was integrated before the failure.
class IntegrationError : public NumericalError {
public:
    IntegrationError(const std::string& what, Trajectory partial)
        : NumericalError(what), partial_(std::move(partial)) {}
    const Trajectory& partial() const { return partial_; }

private:
    Trajectory partial_;
};

/// Filippov orbit from q0 over [0, t_max]: crossing at sewing points, sliding
/// along x = 0 in the sliding region, first-order exit at folds.
Trajectory integrate_filippov(const NonSmoothSystem& system, Vec2 q0, double t_max,
                              const IntegrationOptions& opts = {});

/// Orbit of the eps-regularization; the only event is Stop.
Trajectory integrate_regularized(const NonSmoothSystem& system, const TransitionFunction& tf, double eps, Vec2 q0,
                                 double t_max, const IntegrationOptions& opts = {});

/// Orbit of a single smooth field (no Sigma logic).
Trajectory integrate_field(const PolyField& field, Vec2 q0, double t_max, const IntegrationOptions& opts = {});

struct SectionHit {
    bool found = false;
    double t = 0.0;
    Vec2 point;
};

/// Flow the field from q0 until x returns to 0 after leaving it, within t_bound.
SectionHit flow_to_section(const PolyField& field, Vec2 q0, double t_bound, const IntegrationOptions& opts = {});

/// Sup over sample times of both orbits of the distance between them, on their common time range.
double sup_distance(const Trajectory& a, const Trajectory& b);

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);
nlohmann::json events_to_json(const Trajectory& trajectory);

}  // namespace filippov
