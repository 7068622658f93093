#pragma once

#include <vector>

#include "atc/dubins.hpp"
#include "atc/state.hpp"

namespace atc {

/// Fixed-duration control pair: turn rate and climb rate held for dt seconds.
struct Primitive {
    double turn_rate = 0.0;   // rad/s
    double climb_rate = 0.0;  // m/s
    double dt = 30.0;         // s
};

/// Allowed control values. The cartesian product turn_rates x climb_rates
/// defines the successor set of every lattice state.
struct ControlSets {
    std::vector<double> turn_rates;   // rad/s
    std::vector<double> climb_rates;  // m/s
};

/// Default control sets: max turn rate, an auxiliary slow turn rate against
/// coarse-time-step imprecision, and level flight, crossed with full-rate
/// climb/descend/level. 5 x 3 = 15 primitives.
ControlSets default_control_sets(const AirplaneLimits& limits, double aux_turn_rate = 0.0025);

struct Successor {
    ContinuousState state;
    Primitive primitive;
    double edge_length = 0.0;  // meters of workspace path
};

/// Exact closed-form integration of the airplane dynamics over one primitive:
/// straight segment when turn_rate is zero, circular arc otherwise, linear
/// altitude change. Edge length is dt * sqrt(v^2 + climb^2), the workspace
/// path length excluding the bearing rate.
Successor apply_primitive(const ContinuousState& s, const Primitive& p, double speed);

/// All primitives applied to s: one successor per (turn rate, climb rate).
std::vector<Successor> successors(const ContinuousState& s, double speed,
                                  const ControlSets& controls, double dt);

/// Closed box around the goal in position and (wrapped) heading.
struct GoalRegion {
    double half_x = 500.0;
    double half_y = 500.0;
    double half_z = 25.0;
    double half_phi = 0.125;
};

bool in_goal_region(const ContinuousState& s, const ContinuousState& goal,
                    const GoalRegion& region);

}  // namespace atc
