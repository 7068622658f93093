#include "atc/lattice.hpp"

#include <cmath>

#include "atc/angles.hpp"

namespace atc {

ControlSets default_control_sets(const AirplaneLimits& limits, double aux_turn_rate) {
    return ControlSets{
        {-limits.max_turn_rate, -aux_turn_rate, 0.0, aux_turn_rate, limits.max_turn_rate},
        {-limits.max_climb_rate, 0.0, limits.max_climb_rate},
    };
}

Successor apply_primitive(const ContinuousState& s, const Primitive& p, double speed) {
    Successor out;
    out.primitive = p;
    const double w = p.turn_rate;
    if (w == 0.0) {
        out.state.x = s.x + speed * p.dt * std::cos(s.phi);
        out.state.y = s.y + speed * p.dt * std::sin(s.phi);
        out.state.phi = s.phi;
    } else {
        const double radius = speed / w;  // signed
        const double phi1 = s.phi + w * p.dt;
        out.state.x = s.x + radius * (std::sin(phi1) - std::sin(s.phi));
        out.state.y = s.y - radius * (std::cos(phi1) - std::cos(s.phi));
        out.state.phi = wrap_pi(phi1);
    }
    out.state.z = s.z + p.climb_rate * p.dt;
    out.edge_length = p.dt * std::hypot(speed, p.climb_rate);
    return out;
}

std::vector<Successor> successors(const ContinuousState& s, double speed,
                                  const ControlSets& controls, double dt) {
    std::vector<Successor> out;
    out.reserve(controls.turn_rates.size() * controls.climb_rates.size());
    for (double w : controls.turn_rates) {
        for (double c : controls.climb_rates) {
            out.push_back(apply_primitive(s, Primitive{w, c, dt}, speed));
        }
    }
    return out;
}

bool in_goal_region(const ContinuousState& s, const ContinuousState& goal,
                    const GoalRegion& region) {
    return std::abs(s.x - goal.x) <= region.half_x &&
           std::abs(s.y - goal.y) <= region.half_y &&
           std::abs(s.z - goal.z) <= region.half_z &&
           std::abs(wrap_pi(s.phi - goal.phi)) <= region.half_phi;
}

}  // namespace atc
