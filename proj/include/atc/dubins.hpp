#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "atc/state.hpp"

namespace atc {

/// Planar vehicle configuration for Dubins car paths.
struct CarConfig {
    double x = 0.0;
    double y = 0.0;
    double phi = 0.0;  // radians in [-pi, pi)
};

enum class DubinsWord : std::uint8_t { LSL, RSR, LSR, RSL, RLR, LRL };

std::string_view to_string(DubinsWord w);

/// A three-segment Dubins car path. Arc segments are measured as arc length
/// (sweep angle times radius), the straight segment as plain length.
struct DubinsPath {
    DubinsWord word = DubinsWord::LSL;
    std::array<double, 3> segment_lengths{0.0, 0.0, 0.0};
    double total_length = 0.0;
};

/// Kinematic limits of the airplane: fixed forward speed, max climb rate,
/// max turn rate. All strictly positive.
struct AirplaneLimits {
    double speed = 100.0;          // m/s in the xy plane
    double max_climb_rate = 6.0;   // m/s
    double max_turn_rate = 0.025;  // rad/s

    double turn_radius() const { return speed / max_turn_rate; }
};

/// Shortest Dubins car path between two planar configurations for the given
/// curvature (1/turn radius). Words infeasible for the endpoints are skipped;
/// at least one word is always feasible.
DubinsPath dubins_car_shortest(const CarConfig& q0, const CarConfig& q1, double curvature);

/// Lower-bound-style distance estimate for the Dubins airplane: planar Dubins
/// car distance, stretched by full helix turns whenever the climb takes
/// longer than the planar traversal, combined with the altitude change.
/// Always assumes the high-altitude case, so the result can overestimate.
double airplane_heuristic(const ContinuousState& s0, const ContinuousState& sg,
                          const AirplaneLimits& limits);

}  // namespace atc
