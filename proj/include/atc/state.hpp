#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>

#include "atc/angles.hpp"

namespace atc {

/// Airplane configuration in the local ENU frame: position in meters,
/// bearing in radians from the +x axis, wrapped to [-pi, pi).
struct ContinuousState {
    double x = 0.0;    // meters east
    double y = 0.0;    // meters north
    double z = 0.0;    // meters up
    double phi = 0.0;  // radians in [-pi, pi)
};

/// Cell edge lengths of the 4D state grid.
struct Resolution {
    double x = 125.0;
    double y = 125.0;
    double z = 50.0;
    double phi = 0.05;
};

inline constexpr std::int64_t kNoStep = -1;

/// Floor-quantized state cell. `step` is a time index in planner-interval
/// multiples; it is kNoStep unless time-dependent costs are in play.
struct GridState {
    std::int64_t i = 0;
    std::int64_t j = 0;
    std::int64_t k = 0;
    std::int64_t l = 0;
    std::int64_t step = kNoStep;

    bool has_step() const { return step != kNoStep; }

    friend bool operator==(const GridState&, const GridState&) = default;
    friend auto operator<=>(const GridState&, const GridState&) = default;
};

/// Componentwise floor(s / rho). Floor, not truncation: small negative
/// coordinates land in cell -1.
inline GridState discretize(const ContinuousState& s, const Resolution& rho) {
    return GridState{
        static_cast<std::int64_t>(std::floor(s.x / rho.x)),
        static_cast<std::int64_t>(std::floor(s.y / rho.y)),
        static_cast<std::int64_t>(std::floor(s.z / rho.z)),
        static_cast<std::int64_t>(std::floor(s.phi / rho.phi)),
    };
}

struct GridStateHash {
    std::size_t operator()(const GridState& g) const {
        // FNV-style mix over the five indices
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t v : {g.i, g.j, g.k, g.l, g.step}) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace atc
