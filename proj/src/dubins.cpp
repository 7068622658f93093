#include "atc/dubins.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "atc/angles.hpp"

namespace atc {
namespace {

struct Triple {
    double t, p, q;
};

// Closed-form segment solutions in normalized coordinates (unit turn radius,
// start at origin heading alpha, goal at (d, 0) heading beta). Standard
// Shkel/Lugo parametrization; infeasible words return nullopt.

std::optional<Triple> word_lsl(double d, double alpha, double beta) {
    const double sa = std::sin(alpha), sb = std::sin(beta);
    const double ca = std::cos(alpha), cb = std::cos(beta);
    const double p_sq = 2.0 + d * d - 2.0 * std::cos(alpha - beta) + 2.0 * d * (sa - sb);
    if (p_sq < 0.0) return std::nullopt;
    const double tmp = std::atan2(cb - ca, d + sa - sb);
    return Triple{wrap_two_pi(-alpha + tmp), std::sqrt(p_sq), wrap_two_pi(beta - tmp)};
}

std::optional<Triple> word_rsr(double d, double alpha, double beta) {
    const double sa = std::sin(alpha), sb = std::sin(beta);
    const double ca = std::cos(alpha), cb = std::cos(beta);
    const double p_sq = 2.0 + d * d - 2.0 * std::cos(alpha - beta) + 2.0 * d * (sb - sa);
    if (p_sq < 0.0) return std::nullopt;
    const double tmp = std::atan2(ca - cb, d - sa + sb);
    return Triple{wrap_two_pi(alpha - tmp), std::sqrt(p_sq), wrap_two_pi(-beta + tmp)};
}

std::optional<Triple> word_lsr(double d, double alpha, double beta) {
    const double sa = std::sin(alpha), sb = std::sin(beta);
    const double ca = std::cos(alpha), cb = std::cos(beta);
    const double p_sq = -2.0 + d * d + 2.0 * std::cos(alpha - beta) + 2.0 * d * (sa + sb);
    if (p_sq < 0.0) return std::nullopt;
    const double p = std::sqrt(p_sq);
    const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
    return Triple{wrap_two_pi(-alpha + tmp), p, wrap_two_pi(-wrap_two_pi(beta) + tmp)};
}

std::optional<Triple> word_rsl(double d, double alpha, double beta) {
    const double sa = std::sin(alpha), sb = std::sin(beta);
    const double ca = std::cos(alpha), cb = std::cos(beta);
    const double p_sq = -2.0 + d * d + 2.0 * std::cos(alpha - beta) - 2.0 * d * (sa + sb);
    if (p_sq < 0.0) return std::nullopt;
    const double p = std::sqrt(p_sq);
    const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
    return Triple{wrap_two_pi(alpha - tmp), p, wrap_two_pi(beta - tmp)};
}

std::optional<Triple> word_rlr(double d, double alpha, double beta) {
    const double sa = std::sin(alpha), sb = std::sin(beta);
    const double ca = std::cos(alpha), cb = std::cos(beta);
    const double tmp = (6.0 - d * d + 2.0 * std::cos(alpha - beta) + 2.0 * d * (sa - sb)) / 8.0;
    if (std::abs(tmp) > 1.0) return std::nullopt;
    const double p = wrap_two_pi(kTwoPi - std::acos(tmp));
    const double t =
        wrap_two_pi(alpha - std::atan2(ca - cb, d - sa + sb) + wrap_two_pi(p / 2.0));
    return Triple{t, p, wrap_two_pi(alpha - beta - t + wrap_two_pi(p))};
}

std::optional<Triple> word_lrl(double d, double alpha, double beta) {
    const double sa = std::sin(alpha), sb = std::sin(beta);
    const double ca = std::cos(alpha), cb = std::cos(beta);
    const double tmp = (6.0 - d * d + 2.0 * std::cos(alpha - beta) + 2.0 * d * (sb - sa)) / 8.0;
    if (std::abs(tmp) > 1.0) return std::nullopt;
    const double p = wrap_two_pi(kTwoPi - std::acos(tmp));
    const double t =
        wrap_two_pi(-alpha - std::atan2(ca - cb, d + sa - sb) + p / 2.0);
    return Triple{t, p, wrap_two_pi(wrap_two_pi(beta) - alpha - t + wrap_two_pi(p))};
}

}  // namespace

std::string_view to_string(DubinsWord w) {
    switch (w) {
        case DubinsWord::LSL: return "LSL";
        case DubinsWord::RSR: return "RSR";
        case DubinsWord::LSR: return "LSR";
        case DubinsWord::RSL: return "RSL";
        case DubinsWord::RLR: return "RLR";
        case DubinsWord::LRL: return "LRL";
    }
    return "?";
}

DubinsPath dubins_car_shortest(const CarConfig& q0, const CarConfig& q1, double curvature) {
    if (!(curvature > 0.0)) {
        throw std::invalid_argument("dubins curvature must be positive");
    }
    const double radius = 1.0 / curvature;
    const double dx = q1.x - q0.x;
    const double dy = q1.y - q0.y;
    if (dx == 0.0 && dy == 0.0 && wrap_pi(q1.phi - q0.phi) == 0.0) {
        return DubinsPath{};  // identical configurations, empty path
    }
    const double d = std::hypot(dx, dy) * curvature;
    const double theta = (dx == 0.0 && dy == 0.0) ? 0.0 : std::atan2(dy, dx);
    const double alpha = wrap_two_pi(q0.phi - theta);
    const double beta = wrap_two_pi(q1.phi - theta);

    struct Candidate {
        DubinsWord word;
        std::optional<Triple> (*solve)(double, double, double);
    };
    static constexpr Candidate kWords[] = {
        {DubinsWord::LSL, word_lsl}, {DubinsWord::RSR, word_rsr},
        {DubinsWord::LSR, word_lsr}, {DubinsWord::RSL, word_rsl},
        {DubinsWord::RLR, word_rlr}, {DubinsWord::LRL, word_lrl},
    };

    DubinsPath best;
    best.total_length = std::numeric_limits<double>::infinity();
    for (const auto& cand : kWords) {
        const auto sol = cand.solve(d, alpha, beta);
        if (!sol) continue;
        const double len = (sol->t + sol->p + sol->q) * radius;
        if (len < best.total_length) {
            best.word = cand.word;
            best.segment_lengths = {sol->t * radius, sol->p * radius, sol->q * radius};
            best.total_length = len;
        }
    }
    return best;
}

double airplane_heuristic(const ContinuousState& s0, const ContinuousState& sg,
                          const AirplaneLimits& limits) {
    if (!(limits.speed > 0.0) || !(limits.max_climb_rate > 0.0) ||
        !(limits.max_turn_rate > 0.0)) {
        throw std::invalid_argument("airplane limits must be strictly positive");
    }
    const double curvature = limits.max_turn_rate / limits.speed;
    const double d_xy = dubins_car_shortest(CarConfig{s0.x, s0.y, s0.phi},
                                            CarConfig{sg.x, sg.y, sg.phi}, curvature)
                            .total_length;
    double t_min = d_xy / limits.speed;
    const double dz = sg.z - s0.z;
    const double t_z = std::abs(dz) / limits.max_climb_rate;
    while (t_z > t_min) {
        t_min += kTwoPi / limits.max_turn_rate;  // one full helix turn
    }
    return std::hypot(limits.speed * t_min, dz);
}

}  // namespace atc
