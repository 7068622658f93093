#include "atc/costs.hpp"

#include <algorithm>
#include <cmath>

namespace atc {

std::vector<std::pair<GridState, double>> RoutingCostField::sorted_cells() const {
    std::vector<std::pair<GridState, double>> out(weights_.begin(), weights_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

double eval_separation(const SeparationCost& sep, const GridState& a, const GridState& b) {
    const double dx = static_cast<double>(a.i - b.i);
    const double dy = static_cast<double>(a.j - b.j);
    const double dz = std::abs(static_cast<double>(a.k - b.k));
    const double r_xy = std::hypot(dx, dy);
    const double vert = sep.threshold_z - dz;
    const double horiz = sep.threshold_xy - r_xy;
    if (vert <= 0.0 || horiz <= 0.0) return 0.0;
    return sep.slope * vert * horiz;
}

double total_penalty(const RoutingCostField& field, const SeparationCost& sep,
                     const ContinuousState& s, std::int64_t step,
                     std::span<const ObstacleTrajectory> obstacles, const Resolution& fine) {
    double penalty = field.eval(s);
    if (!obstacles.empty()) {
        const GridState cell = discretize(s, fine);
        for (const auto& obs : obstacles) {
            if (const GridState* oc = obs.cell_at(step)) {
                penalty += eval_separation(sep, cell, *oc);
            }
        }
    }
    return penalty;
}

double trajectory_cost(std::span<const PlanEdge> edges, const RoutingCostField& field,
                       const SeparationCost& sep,
                       std::span<const ObstacleTrajectory> obstacles, const Resolution& fine,
                       std::int64_t start_step) {
    double cost = 0.0;
    std::int64_t step = start_step;
    for (const PlanEdge& e : edges) {
        ++step;
        cost += (1.0 + total_penalty(field, sep, e.state, step, obstacles, fine)) *
                e.edge_length;
    }
    return cost;
}

namespace {

GridState noisy_coarse_cell(const ContinuousState& s, const Resolution& coarse,
                            const std::array<double, 3>& noise_sigma, std::mt19937_64& rng) {
    // Noise is drawn in coarse-grid units and added to the scaled coordinate
    // before flooring; zero sigma must reproduce plain discretization
    // exactly, so the draw is skipped entirely in that case.
    auto cell = [&](double value, double res, double sigma) {
        double scaled = value / res;
        if (sigma > 0.0) {
            scaled += std::normal_distribution<double>(0.0, sigma)(rng);
        }
        return static_cast<std::int64_t>(std::floor(scaled));
    };
    return GridState{
        cell(s.x, coarse.x, noise_sigma[0]),
        cell(s.y, coarse.y, noise_sigma[1]),
        cell(s.z, coarse.z, noise_sigma[2]),
        static_cast<std::int64_t>(std::floor(s.phi / coarse.phi)),
    };
}

}  // namespace

void routing_gradient_step(RoutingCostField& field,
                           std::span<const ContinuousState> learner_states,
                           std::span<const ContinuousState> expert_states, double step_size,
                           const std::array<double, 3>& noise_sigma, std::mt19937_64& rng) {
    const Resolution& coarse = field.resolution();
    for (const ContinuousState& s : learner_states) {
        field.add_to_weight(noisy_coarse_cell(s, coarse, noise_sigma, rng), step_size);
    }
    for (const ContinuousState& s : expert_states) {
        field.add_to_weight(noisy_coarse_cell(s, coarse, noise_sigma, rng), -step_size);
    }
}

std::array<double, 2> separation_threshold_gradient(const SeparationCost& sep,
                                                    const GridState& a, const GridState& b) {
    const double dx = static_cast<double>(a.i - b.i);
    const double dy = static_cast<double>(a.j - b.j);
    const double dz = std::abs(static_cast<double>(a.k - b.k));
    const double r_xy = std::hypot(dx, dy);
    const double vert = std::max(sep.threshold_z - dz, 0.0);
    const double horiz = std::max(sep.threshold_xy - r_xy, 0.0);
    return {
        r_xy < sep.threshold_xy ? sep.slope * vert : 0.0,
        dz < sep.threshold_z ? sep.slope * horiz : 0.0,
    };
}

void separation_gradient_step(SeparationCost& sep, std::span<const SeparationPair> learner,
                              std::span<const SeparationPair> expert, double step_size,
                              double clip) {
    double g_xy = 0.0;
    double g_z = 0.0;
    for (const auto& p : learner) {
        const auto g = separation_threshold_gradient(sep, p.a, p.b);
        g_xy += g[0];
        g_z += g[1];
    }
    for (const auto& p : expert) {
        const auto g = separation_threshold_gradient(sep, p.a, p.b);
        g_xy -= g[0];
        g_z -= g[1];
    }
    g_xy = std::clamp(g_xy, -clip, clip);
    g_z = std::clamp(g_z, -clip, clip);
    sep.threshold_xy = std::max(sep.threshold_xy + step_size * g_xy, 0.0);
    sep.threshold_z = std::max(sep.threshold_z + step_size * g_z, 0.0);
}

}  // namespace atc
