#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "atc/state.hpp"

namespace atc {

/// Sparse per-cell penalty over a coarse state grid. Weights are stored
/// unclamped so gradient steps can push them below zero; evaluation clamps
/// to max{w, 0}. Cells never touched evaluate to the clamped default.
class RoutingCostField {
  public:
    RoutingCostField() = default;
    RoutingCostField(const Resolution& coarse, double default_weight)
        : coarse_(coarse), default_weight_(default_weight) {}

    const Resolution& resolution() const { return coarse_; }
    double default_weight() const { return default_weight_; }
    std::size_t stored_cells() const { return weights_.size(); }

    /// Raw stored weight (default for absent cells), unclamped.
    double stored_weight(const GridState& cell) const {
        auto it = weights_.find(cell);
        return it == weights_.end() ? default_weight_ : it->second;
    }

    /// Clamped penalty of a coarse cell: max{w, 0}.
    double eval_cell(const GridState& cell) const {
        const double w = stored_weight(cell);
        return w > 0.0 ? w : 0.0;
    }

    /// Discretize on the coarse grid, then evaluate.
    double eval(const ContinuousState& s) const { return eval_cell(cell_of(s)); }

    GridState cell_of(const ContinuousState& s) const { return discretize(s, coarse_); }

    void set_weight(const GridState& cell, double w) { weights_[cell] = w; }

    void add_to_weight(const GridState& cell, double delta) {
        auto [it, inserted] = weights_.try_emplace(cell, default_weight_);
        it->second += delta;
    }

    /// Stored cells in lexicographic (i, j, k, l) order, for reproducible
    /// serialization and diffs.
    std::vector<std::pair<GridState, double>> sorted_cells() const;

  private:
    Resolution coarse_{250.0, 250.0, 125.0, 0.125};
    double default_weight_ = 100.0;
    std::unordered_map<GridState, double, GridStateHash> weights_;
};

/// Linear drop-off penalty between two airplanes: positive inside a cylinder
/// of planar radius threshold_xy and half-height threshold_z (fine-grid
/// units), zero outside. The slope is a fixed hyperparameter; the thresholds
/// are learned.
struct SeparationCost {
    double slope = 1.0;
    double threshold_xy = 60.0;  // fine-grid xy units
    double threshold_z = 60.0;   // fine-grid z units
};

/// u * max{v_z - |dz|, 0} * max{v_xy - r_xy, 0} with deltas taken between
/// fine-grid cell indices. Symmetric in its two states.
double eval_separation(const SeparationCost& sep, const GridState& a, const GridState& b);

/// A previously planned arrival treated as a moving obstacle: fine-grid cells
/// at consecutive time steps starting at start_step. Outside its lifetime the
/// airplane contributes nothing (it has landed or not yet entered).
struct ObstacleTrajectory {
    std::int64_t start_step = 0;
    std::vector<GridState> cells;

    /// Cell at an absolute step, or nullptr outside the trajectory.
    const GridState* cell_at(std::int64_t step) const {
        const std::int64_t idx = step - start_step;
        if (idx < 0 || idx >= static_cast<std::int64_t>(cells.size())) return nullptr;
        return &cells[idx];
    }
};

/// Routing penalty of s plus the sum of separation penalties against every
/// obstacle present at the given absolute step.
double total_penalty(const RoutingCostField& field, const SeparationCost& sep,
                     const ContinuousState& s, std::int64_t step,
                     std::span<const ObstacleTrajectory> obstacles, const Resolution& fine);

/// One edge of a discrete plan: the state reached and the workspace length
/// of the connecting primitive.
struct PlanEdge {
    ContinuousState state;
    double edge_length = 0.0;
};

/// Motion cost of a discrete plan: sum over edges of
/// (1 + total_penalty(endpoint)) * edge_length, the rectangle-rule
/// approximation of the penalized path-length integral. Steps are counted
/// from start_step, the first edge endpoint landing at start_step + 1.
double trajectory_cost(std::span<const PlanEdge> edges, const RoutingCostField& field,
                       const SeparationCost& sep,
                       std::span<const ObstacleTrajectory> obstacles, const Resolution& fine,
                       std::int64_t start_step = 0);

/// One stochastic ascent step on the routing weights: every learner-visited
/// coarse cell gains step_size, every expert-visited cell loses step_size.
/// Each state is perturbed with zero-mean Gaussian noise (std devs in
/// coarse-grid units per axis, no heading noise) before discretization.
void routing_gradient_step(RoutingCostField& field,
                           std::span<const ContinuousState> learner_states,
                           std::span<const ContinuousState> expert_states, double step_size,
                           const std::array<double, 3>& noise_sigma, std::mt19937_64& rng);

/// A time-aligned pair of fine-grid states, one per airplane.
struct SeparationPair {
    GridState a;
    GridState b;
};

/// One ascent step on the separation thresholds from learner and expert pair
/// sets. The accumulated gradient is clipped componentwise to [-clip, +clip]
/// before stepping; thresholds are projected back to >= 0 afterwards.
void separation_gradient_step(SeparationCost& sep, std::span<const SeparationPair> learner,
                              std::span<const SeparationPair> expert, double step_size,
                              double clip);

/// Analytic gradient of eval_separation with respect to the two thresholds,
/// with the subgradient at clamp kinks taken as zero.
std::array<double, 2> separation_threshold_gradient(const SeparationCost& sep,
                                                    const GridState& a, const GridState& b);

}  // namespace atc
