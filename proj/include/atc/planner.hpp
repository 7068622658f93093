#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "atc/costs.hpp"
#include "atc/dubins.hpp"
#include "atc/lattice.hpp"
#include "atc/state.hpp"

namespace atc {

/// Axis-aligned search-space truncation box.
struct Box {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    double z_min = 0.0, z_max = 0.0;

    bool contains(const ContinuousState& s) const {
        return s.x >= x_min && s.x <= x_max && s.y >= y_min && s.y <= y_max &&
               s.z >= z_min && s.z <= z_max;
    }
};

struct PlannerConfig {
    double eps_start = 3.0;
    double eps_step = 0.5;
    double eps_final = 1.0;

    /// Wall-clock budget, used when expansion_budget is zero.
    double time_budget_s = 30.0;
    /// Deterministic budget for reproducible runs; 0 disables.
    std::uint64_t expansion_budget = 0;

    double dt = 30.0;  // primitive duration, seconds
    GoalRegion goal_region;
    AirplaneLimits limits;
    ControlSets controls = default_control_sets(AirplaneLimits{});
    Resolution fine{125.0, 125.0, 50.0, 0.05};

    /// Search states outside the start/goal bounding box inflated by this
    /// margin are pruned. An explicit box overrides the margin.
    double box_margin_m = 50'000.0;
    std::optional<Box> search_box;
};

/// A discrete plan: states at dt spacing connected by the listed primitives.
struct Plan {
    std::vector<ContinuousState> states;  // states.size() == controls.size() + 1
    std::vector<Primitive> controls;
    double cost = 0.0;
    double eps_achieved = 1.0;
    std::int64_t start_step = 0;
    std::uint64_t expansions = 0;
    /// Incumbent cost after each completed ARA* iteration (diagnostics).
    std::vector<double> iteration_costs;

    /// Fine-grid cells of the plan states, for use as a moving obstacle.
    ObstacleTrajectory as_obstacle(const Resolution& fine) const;
};

/// Result of one planner query: a plan, or a timeout with the expansion
/// count reached.
struct PlanOutcome {
    std::optional<Plan> plan;
    std::uint64_t expansions = 0;

    bool timed_out() const { return !plan.has_value(); }
};

/// Anytime repairing A* from start to the goal region, inflating the Dubins
/// airplane heuristic by eps and tightening it across iterations while
/// reusing search effort. Edge cost is (1 + total_penalty(endpoint)) times
/// edge length. Duplicate detection is on the fine grid cell, extended with
/// the time step when obstacles are present. The reported eps_achieved
/// certifies cost <= eps_achieved * optimal-on-the-truncated-lattice.
PlanOutcome ara_star(const ContinuousState& start, const ContinuousState& goal,
                     const RoutingCostField& field, const SeparationCost& sep,
                     std::span<const ObstacleTrajectory> obstacles,
                     const PlannerConfig& config, std::int64_t start_step = 0);

struct Arrival {
    ContinuousState start;
    ContinuousState goal;
    double t_start = 0.0;
};

/// Plans arrivals in order of t_start; each successful plan becomes a moving
/// obstacle for the later ones, aligned to the nearest dt multiple. Timeouts
/// contribute no obstacle and do not stop later arrivals.
std::vector<PlanOutcome> plan_sequence(std::span<const Arrival> arrivals,
                                       const RoutingCostField& field,
                                       const SeparationCost& sep,
                                       const PlannerConfig& config);

/// Cubic-spline refinement of a plan: x, y, z interpolated against time and
/// resampled at sample_dt, bearings recomputed from consecutive positions.
std::vector<ContinuousState> refine(const Plan& plan, double dt, double sample_dt = 1.0);

}  // namespace atc
