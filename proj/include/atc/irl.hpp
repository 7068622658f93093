#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "atc/costs.hpp"
#include "atc/planner.hpp"

namespace atc {

/// Expert trajectory resampled at the planner interval.
struct Demonstration {
    std::string id;
    std::vector<ContinuousState> states;  // >= 2, uniform dt spacing
    double t_start = 0.0;
    double dt = 30.0;

    const ContinuousState& start() const { return states.front(); }
    const ContinuousState& goal() const { return states.back(); }
    std::int64_t start_step() const {
        return static_cast<std::int64_t>(std::llround(t_start / dt));
    }
};

struct TrainingConfig {
    int epochs = 1;
    double step_size_routing = 10.0;
    double step_size_separation = 0.01;
    double gradient_clip = 100.0;
    /// Steps at the beginning of training that skip planning and use only
    /// the expert term of the gradient.
    int warmup_steps = 1000;
    std::array<double, 3> noise_sigma{0.25, 0.25, 0.125};  // coarse-grid units
    std::uint64_t seed = 0;
    int checkpoint_every = 50;
    PlannerConfig planner;
};

struct StepRecord {
    std::int64_t step = 0;
    double margin = 0.0;
    bool planned = false;  // false during warmup
    bool timeout = false;  // planner ran and failed
    std::uint64_t expansions = 0;
};

struct TrainingTrace {
    std::vector<StepRecord> records;
};

/// Called at checkpoint steps with the current parameters.
using RoutingCheckpointFn = std::function<void(std::int64_t step, const RoutingCostField&)>;
using SeparationCheckpointFn = std::function<void(std::int64_t step, const SeparationCost&)>;

/// Routing-cost margin: learner cell-penalty sum minus expert cell-penalty
/// sum. A timed-out learner counts as zero cost with no states.
double margin(const RoutingCostField& field, const Demonstration& expert,
              const Plan* learner);

/// Stage one of the training loop: for each demonstration, plan between its
/// endpoints with the current routing field (no separation term), then take
/// one stochastic step on the visited-cell weights. Timeout and warmup steps
/// use only the expert term.
TrainingTrace train_routing(std::span<const Demonstration> demos, RoutingCostField& field,
                            const TrainingConfig& cfg,
                            const RoutingCheckpointFn& checkpoint = nullptr);

/// Two or more demonstrations that overlap in time, sorted by t_start.
struct Scene {
    std::vector<Demonstration> arrivals;
};

/// Stage two: the routing field stays fixed while the separation thresholds
/// are learned. Each arrival is planned with the expert versions of the
/// earlier arrivals as moving obstacles; the gradient compares time-aligned
/// learner/expert state pairs. Scenes without pairwise time overlap are
/// skipped.
TrainingTrace train_separation(std::span<const Scene> scenes, const RoutingCostField& field,
                               SeparationCost& sep, const TrainingConfig& cfg,
                               const SeparationCheckpointFn& checkpoint = nullptr);

/// Time-aligned fine-grid pairs between one trajectory and a set of obstacle
/// trajectories (used for the separation gradient and for audits).
std::vector<SeparationPair> aligned_pairs(std::span<const ContinuousState> states,
                                          std::int64_t start_step,
                                          std::span<const ObstacleTrajectory> obstacles,
                                          const Resolution& fine);

}  // namespace atc
