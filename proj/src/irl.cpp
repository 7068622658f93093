#include "atc/irl.hpp"

#include <random>

namespace atc {

double margin(const RoutingCostField& field, const Demonstration& expert,
              const Plan* learner) {
    double learner_cost = 0.0;
    if (learner) {
        for (const ContinuousState& s : learner->states) {
            learner_cost += field.eval(s);
        }
    }
    double expert_cost = 0.0;
    for (const ContinuousState& s : expert.states) {
        expert_cost += field.eval(s);
    }
    return learner_cost - expert_cost;
}

TrainingTrace train_routing(std::span<const Demonstration> demos, RoutingCostField& field,
                            const TrainingConfig& cfg,
                            const RoutingCheckpointFn& checkpoint) {
    TrainingTrace trace;
    std::mt19937_64 rng(cfg.seed);
    const SeparationCost no_sep{1.0, 0.0, 0.0};
    std::int64_t step = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (const Demonstration& demo : demos) {
            StepRecord rec;
            rec.step = step;
            const Plan* learner = nullptr;
            PlanOutcome outcome;
            if (step >= cfg.warmup_steps) {
                outcome = ara_star(demo.start(), demo.goal(), field, no_sep, {},
                                   cfg.planner, demo.start_step());
                rec.planned = true;
                rec.timeout = outcome.timed_out();
                rec.expansions = outcome.expansions;
                if (outcome.plan) learner = &*outcome.plan;
            }
            rec.margin = margin(field, demo, learner);

            std::span<const ContinuousState> learner_states;
            if (learner) learner_states = learner->states;
            routing_gradient_step(field, learner_states, demo.states,
                                  cfg.step_size_routing, cfg.noise_sigma, rng);

            trace.records.push_back(rec);
            ++step;
            if (checkpoint && cfg.checkpoint_every > 0 &&
                step % cfg.checkpoint_every == 0) {
                checkpoint(step, field);
            }
        }
    }
    return trace;
}

std::vector<SeparationPair> aligned_pairs(std::span<const ContinuousState> states,
                                          std::int64_t start_step,
                                          std::span<const ObstacleTrajectory> obstacles,
                                          const Resolution& fine) {
    std::vector<SeparationPair> pairs;
    for (std::size_t d = 0; d < states.size(); ++d) {
        const std::int64_t step = start_step + static_cast<std::int64_t>(d);
        const GridState cell = discretize(states[d], fine);
        for (const ObstacleTrajectory& obs : obstacles) {
            if (const GridState* oc = obs.cell_at(step)) {
                pairs.push_back(SeparationPair{cell, *oc});
            }
        }
    }
    return pairs;
}

namespace {

ObstacleTrajectory demo_as_obstacle(const Demonstration& demo, const Resolution& fine) {
    ObstacleTrajectory obs;
    obs.start_step = demo.start_step();
    obs.cells.reserve(demo.states.size());
    for (const ContinuousState& s : demo.states) {
        obs.cells.push_back(discretize(s, fine));
    }
    return obs;
}

bool scene_has_overlap(const Scene& scene) {
    for (std::size_t i = 1; i < scene.arrivals.size(); ++i) {
        const auto& cur = scene.arrivals[i];
        for (std::size_t k = 0; k < i; ++k) {
            const auto& prev = scene.arrivals[k];
            const std::int64_t prev_end =
                prev.start_step() + static_cast<std::int64_t>(prev.states.size()) - 1;
            if (cur.start_step() <= prev_end) return true;
        }
    }
    return false;
}

}  // namespace

TrainingTrace train_separation(std::span<const Scene> scenes, const RoutingCostField& field,
                               SeparationCost& sep, const TrainingConfig& cfg,
                               const SeparationCheckpointFn& checkpoint) {
    TrainingTrace trace;
    std::int64_t step = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (const Scene& scene : scenes) {
            if (scene.arrivals.size() < 2 || !scene_has_overlap(scene)) {
                continue;  // nothing pairwise to learn from
            }
            std::vector<ObstacleTrajectory> priors;
            for (std::size_t i = 0; i < scene.arrivals.size(); ++i) {
                const Demonstration& demo = scene.arrivals[i];
                if (i > 0) {
                    StepRecord rec;
                    rec.step = step;
                    rec.planned = true;
                    PlanOutcome outcome =
                        ara_star(demo.start(), demo.goal(), field, sep, priors,
                                 cfg.planner, demo.start_step());
                    rec.timeout = outcome.timed_out();
                    rec.expansions = outcome.expansions;

                    std::vector<SeparationPair> learner_pairs;
                    if (outcome.plan) {
                        learner_pairs =
                            aligned_pairs(outcome.plan->states, outcome.plan->start_step,
                                          priors, cfg.planner.fine);
                    }
                    const std::vector<SeparationPair> expert_pairs = aligned_pairs(
                        demo.states, demo.start_step(), priors, cfg.planner.fine);
                    separation_gradient_step(sep, learner_pairs, expert_pairs,
                                             cfg.step_size_separation, cfg.gradient_clip);

                    trace.records.push_back(rec);
                    ++step;
                    if (checkpoint && cfg.checkpoint_every > 0 &&
                        step % cfg.checkpoint_every == 0) {
                        checkpoint(step, sep);
                    }
                }
                priors.push_back(demo_as_obstacle(demo, cfg.planner.fine));
            }
        }
    }
    return trace;
}

}  // namespace atc
