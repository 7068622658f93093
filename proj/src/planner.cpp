#include "atc/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "atc/angles.hpp"
#include "atc/spline.hpp"

namespace atc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Admissible remaining-cost bound used only for the eps_achieved
/// certificate: straight-line distance to the goal region (not the goal
/// state), which never overestimates even where the search heuristic does.
double region_lower_bound(const ContinuousState& s, const ContinuousState& goal,
                          const GoalRegion& region) {
    const double planar =
        std::hypot(s.x - goal.x, s.y - goal.y) - std::hypot(region.half_x, region.half_y);
    const double vert = std::abs(s.z - goal.z) - region.half_z;
    return std::hypot(std::max(planar, 0.0), std::max(vert, 0.0));
}

struct Node {
    GridState key;
    ContinuousState state;
    double g = kInf;
    double h = 0.0;
    double lb = 0.0;
    std::int64_t parent = -1;
    Primitive via;
    std::uint32_t closed_iteration = 0;
    bool in_incons = false;
};

struct HeapEntry {
    double f;
    double g;
    GridState key;
    std::int64_t node;
};

// Smaller f first; ties broken toward higher g, then lexicographic cell, so
// expansion order is reproducible across runs.
struct HeapOrder {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return b.key < a.key;
    }
};

class Search {
  public:
    Search(const ContinuousState& start, const ContinuousState& goal,
           const RoutingCostField& field, const SeparationCost& sep,
           std::span<const ObstacleTrajectory> obstacles, const PlannerConfig& cfg,
           std::int64_t start_step)
        : goal_(goal),
          field_(field),
          sep_(sep),
          obstacles_(obstacles),
          cfg_(cfg),
          start_step_(start_step),
          time_aware_(!obstacles.empty()),
          box_(cfg.search_box ? *cfg.search_box : default_box(start, goal, cfg)),
          deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(cfg.time_budget_s))) {
        const std::int64_t s0 = make_node(start, start_step);
        nodes_[s0].g = 0.0;
        if (in_goal_region(start, goal_, cfg_.goal_region)) {
            incumbent_ = s0;
        }
        open_.push_back(entry_of(s0));
    }

    PlanOutcome run() {
        double eps = cfg_.eps_start;
        if (incumbent_ >= 0) {
            // Start already satisfies the goal; nothing to search.
            return finish(1.0);
        }
        while (true) {
            const bool exhausted_budget = !improve_path(eps);
            if (incumbent_ >= 0) {
                iteration_costs_.push_back(nodes_[incumbent_].g);
            }
            if (exhausted_budget) {
                return incumbent_ >= 0 ? finish(certified_eps()) : timeout();
            }
            if (eps <= cfg_.eps_final) {
                return incumbent_ >= 0 ? finish(certified_eps()) : timeout();
            }
            eps = std::max(cfg_.eps_final, eps - cfg_.eps_step);
            rekey_open(eps);
            ++iteration_;
        }
    }

  private:
    static Box default_box(const ContinuousState& a, const ContinuousState& b,
                           const PlannerConfig& cfg) {
        const double m = cfg.box_margin_m;
        return Box{std::min(a.x, b.x) - m, std::max(a.x, b.x) + m,
                   std::min(a.y, b.y) - m, std::max(a.y, b.y) + m,
                   std::min(a.z, b.z) - m, std::max(a.z, b.z) + m};
    }

    GridState key_of(const ContinuousState& s, std::int64_t step) const {
        GridState g = discretize(s, cfg_.fine);
        if (time_aware_) g.step = step;
        return g;
    }

    std::int64_t make_node(const ContinuousState& s, std::int64_t step) {
        const GridState key = key_of(s, step);
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        Node n;
        n.key = key;
        n.state = s;
        n.h = airplane_heuristic(s, goal_, cfg_.limits);
        n.lb = region_lower_bound(s, goal_, cfg_.goal_region);
        nodes_.push_back(n);
        const auto id = static_cast<std::int64_t>(nodes_.size() - 1);
        index_.emplace(key, id);
        return id;
    }

    HeapEntry entry_of(std::int64_t id) const {
        const Node& n = nodes_[id];
        return HeapEntry{n.g + eps_ * n.h, n.g, n.key, id};
    }

    void heap_push(std::int64_t id) {
        open_.push_back(entry_of(id));
        std::push_heap(open_.begin(), open_.end(), HeapOrder{});
    }

    bool over_budget() const {
        if (cfg_.expansion_budget > 0) return expansions_ >= cfg_.expansion_budget;
        return std::chrono::steady_clock::now() >= deadline_;
    }

    /// Runs one inflated-heuristic pass. Returns false when the budget ran
    /// out mid-pass, true when the pass converged for this eps.
    bool improve_path(double eps) {
        eps_ = eps;
        const double incumbent_g = [&] {
            return incumbent_ >= 0 ? nodes_[incumbent_].g : kInf;
        };
        while (!open_.empty()) {
            const HeapEntry top = open_.front();
            const Node& tn = nodes_[top.node];
            if (top.g != tn.g || tn.closed_iteration == iteration_) {
                std::pop_heap(open_.begin(), open_.end(), HeapOrder{});
                open_.pop_back();  // stale entry
                continue;
            }
            if (incumbent_g() <= top.f) return true;
            if (over_budget()) return false;
            std::pop_heap(open_.begin(), open_.end(), HeapOrder{});
            open_.pop_back();
            nodes_[top.node].closed_iteration = iteration_;
            ++expansions_;
            expand(top.node);
        }
        return true;
    }

    void expand(std::int64_t id) {
        const ContinuousState state = nodes_[id].state;  // copy: nodes_ may grow
        const double g0 = nodes_[id].g;
        const std::int64_t step1 = nodes_[id].key.has_step()
                                       ? nodes_[id].key.step + 1
                                       : start_step_ + 1;  // unused when !time_aware_
        for (const Successor& suc :
             successors(state, cfg_.limits.speed, cfg_.controls, cfg_.dt)) {
            if (!box_.contains(suc.state)) continue;
            const double penalty = total_penalty(field_, sep_, suc.state, step1, obstacles_,
                                                 cfg_.fine);
            const double g1 = g0 + (1.0 + penalty) * suc.edge_length;
            const std::int64_t nid = make_node(suc.state, step1);
            Node& n = nodes_[nid];
            if (g1 >= n.g) continue;
            n.g = g1;
            n.parent = id;
            n.via = suc.primitive;
            n.state = suc.state;
            if (n.closed_iteration == iteration_) {
                if (!n.in_incons) {
                    n.in_incons = true;
                    incons_.push_back(nid);
                }
            } else {
                heap_push(nid);
            }
            if (in_goal_region(suc.state, goal_, cfg_.goal_region)) {
                if (incumbent_ < 0 || n.g < nodes_[incumbent_].g) incumbent_ = nid;
            }
        }
    }

    /// Frontier node ids: live open entries plus everything in INCONS.
    std::vector<std::int64_t> frontier() const {
        std::vector<std::int64_t> ids;
        ids.reserve(open_.size() + incons_.size());
        for (const HeapEntry& e : open_) {
            const Node& n = nodes_[e.node];
            if (e.g == n.g && n.closed_iteration != iteration_) ids.push_back(e.node);
        }
        ids.insert(ids.end(), incons_.begin(), incons_.end());
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    }

    void rekey_open(double eps) {
        eps_ = eps;
        const std::vector<std::int64_t> ids = frontier();
        open_.clear();
        incons_.clear();
        for (std::int64_t id : ids) {
            nodes_[id].in_incons = false;
            open_.push_back(entry_of(id));
        }
        std::make_heap(open_.begin(), open_.end(), HeapOrder{});
    }

    /// Honest suboptimality certificate: incumbent cost over the best
    /// admissible completion bound on the frontier. An empty frontier means
    /// the truncated graph is exhausted and the incumbent is optimal.
    double certified_eps() const {
        const double g_best = nodes_[incumbent_].g;
        double bound = kInf;
        for (std::int64_t id : frontier()) {
            bound = std::min(bound, nodes_[id].g + nodes_[id].lb);
        }
        if (!std::isfinite(bound) || bound <= 0.0) return 1.0;
        return std::max(1.0, g_best / bound);
    }

    PlanOutcome finish(double eps_achieved) const {
        Plan plan;
        plan.cost = nodes_[incumbent_].g;
        plan.eps_achieved = eps_achieved;
        plan.start_step = start_step_;
        plan.expansions = expansions_;
        plan.iteration_costs = iteration_costs_;
        std::vector<std::int64_t> chain;
        for (std::int64_t id = incumbent_; id >= 0; id = nodes_[id].parent) {
            chain.push_back(id);
        }
        std::reverse(chain.begin(), chain.end());
        plan.states.reserve(chain.size());
        for (std::size_t i = 0; i < chain.size(); ++i) {
            plan.states.push_back(nodes_[chain[i]].state);
            if (i > 0) plan.controls.push_back(nodes_[chain[i]].via);
        }
        return PlanOutcome{std::move(plan), expansions_};
    }

    PlanOutcome timeout() const { return PlanOutcome{std::nullopt, expansions_}; }

    ContinuousState goal_;
    const RoutingCostField& field_;
    const SeparationCost& sep_;
    std::span<const ObstacleTrajectory> obstacles_;
    const PlannerConfig& cfg_;
    std::int64_t start_step_;
    bool time_aware_;
    Box box_;
    std::chrono::steady_clock::time_point deadline_;

    std::vector<Node> nodes_;
    std::unordered_map<GridState, std::int64_t, GridStateHash> index_;
    std::vector<HeapEntry> open_;
    std::vector<std::int64_t> incons_;
    std::vector<double> iteration_costs_;
    std::int64_t incumbent_ = -1;
    std::uint64_t expansions_ = 0;
    std::uint32_t iteration_ = 1;
    double eps_ = 1.0;
};

}  // namespace

ObstacleTrajectory Plan::as_obstacle(const Resolution& fine) const {
    ObstacleTrajectory obs;
    obs.start_step = start_step;
    obs.cells.reserve(states.size());
    for (const ContinuousState& s : states) {
        obs.cells.push_back(discretize(s, fine));
    }
    return obs;
}

PlanOutcome ara_star(const ContinuousState& start, const ContinuousState& goal,
                     const RoutingCostField& field, const SeparationCost& sep,
                     std::span<const ObstacleTrajectory> obstacles,
                     const PlannerConfig& config, std::int64_t start_step) {
    if (!(config.eps_start >= config.eps_final) || !(config.eps_final >= 1.0)) {
        throw std::invalid_argument("planner eps schedule must satisfy start >= final >= 1");
    }
    Search search(start, goal, field, sep, obstacles, config, start_step);
    return search.run();
}

std::vector<PlanOutcome> plan_sequence(std::span<const Arrival> arrivals,
                                       const RoutingCostField& field,
                                       const SeparationCost& sep,
                                       const PlannerConfig& config) {
    for (std::size_t i = 1; i < arrivals.size(); ++i) {
        if (arrivals[i].t_start < arrivals[i - 1].t_start) {
            throw std::invalid_argument("arrivals must be sorted by t_start");
        }
    }
    std::vector<PlanOutcome> outcomes;
    std::vector<ObstacleTrajectory> obstacles;
    outcomes.reserve(arrivals.size());
    for (const Arrival& a : arrivals) {
        const auto step = static_cast<std::int64_t>(std::llround(a.t_start / config.dt));
        PlanOutcome out = ara_star(a.start, a.goal, field, sep, obstacles, config, step);
        if (out.plan) {
            obstacles.push_back(out.plan->as_obstacle(config.fine));
        }
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

std::vector<ContinuousState> refine(const Plan& plan, double dt, double sample_dt) {
    if (plan.states.size() < 2) {
        throw std::invalid_argument("refine needs a plan with >= 2 states");
    }
    std::vector<double> t, xs, ys, zs;
    t.reserve(plan.states.size());
    for (std::size_t i = 0; i < plan.states.size(); ++i) {
        t.push_back(static_cast<double>(i) * dt);
        xs.push_back(plan.states[i].x);
        ys.push_back(plan.states[i].y);
        zs.push_back(plan.states[i].z);
    }
    const CubicSpline sx(t, xs), sy(t, ys), sz(t, zs);

    std::vector<ContinuousState> out;
    const double t_end = t.back();
    for (double tq = 0.0; tq <= t_end + 1e-9; tq += sample_dt) {
        const double tc = std::min(tq, t_end);
        out.push_back(ContinuousState{sx(tc), sy(tc), sz(tc), 0.0});
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        const auto& a = out[i];
        const auto& b = out[i + 1];
        if (a.x == b.x && a.y == b.y) {
            out[i].phi = i > 0 ? out[i - 1].phi : plan.states.front().phi;
        } else {
            out[i].phi = wrap_pi(std::atan2(b.y - a.y, b.x - a.x));
        }
    }
    if (out.size() >= 2) out.back().phi = out[out.size() - 2].phi;
    return out;
}

}  // namespace atc
