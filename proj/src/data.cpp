#include "atc/data.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include "atc/angles.hpp"
#include "atc/spline.hpp"

namespace atc {

std::vector<Demonstration> ingest(std::span<const RawTrace> traces, const EnuOrigin& origin,
                                  double dt, IngestReport* report) {
    std::vector<Demonstration> demos;
    for (const RawTrace& trace : traces) {
        auto reject = [&](const std::string& reason) {
            if (report) report->rejected.push_back({trace.flight_id, reason});
        };
        if (trace.fixes.size() < 4) {
            reject("fewer than 4 fixes");
            continue;
        }
        bool increasing = true;
        for (std::size_t i = 1; i < trace.fixes.size(); ++i) {
            if (!(trace.fixes[i].t > trace.fixes[i - 1].t)) increasing = false;
        }
        if (!increasing) {
            reject("timestamps not strictly increasing");
            continue;
        }

        std::vector<double> t, xs, ys, zs;
        t.reserve(trace.fixes.size());
        for (const GeodeticFix& fix : trace.fixes) {
            const EnuPoint p = wgs84_to_enu(fix, origin);
            t.push_back(fix.t);
            xs.push_back(p.x);
            ys.push_back(p.y);
            zs.push_back(p.z);
        }
        // Anchor on the shared dt lattice: first lattice point at or after
        // the first fix, so resampling never leaves the spline domain.
        const double t0 = std::ceil(t.front() / dt) * dt;
        const auto samples = static_cast<std::int64_t>(
            std::floor((t.back() - t0) / dt)) + 1;
        if (t0 > t.back() || samples < 2) {
            reject("span shorter than two dt intervals");
            continue;
        }

        const CubicSpline sx(t, xs), sy(t, ys), sz(t, zs);
        Demonstration demo;
        demo.id = trace.flight_id;
        demo.t_start = t0;
        demo.dt = dt;
        demo.states.reserve(static_cast<std::size_t>(samples));
        for (std::int64_t i = 0; i < samples; ++i) {
            const double tq = t0 + static_cast<double>(i) * dt;
            demo.states.push_back(ContinuousState{sx(tq), sy(tq), sz(tq), 0.0});
        }
        double path_len = 0.0;
        for (std::size_t i = 0; i + 1 < demo.states.size(); ++i) {
            auto& a = demo.states[i];
            const auto& b = demo.states[i + 1];
            path_len += std::hypot(b.x - a.x, b.y - a.y);
            if (a.x == b.x && a.y == b.y) {
                a.phi = i > 0 ? demo.states[i - 1].phi : 0.0;
            } else {
                a.phi = bearing_from_positions(a.x, a.y, b.x, b.y);
            }
        }
        demo.states.back().phi = demo.states[demo.states.size() - 2].phi;

        if (report) {
            report->speeds.push_back(
                {trace.flight_id,
                 path_len / (static_cast<double>(samples - 1) * dt)});
        }
        demos.push_back(std::move(demo));
    }
    return demos;
}

namespace {

/// Flies one leg with a penalty-free planner; the corridor geometry comes
/// from the lattice itself so tube corners are dynamically flyable.
std::vector<ContinuousState> fly_leg(const ContinuousState& from, const ContinuousState& to,
                                     const PlannerConfig& planner, double spacing) {
    RoutingCostField free_field(Resolution{250.0, 250.0, 125.0, 0.125}, 0.0);
    const SeparationCost no_sep{1.0, 0.0, 0.0};
    PlannerConfig cfg = planner;
    cfg.expansion_budget = std::max<std::uint64_t>(cfg.expansion_budget, 2'000'000);
    // Tight goal region keeps the joints between consecutive legs inside the
    // marked tube.
    cfg.goal_region = GoalRegion{250.0, 250.0, 25.0, 0.1};
    const PlanOutcome out = ara_star(from, to, free_field, no_sep, {}, cfg);
    if (!out.plan) {
        throw std::runtime_error("corridor leg is not flyable; check layout geometry");
    }
    // Densify each primitive in closed form.
    std::vector<ContinuousState> path;
    const Plan& plan = *out.plan;
    for (std::size_t i = 0; i + 1 < plan.states.size(); ++i) {
        const Primitive& p = plan.controls[i];
        const int substeps = std::max(1, static_cast<int>(std::ceil(
                                             cfg.limits.speed * p.dt / spacing)));
        for (int s = 0; s < substeps; ++s) {
            Primitive partial = p;
            partial.dt = p.dt * static_cast<double>(s) / substeps;
            path.push_back(apply_primitive(plan.states[i], partial, cfg.limits.speed).state);
        }
    }
    path.push_back(plan.states.back());
    return path;
}

void mark_tube(RoutingCostField& field, std::span<const ContinuousState> samples,
               const CorridorConfig& cfg) {
    const Resolution& rho = field.resolution();
    for (const ContinuousState& s : samples) {
        const GridState center = discretize(s, rho);
        for (int di = -cfg.tube_cells_xy; di <= cfg.tube_cells_xy; ++di) {
            for (int dj = -cfg.tube_cells_xy; dj <= cfg.tube_cells_xy; ++dj) {
                for (int dk = -cfg.tube_cells_z; dk <= cfg.tube_cells_z; ++dk) {
                    for (int dl = -cfg.tube_cells_phi; dl <= cfg.tube_cells_phi; ++dl) {
                        GridState cell{center.i + di, center.j + dj, center.k + dk,
                                       center.l + dl};
                        field.set_weight(cell, cfg.corridor_weight);
                    }
                }
            }
        }
    }
}

double heading_towards(const ContinuousState& from, double x, double y) {
    return bearing_from_positions(from.x, from.y, x, y);
}

}  // namespace

CorridorNetwork build_corridor_network(const CorridorConfig& cfg,
                                       const PlannerConfig& planner) {
    CorridorNetwork net;
    net.airport = cfg.airport;
    net.field = RoutingCostField(Resolution{250.0, 250.0, 125.0, 0.125}, 100.0);

    const double merge_x = cfg.airport.x - cfg.final_length;
    for (double bearing_deg : cfg.entry_bearings_deg) {
        const double theta = deg_to_rad(bearing_deg);
        ContinuousState entry{cfg.airport.x + cfg.ring_radius * std::cos(theta),
                              cfg.airport.y + cfg.ring_radius * std::sin(theta),
                              cfg.entry_alt, 0.0};
        const double side = entry.y >= cfg.airport.y ? 1.0 : -1.0;
        ContinuousState turn_fix{merge_x, cfg.airport.y + side * cfg.side_offset,
                                 cfg.turn_fix_alt, 0.0};
        ContinuousState merge{merge_x, cfg.airport.y, cfg.merge_alt, 0.0};

        entry.phi = heading_towards(entry, turn_fix.x, turn_fix.y);
        turn_fix.phi = heading_towards(turn_fix, merge.x, merge.y);
        merge.phi = cfg.airport.phi;  // aligned with the final approach

        Corridor corridor;
        corridor.entry = entry;
        for (const auto& [a, b] : {std::pair{entry, turn_fix}, std::pair{turn_fix, merge},
                                   std::pair{merge, cfg.airport}}) {
            auto leg = fly_leg(a, b, planner, cfg.sample_spacing);
            corridor.nominal.insert(corridor.nominal.end(), leg.begin(), leg.end());
        }
        for (std::size_t i = 0; i + 1 < corridor.nominal.size(); ++i) {
            corridor.nominal_length += std::hypot(
                corridor.nominal[i + 1].x - corridor.nominal[i].x,
                corridor.nominal[i + 1].y - corridor.nominal[i].y);
        }
        mark_tube(net.field, corridor.nominal, cfg);
        net.corridors.push_back(std::move(corridor));
    }
    return net;
}

namespace {

ContinuousState jitter_entry(const Corridor& corridor, const ContinuousState& airport,
                             const SynthOptions& opts, std::mt19937_64& rng) {
    std::normal_distribution<double> unit(0.0, 1.0);
    const double base_bearing =
        std::atan2(corridor.entry.y - airport.y, corridor.entry.x - airport.x);
    const double radius = std::hypot(corridor.entry.x - airport.x,
                                     corridor.entry.y - airport.y) +
                          unit(rng) * opts.radius_jitter;
    const double bearing = base_bearing + unit(rng) * deg_to_rad(opts.bearing_jitter_deg);
    ContinuousState s;
    s.x = airport.x + radius * std::cos(bearing);
    s.y = airport.y + radius * std::sin(bearing);
    s.z = corridor.entry.z + unit(rng) * opts.alt_jitter;
    s.phi = wrap_pi(corridor.entry.phi + unit(rng) * opts.heading_jitter);
    return s;
}

Demonstration plan_to_demo(const Plan& plan, std::string id, double dt) {
    Demonstration demo;
    demo.id = std::move(id);
    demo.states = plan.states;
    demo.dt = dt;
    demo.t_start = static_cast<double>(plan.start_step) * dt;
    return demo;
}

}  // namespace

SynthResult synth_demonstrations(const CorridorNetwork& net, const PlannerConfig& planner,
                                 const SynthOptions& opts) {
    SynthResult result;
    std::mt19937_64 rng(opts.seed);
    const SeparationCost no_sep{1.0, 0.0, 0.0};
    std::uniform_int_distribution<int> step_dist(0, opts.max_start_step);

    for (int n = 0; n < opts.count; ++n) {
        const int ci = n % static_cast<int>(net.corridors.size());
        const std::int64_t start_step = step_dist(rng);
        for (int attempt = 0;; ++attempt) {
            const ContinuousState start =
                jitter_entry(net.corridors[ci], net.airport, opts, rng);
            const PlanOutcome out = ara_star(start, net.airport, net.field, no_sep, {},
                                             planner, start_step);
            if (out.plan) {
                result.demos.push_back(
                    plan_to_demo(*out.plan, "synth_" + std::to_string(n), planner.dt));
                result.corridor_index.push_back(ci);
                break;
            }
            ++result.timeouts_resampled;
            if (attempt >= opts.retry_cap) {
                throw std::runtime_error(
                    "synthetic expert generation exceeded the timeout retry cap");
            }
        }
    }
    return result;
}

std::vector<Scene> synth_scenes(const CorridorNetwork& net, const PlannerConfig& planner,
                                const SceneSynthOptions& opts) {
    std::vector<Scene> scenes;
    std::mt19937_64 rng(opts.seed);
    const int n_corridors = static_cast<int>(net.corridors.size());

    for (int n = 0; n < opts.count; ++n) {
        const bool trail = (n % 2 == 0) || n_corridors < 2;
        const int ci = n % n_corridors;
        const int cj = trail ? ci : (ci + 1 + (n / 2) % (n_corridors - 1)) % n_corridors;

        std::vector<Arrival> arrivals;
        if (trail) {
            arrivals.push_back({jitter_entry(net.corridors[ci], net.airport, opts.entry, rng),
                                net.airport, 0.0});
            arrivals.push_back({jitter_entry(net.corridors[ci], net.airport, opts.entry, rng),
                                net.airport,
                                static_cast<double>(opts.trail_offset_steps) * planner.dt});
        } else {
            // Time the second arrival so both reach the merge fix together.
            const double t1 = net.corridors[ci].nominal_length / planner.limits.speed;
            const double t2 = net.corridors[cj].nominal_length / planner.limits.speed;
            const double offset =
                std::max(0.0, std::round((t1 - t2) / planner.dt)) * planner.dt;
            arrivals.push_back({jitter_entry(net.corridors[ci], net.airport, opts.entry, rng),
                                net.airport, 0.0});
            arrivals.push_back({jitter_entry(net.corridors[cj], net.airport, opts.entry, rng),
                                net.airport, offset});
        }
        std::sort(arrivals.begin(), arrivals.end(),
                  [](const Arrival& a, const Arrival& b) { return a.t_start < b.t_start; });

        bool ok = false;
        for (int attempt = 0; attempt <= opts.entry.retry_cap && !ok; ++attempt) {
            const auto outcomes =
                plan_sequence(arrivals, net.field, opts.ground_truth, planner);
            ok = std::all_of(outcomes.begin(), outcomes.end(),
                             [](const PlanOutcome& o) { return !o.timed_out(); });
            if (!ok) {
                for (Arrival& a : arrivals) {  // fresh jitter, same timing
                    const int c = &a == &arrivals.front() ? ci : cj;
                    a.start = jitter_entry(net.corridors[c], net.airport, opts.entry, rng);
                }
                continue;
            }
            Scene scene;
            for (std::size_t i = 0; i < outcomes.size(); ++i) {
                scene.arrivals.push_back(plan_to_demo(
                    *outcomes[i].plan,
                    "scene" + std::to_string(n) + "_arr" + std::to_string(i), planner.dt));
            }
            scenes.push_back(std::move(scene));
        }
        if (!ok) {
            throw std::runtime_error("scene synthesis exceeded the timeout retry cap");
        }
    }
    return scenes;
}

}  // namespace atc
