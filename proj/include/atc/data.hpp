#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "atc/costs.hpp"
#include "atc/geo.hpp"
#include "atc/irl.hpp"
#include "atc/planner.hpp"

namespace atc {

/// One aircraft's raw position report stream: strictly increasing timestamps
/// at irregular spacing.
struct RawTrace {
    std::string flight_id;
    std::vector<GeodeticFix> fixes;
};

struct IngestReport {
    struct Rejection {
        std::string flight_id;
        std::string reason;
    };
    struct SpeedDiagnostic {
        std::string flight_id;
        double mean_speed = 0.0;  // m/s over resampled states
    };
    std::vector<Rejection> rejected;
    std::vector<SpeedDiagnostic> speeds;
};

/// Converts raw traces into demonstrations: ENU conversion, per-axis cubic
/// spline interpolation against time, resampling on the shared dt lattice
/// (anchored at the first fix rounded up to the next lattice point), and
/// bearing estimation from consecutive positions. Traces with fewer than
/// four fixes, non-increasing timestamps, or too short a span are rejected
/// and reported.
std::vector<Demonstration> ingest(std::span<const RawTrace> traces, const EnuOrigin& origin,
                                  double dt, IngestReport* report = nullptr);

/// A planning problem: ordered arrivals into one terminal area.
struct Scenario {
    EnuOrigin origin;
    std::vector<Arrival> arrivals;  // sorted by t_start
};

/// Layout knobs of the synthetic terminal area: arrivals enter on a ring,
/// follow per-entry corridors to a shared merge fix, then a straight final
/// approach into the airport.
struct CorridorConfig {
    ContinuousState airport{0.0, 0.0, 500.0, 0.0};  // goal state, heading +x
    double ring_radius = 40'000.0;
    std::vector<double> entry_bearings_deg{50.0, 130.0, 230.0, 310.0};
    double entry_alt = 2'200.0;
    double turn_fix_alt = 1'200.0;   // abeam the merge, offset laterally
    double merge_alt = 800.0;
    double final_length = 20'000.0;  // merge fix to airport
    double side_offset = 12'000.0;   // lateral offset of the turn fix
    double corridor_weight = 0.0;    // stored weight of corridor cells
    int tube_cells_xy = 1;           // half-width of the marked tube, cells
    int tube_cells_z = 1;
    int tube_cells_phi = 2;
    double sample_spacing = 100.0;   // meters between marked samples
};

/// A corridor's nominal flight path, densely sampled, plus its entry state.
struct Corridor {
    ContinuousState entry;
    std::vector<ContinuousState> nominal;  // ~sample_spacing apart
    double nominal_length = 0.0;
};

/// Ground-truth routing field plus the corridor geometry it was built from.
struct CorridorNetwork {
    RoutingCostField field;
    std::vector<Corridor> corridors;
    ContinuousState airport;
};

/// Builds the ground-truth routing field by flying each corridor's legs with
/// a penalty-free planner and marking a tube of coarse cells around the
/// resulting paths with corridor_weight.
CorridorNetwork build_corridor_network(const CorridorConfig& cfg,
                                       const PlannerConfig& planner);

struct SynthOptions {
    int count = 200;
    std::uint64_t seed = 1;
    double bearing_jitter_deg = 3.0;
    double radius_jitter = 2'000.0;
    double alt_jitter = 150.0;
    double heading_jitter = 0.15;
    int max_start_step = 40;  // t_start drawn from [0, max_start_step] * dt
    int retry_cap = 5;
};

struct SynthResult {
    std::vector<Demonstration> demos;
    std::vector<int> corridor_index;  // which corridor each demo entered
    int timeouts_resampled = 0;
};

/// Samples jittered entry states and plans them against the ground-truth
/// field to produce expert demonstrations. Timeouts are resampled up to the
/// retry cap. Bit-reproducible for a fixed seed with an expansion-budget
/// planner.
SynthResult synth_demonstrations(const CorridorNetwork& net, const PlannerConfig& planner,
                                 const SynthOptions& opts);

struct SceneSynthOptions {
    int count = 100;
    std::uint64_t seed = 7;
    SeparationCost ground_truth{1.0, 40.0, 20.0};
    SynthOptions entry;           // jitter knobs reused per arrival
    int trail_offset_steps = 1;   // same-corridor scenes: start offset
};

/// Synthesizes overlapping-arrival scenes with sequential ground-truth
/// planning: alternating same-corridor trail scenes and two-corridor merge
/// scenes timed to reach the merge fix together.
std::vector<Scene> synth_scenes(const CorridorNetwork& net, const PlannerConfig& planner,
                                const SceneSynthOptions& opts);

}  // namespace atc
