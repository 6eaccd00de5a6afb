// engine.hpp: deterministic discrete-event simulation of the dynamic
// dispatching infrastructure.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdsim/channels.hpp"
#include "tdsim/model.hpp"
#include "tdsim/rng.hpp"
#include "tdsim/time_base.hpp"
#include "tdsim/timing.hpp"
#include "tdsim/trace.hpp"

namespace tdsim {

struct ExecTimeModel {
    enum class Kind : std::uint8_t { constant, bimodal, empirical };
    Kind kind = Kind::constant;
    Cycles constant_value = 0;
    // Bimodal: with probability 1 - p_exceed draw uniformly from
    // [low_min, low_max] (within the optimistic bound), otherwise from
    // [high_min, high_max] (above it, up to the pessimistic bound).
    double p_exceed = 0.0;
    Cycles low_min = 0, low_max = 0;
    Cycles high_min = 0, high_max = 0;
    // Empirical samples are replayed in activation order.
    std::vector<Cycles> samples;

    Cycles sample(Xoshiro256StarStar& rng, std::uint32_t seq) const;
};

struct TaskSpec {
    TaskDef def;
    ExecTimeModel exec;
};

// Fixed task-to-tile map for the static-mapping reference scheduler.
struct StaticAssignment {
    std::vector<TileId> tile_of_task; // indexed by task id; kNoTile = unassigned
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioRuntime {
    std::string name = "scenario";
    double clock_ghz = kDefaultClockGhz;
    Cycles horizon = 0;
    std::uint32_t n_param = 1;
    TimingParams timing;

    std::size_t queue_capacity = 16;
    std::uint64_t metadata_bytes = 32;
    Cycles hop_latency = 8;
    std::size_t channel_capacity = 64;
    std::int32_t banks_per_tile = 8;

    // Dispatcher loop duration: constant worst case by default; a uniform
    // range can be configured to produce loop-time distributions.
    bool loop_uniform = false;
    Cycles loop_min = 0;

    std::vector<TaskSpec> tasks;  // ids are dense indices into this vector
    std::vector<Tile> tiles;      // sorted ascending by id
    std::optional<StaticAssignment> static_assignment;

    std::uint64_t max_buffer_bytes() const;
    const TaskDef* worst_low_task() const;
    // Effective switching overhead used by the context-switch calculus:
    // the configured override, or the full formula over this task set.
    Cycles o_switch_effective() const;
    Cycles meta_copy_cycles() const { return timing.copy.cycles_for(metadata_bytes); }

    // Task-set, bank-placement and switch-feasibility validation.
    std::vector<std::string> validate() const;
};

// Per-run counters the engine maintains besides the trace.
struct EngineStats {
    std::uint64_t events_processed = 0;
    std::uint64_t loop_iterations = 0;
    std::uint64_t nonempty_iterations = 0;

    struct QueueStats {
        std::uint64_t enqueued = 0;
        std::uint64_t popped = 0;
        std::uint64_t dropped = 0;
        std::uint64_t final_depth = 0;
        std::uint64_t held_locally = 0; // popped into the local copy, unprocessed at the end
    };
    QueueStats queues[2]; // indexed by Criticality
};

// Runs one dynamic simulation; identical (scenario, seed) pairs produce
// identical traces. Throws ScenarioError on invalid configurations and
// std::logic_error if an internal occupancy invariant is violated.
EngineStats run_dynamic(const ScenarioRuntime& sc, std::uint64_t seed, TraceSink& sink,
                        bool audit_work_conservation = false);

// Execution-time sampling for one job; exposed for tests.
Cycles sample_exec_time(const ExecTimeModel& model, Xoshiro256StarStar& rng, std::uint32_t seq);

} // namespace tdsim
