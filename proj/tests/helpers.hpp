// Shared fixtures: the three-tile pool and the measured task parameters
// used across the test suites.
#pragma once

#include "tdsim/engine.hpp"

namespace tdsim::testing {

inline Tile high_only_tile(TileId id) {
    Tile t;
    t.id = id;
    t.allowed_low_mode = CapabilitySet::of(Criticality::high);
    t.allowed_high_mode = CapabilitySet::of(Criticality::high);
    return t;
}

inline Tile shared_tile(TileId id) {
    Tile t;
    t.id = id;
    t.allowed_low_mode = CapabilitySet::of(Criticality::low);
    t.allowed_high_mode = CapabilitySet::of(Criticality::high);
    return t;
}

inline Tile low_only_tile(TileId id) {
    Tile t;
    t.id = id;
    t.allowed_low_mode = CapabilitySet::of(Criticality::low);
    t.allowed_high_mode = CapabilitySet::of(Criticality::low);
    return t;
}

// Particle-filter-shaped high-criticality task: 15 / 25 / 45 ms, 16 KB buffers.
inline TaskDef pf_task(TaskId id, const std::string& name) {
    TaskDef t;
    t.id = id;
    t.name = name;
    t.criticality = Criticality::high;
    t.eet = ms_to_cycles(15.0);
    t.wcet = ms_to_cycles(25.0);
    t.period = ms_to_cycles(45.0);
    t.deadline = t.period;
    t.input_buffer_bytes = 16384;
    t.output_buffer_bytes = 16384;
    return t;
}

// FFT-shaped low-criticality task: 0.1 / 0.1 / 0.15 ms, 2 KB buffers.
inline TaskDef fft_task(TaskId id, const std::string& name) {
    TaskDef t;
    t.id = id;
    t.name = name;
    t.criticality = Criticality::low;
    t.eet = ms_to_cycles(0.1);
    t.wcet = ms_to_cycles(0.1);
    t.period = ms_to_cycles(0.15);
    t.deadline = t.period;
    t.input_buffer_bytes = 2048;
    t.output_buffer_bytes = 2048;
    return t;
}

inline std::vector<Tile> three_tile_pool() {
    return {high_only_tile(1), shared_tile(2), low_only_tile(3)};
}

// Small dynamic scenario: two high tasks on the three-tile pool, execution
// times scripted per task.
inline ScenarioRuntime two_high_scenario(const std::vector<double>& exec1_ms,
                                         const std::vector<double>& exec2_ms,
                                         double horizon_ms, std::uint32_t n_param = 1) {
    ScenarioRuntime sc;
    sc.name = "two-high";
    sc.horizon = ms_to_cycles(horizon_ms);
    sc.n_param = n_param;
    sc.tiles = three_tile_pool();

    auto mk = [&](TaskId id, const std::string& name, const std::vector<double>& samples) {
        TaskSpec spec;
        spec.def = pf_task(id, name);
        spec.exec.kind = ExecTimeModel::Kind::empirical;
        for (double ms : samples) spec.exec.samples.push_back(ms_to_cycles(ms));
        return spec;
    };
    sc.tasks.push_back(mk(0, "High1", exec1_ms));
    sc.tasks.push_back(mk(1, "High2", exec2_ms));
    return sc;
}

inline std::vector<TraceRecord> find_records(const VectorTrace& trace, TraceKind kind) {
    std::vector<TraceRecord> out;
    for (const auto& r : trace.records)
        if (r.kind == kind) out.push_back(r);
    return out;
}

inline std::optional<TraceRecord> find_record(const VectorTrace& trace, TraceKind kind,
                                              TaskId task, std::uint32_t seq) {
    for (const auto& r : trace.records)
        if (r.kind == kind && r.task == task && r.seq == seq) return r;
    return std::nullopt;
}

inline std::uint64_t count_records(const VectorTrace& trace, TraceKind kind) {
    std::uint64_t n = 0;
    for (const auto& r : trace.records) n += r.kind == kind ? 1 : 0;
    return n;
}

} // namespace tdsim::testing
