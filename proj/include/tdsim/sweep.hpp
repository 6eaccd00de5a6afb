// sweep.hpp: multi-seed paired runs with aggregate statistics.
//
// Runs are independent, so the sweep is a data-parallel loop over seeds.
// run_sweep_serial is the reference implementation; run_sweep_parallel
// executes the same per-seed worker under OpenMP and must produce
// identical results (results are keyed by seed, not by completion order).
#pragma once

#include <cstdint>
#include <vector>

#include "tdsim/analysis.hpp"
#include "tdsim/engine.hpp"

namespace tdsim {

struct SweepRunResult {
    std::uint64_t seed = 0;
    ComparisonReport report;
    std::uint64_t high_jobs = 0;
    std::uint64_t high_exceeding = 0; // actual execution above the optimistic bound
    std::uint64_t anomalies = 0;
};

std::vector<std::uint64_t> derive_seeds(std::uint64_t master_seed, unsigned runs);

SweepRunResult run_paired(const ScenarioRuntime& sc, std::uint64_t seed);

std::vector<SweepRunResult> run_sweep_serial(const ScenarioRuntime& sc, std::uint64_t master_seed,
                                             unsigned runs);
std::vector<SweepRunResult> run_sweep_parallel(const ScenarioRuntime& sc, std::uint64_t master_seed,
                                               unsigned runs);

struct Stat {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct SweepAggregate {
    unsigned runs = 0;
    Stat idle_reduction_pct;
    Stat low_throughput_ratio;
    Stat overhead_fraction;
    Stat o_switch_vs_horizon_pct;
    Stat switch_overhead_vs_horizon_pct;
    std::uint64_t high_misses_dynamic_total = 0;
    std::uint64_t high_misses_static_total = 0;
    std::uint64_t runs_with_dynamic_misses = 0;
    std::uint64_t high_jobs_total = 0;
    std::uint64_t high_exceeding_total = 0;
};

SweepAggregate aggregate(const std::vector<SweepRunResult>& results);

} // namespace tdsim
