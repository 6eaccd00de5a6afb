#include "tdsim/sweep.hpp"

#include <algorithm>
#include <limits>

#include "tdsim/baseline.hpp"

namespace tdsim {

std::vector<std::uint64_t> derive_seeds(std::uint64_t master_seed, unsigned runs) {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(runs);
    std::uint64_t state = master_seed;
    for (unsigned i = 0; i < runs; ++i) seeds.push_back(splitmix64_next(state));
    return seeds;
}

SweepRunResult run_paired(const ScenarioRuntime& sc, std::uint64_t seed) {
    if (!sc.static_assignment)
        throw ScenarioError("paired comparison needs a static_assignment in the scenario");

    UsageAccumulator dyn_acc(sc);
    run_dynamic(sc, seed, dyn_acc);
    const RunSummary dyn = dyn_acc.finalize();

    UsageAccumulator stat_acc(sc);
    run_static(sc, *sc.static_assignment, seed, stat_acc);
    const RunSummary stat = stat_acc.finalize();

    ComparisonContext ctx;
    ctx.o_switch = sc.o_switch_effective();
    const TaskDef* low = sc.worst_low_task();
    ctx.eet_low = low ? low->eet : 0;

    SweepRunResult r;
    r.seed = seed;
    r.report = compare(dyn, stat, ctx);
    r.anomalies = dyn.anomalies + stat.anomalies;
    for (const auto& t : sc.tasks) {
        if (t.def.criticality != Criticality::high) continue;
        const auto it = dyn.exec_hist.find(t.def.id);
        if (it == dyn.exec_hist.end()) continue;
        for (const auto& [dur, count] : it->second) {
            r.high_jobs += count;
            if (dur > t.def.eet) r.high_exceeding += count;
        }
    }
    return r;
}

std::vector<SweepRunResult> run_sweep_serial(const ScenarioRuntime& sc, std::uint64_t master_seed,
                                             unsigned runs) {
    const auto seeds = derive_seeds(master_seed, runs);
    std::vector<SweepRunResult> results(runs);
    for (unsigned i = 0; i < runs; ++i) results[i] = run_paired(sc, seeds[i]);
    return results;
}

std::vector<SweepRunResult> run_sweep_parallel(const ScenarioRuntime& sc, std::uint64_t master_seed,
                                               unsigned runs) {
    const auto seeds = derive_seeds(master_seed, runs);
    std::vector<SweepRunResult> results(runs);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (unsigned i = 0; i < runs; ++i) {
        try {
            results[i] = run_paired(sc, seeds[i]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

namespace {

Stat stat_over(const std::vector<SweepRunResult>& results, double (*get)(const SweepRunResult&)) {
    Stat s;
    if (results.empty()) return s;
    s.min = std::numeric_limits<double>::infinity();
    s.max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& r : results) {
        const double v = get(r);
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean = sum / static_cast<double>(results.size());
    return s;
}

} // namespace

SweepAggregate aggregate(const std::vector<SweepRunResult>& results) {
    SweepAggregate a;
    a.runs = static_cast<unsigned>(results.size());
    a.idle_reduction_pct =
        stat_over(results, [](const SweepRunResult& r) { return r.report.idle_reduction_pct; });
    a.low_throughput_ratio =
        stat_over(results, [](const SweepRunResult& r) { return r.report.low_throughput_ratio; });
    a.overhead_fraction =
        stat_over(results, [](const SweepRunResult& r) { return r.report.overhead_fraction; });
    a.o_switch_vs_horizon_pct = stat_over(
        results, [](const SweepRunResult& r) { return r.report.o_switch_vs_horizon_pct; });
    a.switch_overhead_vs_horizon_pct = stat_over(
        results, [](const SweepRunResult& r) { return r.report.switch_overhead_vs_horizon_pct; });
    for (const auto& r : results) {
        a.high_misses_dynamic_total += r.report.high_misses_dynamic;
        a.high_misses_static_total += r.report.high_misses_static;
        if (r.report.high_misses_dynamic > 0) ++a.runs_with_dynamic_misses;
        a.high_jobs_total += r.high_jobs;
        a.high_exceeding_total += r.high_exceeding;
    }
    return a;
}

} // namespace tdsim
