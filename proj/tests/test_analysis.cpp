#include <doctest.h>

#include "helpers.hpp"
#include "tdsim/analysis.hpp"
#include "tdsim/baseline.hpp"
#include "tdsim/csv.hpp"

using namespace tdsim;
using namespace tdsim::testing;

namespace {

// One constant 15 ms job on a single high tile over one 45 ms period.
ScenarioRuntime one_job_scenario() {
    ScenarioRuntime sc;
    sc.name = "one-job";
    sc.horizon = ms_to_cycles(45.0);
    sc.tiles = {high_only_tile(1)};
    TaskSpec spec;
    spec.def = pf_task(0, "High1");
    spec.exec.kind = ExecTimeModel::Kind::constant;
    spec.exec.constant_value = ms_to_cycles(15.0);
    sc.tasks = {spec};
    return sc;
}

} // namespace

TEST_CASE("a single job partitions the tile timeline exactly") {
    const auto sc = one_job_scenario();
    VectorTrace trace;
    run_dynamic(sc, 1, trace);
    const RunSummary s = summarize(trace, sc);

    REQUIRE(s.tiles.size() == 1);
    const auto& tile = s.tiles[0];
    CHECK(tile.busy == ms_to_cycles(15.0)); // execution, exactly
    // Payload copy + start notification + tile reaction + completion ack.
    CHECK(tile.overhead == 3785 + 9 + 333 + 9);
    CHECK(tile.busy + tile.overhead + tile.idle(s.horizon) == s.horizon);
    CHECK(tile.idle(s.horizon) == s.horizon - ms_to_cycles(15.0) - 4136);

    CHECK(s.counts(Criticality::high).completions == 1);
    CHECK(s.counts(Criticality::high).ontime == 1);
    CHECK(s.counts(Criticality::high).misses() == 0);
}

TEST_CASE("an empty trace leaves every tile idle for the whole horizon") {
    const auto sc = one_job_scenario();
    UsageAccumulator acc(sc);
    acc.record({sc.horizon, TraceKind::sim_end, 0, 0, kNoTile, Criticality::low, 0});
    const RunSummary s = acc.finalize();
    for (const auto& tile : s.tiles) {
        CHECK(tile.busy == 0);
        CHECK(tile.overhead == 0);
        CHECK(tile.idle(s.horizon) == s.horizon);
    }
}

TEST_CASE("comparing a run against itself is neutral") {
    const auto sc = one_job_scenario();
    VectorTrace trace;
    run_dynamic(sc, 1, trace);
    const RunSummary s = summarize(trace, sc);

    ComparisonContext ctx;
    ctx.o_switch = 25'000;
    ctx.eet_low = ms_to_cycles(0.1);
    const auto rep = compare(s, s, ctx);
    CHECK(rep.idle_reduction_pct == 0.0);
    CHECK(rep.low_throughput_ratio == 1.0); // 0/0 treated as parity
    CHECK(rep.high_misses_dynamic == rep.high_misses_static);
}

TEST_CASE("swapping the comparison flips the sign of the idle reduction") {
    const auto sc = one_job_scenario();
    VectorTrace busy_trace;
    run_dynamic(sc, 1, busy_trace);
    const RunSummary busy = summarize(busy_trace, sc);

    UsageAccumulator idle_acc(sc);
    idle_acc.record({sc.horizon, TraceKind::sim_end, 0, 0, kNoTile, Criticality::low, 0});
    const RunSummary idle = idle_acc.finalize();

    ComparisonContext ctx;
    const auto forward = compare(busy, idle, ctx);
    const auto backward = compare(idle, busy, ctx);
    CHECK(forward.idle_reduction_pct > 0.0);
    CHECK(backward.idle_reduction_pct < 0.0);
}

TEST_CASE("mismatched horizons are rejected") {
    const auto sc = one_job_scenario();
    VectorTrace trace;
    run_dynamic(sc, 1, trace);
    const RunSummary a = summarize(trace, sc);
    RunSummary b = a;
    b.horizon += 1;
    CHECK_THROWS_AS(compare(a, b, ComparisonContext{}), MismatchedScenarios);
}

TEST_CASE("tile_usage reports the exact partition rows") {
    const auto sc = one_job_scenario();
    VectorTrace trace;
    run_dynamic(sc, 1, trace);
    const auto rep = tile_usage(trace, sc.horizon, sc);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].busy + rep.rows[0].idle + rep.rows[0].overhead == sc.horizon);
    CHECK(rep.rows[0].busy_by_task.at(0) == ms_to_cycles(15.0));
}

TEST_CASE("loop-time histogram has a single bin under the constant model") {
    const auto sc = one_job_scenario();
    VectorTrace trace;
    run_dynamic(sc, 1, trace);
    const RunSummary s = summarize(trace, sc);
    const auto rows = histogram(s, HistQuantity::loop_time, 1e-4);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].count == s.nonempty_iterations);
    CHECK(rows[0].count >= 1);
    // One job in a 45 ms window: most iterations perform no work and are
    // excluded from the measurement.
    CHECK(s.nonempty_iterations < s.loop_iterations);
}

TEST_CASE("histogram mass equals the number of measured completions") {
    const auto sc = one_job_scenario();
    VectorTrace trace;
    run_dynamic(sc, 1, trace);
    const RunSummary s = summarize(trace, sc);
    const auto rows = histogram(s, HistQuantity::exec_time, 0.5, TaskId{0});
    std::uint64_t mass = 0;
    for (const auto& r : rows) mass += r.count;
    CHECK(mass == s.counts(Criticality::high).completions);
}

TEST_CASE("copy-time rows grow with the buffer size") {
    // Tasks with increasing buffer sizes produce a monotone Max column.
    ScenarioRuntime sc;
    sc.horizon = ms_to_cycles(10.0);
    sc.tiles = {low_only_tile(3)};
    for (int i = 0; i < 5; ++i) {
        TaskSpec spec;
        spec.def = fft_task(static_cast<TaskId>(i), "Low" + std::to_string(i + 1));
        spec.def.input_buffer_bytes = 1024ull << i;
        spec.def.output_buffer_bytes = 1024ull << i;
        spec.def.period = ms_to_cycles(2.0);
        spec.def.deadline = spec.def.period;
        spec.def.source_offset = ms_to_cycles(0.2 * i);
        spec.exec.kind = ExecTimeModel::Kind::constant;
        spec.exec.constant_value = ms_to_cycles(0.05);
        sc.tasks.push_back(spec);
    }
    VectorTrace trace;
    run_dynamic(sc, 1, trace);
    const RunSummary s = summarize(trace, sc);
    const auto rows = histogram(s, HistQuantity::copy_time, 0.0);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].right_ms > rows[i - 1].right_ms); // sizes ascend
        CHECK(rows[i].max_ms >= rows[i - 1].max_ms);
    }
}

TEST_CASE("usage csv carries one column per task plus Free") {
    const auto sc = one_job_scenario();
    VectorTrace trace;
    run_dynamic(sc, 1, trace);
    const RunSummary s = summarize(trace, sc);
    const std::string csv = usage_csv(s, sc, false);
    CHECK(csv.rfind("Tile,High1,Free\n", 0) == 0);
    // Durations carry six decimal places.
    CHECK(csv.find("15.000000") != std::string::npos);
}

TEST_CASE("histogram csv headers match the plot contracts") {
    std::vector<HistRow> rows = {{0.5, 10, 0.0}};
    CHECK(hist_csv(rows, HistQuantity::loop_time, false).rfind("right,count\n", 0) == 0);
    std::vector<HistRow> copy_rows = {{2048.0, 1, 0.000644}};
    const std::string copy_csv = hist_csv(copy_rows, HistQuantity::copy_time, false);
    CHECK(copy_csv.rfind("Size,Max\n", 0) == 0);
    CHECK(copy_csv.find("2048,0.000644") != std::string::npos);
}

TEST_CASE("partition stays exact when a job straddles the horizon") {
    auto sc = one_job_scenario();
    sc.horizon = ms_to_cycles(10.0); // job still running at the end
    VectorTrace trace;
    run_dynamic(sc, 1, trace);
    const RunSummary s = summarize(trace, sc);
    const auto& tile = s.tiles[0];
    CHECK(tile.busy + tile.overhead + tile.idle(s.horizon) == s.horizon);
    CHECK(tile.busy > 0);
    CHECK(s.counts(Criticality::high).completions == 0);
}
