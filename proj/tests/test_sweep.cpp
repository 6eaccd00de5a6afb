#include <doctest.h>

#include "helpers.hpp"
#include "tdsim/scenario.hpp"
#include "tdsim/sweep.hpp"

using namespace tdsim;

namespace {
const std::filesystem::path kScenarioDir = TDSIM_SCENARIO_DIR;
}

TEST_CASE("derived sweep seeds are deterministic and distinct") {
    const auto a = derive_seeds(1, 10);
    const auto b = derive_seeds(1, 10);
    CHECK(a == b);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) CHECK(a[i] != a[j]);
    CHECK(derive_seeds(2, 1) != derive_seeds(1, 1));
}

TEST_CASE("the parallel sweep reproduces the serial reference exactly") {
    auto sc = load_scenario(kScenarioDir / "casestudy.scenario");
    sc.horizon = ms_to_cycles(450.0, sc.clock_ghz);

    const auto serial = run_sweep_serial(sc, 1, 6);
    const auto parallel = run_sweep_parallel(sc, 1, 6);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].seed == parallel[i].seed);
        CHECK(serial[i].report.idle_reduction_pct == parallel[i].report.idle_reduction_pct);
        CHECK(serial[i].report.low_throughput_ratio == parallel[i].report.low_throughput_ratio);
        CHECK(serial[i].report.high_misses_dynamic == parallel[i].report.high_misses_dynamic);
        CHECK(serial[i].report.overhead_fraction == parallel[i].report.overhead_fraction);
        CHECK(serial[i].high_jobs == parallel[i].high_jobs);
        CHECK(serial[i].high_exceeding == parallel[i].high_exceeding);
    }
}

TEST_CASE("aggregate statistics summarize the runs") {
    std::vector<SweepRunResult> results(3);
    results[0].report.idle_reduction_pct = 10.0;
    results[1].report.idle_reduction_pct = 20.0;
    results[2].report.idle_reduction_pct = 60.0;
    results[1].report.high_misses_dynamic = 2;
    results[0].high_jobs = results[1].high_jobs = results[2].high_jobs = 100;

    const auto agg = aggregate(results);
    CHECK(agg.runs == 3);
    CHECK(agg.idle_reduction_pct.mean == doctest::Approx(30.0));
    CHECK(agg.idle_reduction_pct.min == 10.0);
    CHECK(agg.idle_reduction_pct.max == 60.0);
    CHECK(agg.high_misses_dynamic_total == 2);
    CHECK(agg.runs_with_dynamic_misses == 1);
    CHECK(agg.high_jobs_total == 300);
}

TEST_CASE("a sweep without a static assignment is rejected") {
    auto sc = load_scenario(kScenarioDir / "switch_replay.scenario");
    CHECK_THROWS_AS(run_paired(sc, 1), ScenarioError);
}
