#include <doctest.h>

#include <fstream>

#include "helpers.hpp"
#include "tdsim/csv.hpp"
#include "tdsim/scenario.hpp"

using namespace tdsim;

namespace {
const std::filesystem::path kScenarioDir = TDSIM_SCENARIO_DIR;
}

TEST_CASE("the case-study scenario loads with the measured parameters") {
    const auto sc = load_scenario(kScenarioDir / "casestudy.scenario");
    CHECK(sc.clock_ghz == 1.25);
    CHECK(sc.horizon == 11'250'000'000ULL);
    CHECK(sc.n_param == 1);
    REQUIRE(sc.tasks.size() == 5);

    const auto& pf = sc.tasks[0].def;
    CHECK(pf.name == "High1");
    CHECK(pf.criticality == Criticality::high);
    CHECK(pf.eet == 18'750'000);
    CHECK(pf.wcet == 31'250'000);
    CHECK(pf.period == 56'250'000);
    CHECK(pf.deadline == pf.period);
    CHECK(pf.input_buffer_bytes == 16384);

    const auto& fft = sc.tasks[2].def;
    CHECK(fft.criticality == Criticality::low);
    CHECK(fft.eet == 125'000);
    CHECK(fft.wcet == 125'000);
    CHECK(fft.period == 187'500);
    CHECK(fft.input_buffer_bytes == 2048);

    REQUIRE(sc.tiles.size() == 3);
    CHECK(sc.tiles[0].allowed_low_mode.allows(Criticality::high));
    CHECK_FALSE(sc.tiles[0].allowed_low_mode.allows(Criticality::low));
    CHECK(sc.tiles[1].allowed_low_mode.allows(Criticality::low));
    CHECK(sc.tiles[1].allowed_high_mode.allows(Criticality::high));
    CHECK(sc.tiles[2].allowed_high_mode.allows(Criticality::low));

    // No override: the full formula governs the switch calculus.
    CHECK_FALSE(sc.timing.o_switch_override.has_value());
    CHECK(sc.o_switch_effective() == 136'702);
    CHECK(sc.timing.dispatch_margin_cycles() == 4 * 3788);

    REQUIRE(sc.static_assignment.has_value());
    CHECK(sc.static_assignment->tile_of_task == std::vector<TileId>{1, 2, 3, 3, 3});
}

TEST_CASE("the two-stream variant pins the override and the usage columns") {
    const auto sc = load_scenario(kScenarioDir / "casestudy_2stream.scenario");
    REQUIRE(sc.timing.o_switch_override.has_value());
    CHECK(*sc.timing.o_switch_override == 25'000); // 0.02 ms
    CHECK(sc.o_switch_effective() == 25'000);
    REQUIRE(sc.tasks.size() == 4);

    UsageAccumulator acc(sc);
    acc.record({sc.horizon, TraceKind::sim_end, 0, 0, kNoTile, Criticality::low, 0});
    const std::string csv = usage_csv(acc.finalize(), sc, false);
    CHECK(csv.rfind("Tile,High1,High2,Low1,Low2,Free\n", 0) == 0);
}

TEST_CASE("an execution bound above the pessimistic bound names the task") {
    const std::string doc = R"({
      "horizon_ms": 10,
      "tiles": [ { "id": 1, "low_mode": ["low"], "high_mode": ["low"] } ],
      "tasks": [ {
        "name": "Broken", "criticality": "low",
        "t_eet_ms": 0.3, "t_wcet_ms": 0.2, "period_ms": 1,
        "input_bytes": 64, "output_bytes": 64,
        "exec_model": { "kind": "constant", "value_ms": 0.1 }
      } ]
    })";
    try {
        parse_scenario(doc, "broken");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("Broken") != std::string::npos);
        CHECK(std::string(e.what()).find("t_eet > t_wcet") != std::string::npos);
    }
}

TEST_CASE("a missing tile section is a parse error") {
    const std::string doc = R"({
      "horizon_ms": 10,
      "tasks": [ {
        "name": "Lone", "criticality": "low",
        "t_eet_ms": 0.1, "t_wcet_ms": 0.1, "period_ms": 1,
        "input_bytes": 64, "output_bytes": 64,
        "exec_model": { "kind": "constant", "value_ms": 0.1 }
      } ]
    })";
    CHECK_THROWS_AS(parse_scenario(doc, "no-tiles"), ParseError);
}

TEST_CASE("malformed json is a parse error") {
    CHECK_THROWS_AS(parse_scenario("{ not json", "bad"), ParseError);
    CHECK_THROWS_AS(load_scenario(kScenarioDir / "does_not_exist.scenario"), ParseError);
}

TEST_CASE("a switching overhead beyond the laxity is flagged on load") {
    try {
        load_scenario(kScenarioDir / "switch_replay_infeasible.scenario");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("laxity") != std::string::npos);
    }
}

TEST_CASE("empirical samples load from a file for exact replay") {
    const auto dir = std::filesystem::temp_directory_path() / "tdsim_samples";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "runtimes.txt");
        out << "0.1\n0.2\n0.3\n";
    }
    const std::string doc = R"({
      "horizon_ms": 10,
      "tiles": [ { "id": 1, "low_mode": ["low"], "high_mode": ["low"] } ],
      "tasks": [ {
        "name": "Replay", "criticality": "low",
        "t_eet_ms": 0.3, "t_wcet_ms": 0.3, "period_ms": 1,
        "input_bytes": 64, "output_bytes": 64,
        "exec_model": { "kind": "empirical", "samples_file": "runtimes.txt" }
      } ]
    })";
    const auto sc = parse_scenario(doc, "replay", dir);
    REQUIRE(sc.tasks[0].exec.samples.size() == 3);
    CHECK(sc.tasks[0].exec.samples[0] == 125'000);
    CHECK(sc.tasks[0].exec.samples[2] == 375'000);
}

TEST_CASE("config durations are milliseconds converted with the ceil rule") {
    const std::string doc = R"({
      "horizon_ms": 1,
      "timing": { "t_loop_wc_ms": 30.3e-4 },
      "tiles": [ { "id": 1, "low_mode": ["low"], "high_mode": ["low"] } ],
      "tasks": [ {
        "name": "T", "criticality": "low",
        "t_eet_ms": 0.0001, "t_wcet_ms": 0.0001, "period_ms": 0.001,
        "input_bytes": 32, "output_bytes": 32,
        "exec_model": { "kind": "constant", "value_ms": 0.0001 }
      } ]
    })";
    const auto sc = parse_scenario(doc, "units");
    CHECK(sc.horizon == 1'250'000);
    CHECK(sc.timing.loop_wc_cycles() == 3788);
    CHECK(sc.tasks[0].def.eet == 125); // 0.0001 ms at 1.25 GHz
    CHECK(sc.tasks[0].def.period == 1250);
}
