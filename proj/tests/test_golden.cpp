#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "tdsim/baseline.hpp"
#include "tdsim/csv.hpp"
#include "tdsim/scenario.hpp"

using namespace tdsim;

namespace {

const std::filesystem::path kScenarioDir = TDSIM_SCENARIO_DIR;
const std::filesystem::path kGoldenDir = TDSIM_GOLDEN_DIR;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("the context-switch replay trace matches the committed golden byte for byte") {
    const auto sc = load_scenario(kScenarioDir / "switch_replay.scenario");
    const auto tmp = std::filesystem::temp_directory_path() / "tdsim_golden_trace.csv";
    {
        CsvTraceWriter writer(tmp, sc, false);
        run_dynamic(sc, 7, writer);
    }
    CHECK(slurp(tmp) == slurp(kGoldenDir / "switch_replay_trace.csv"));
}

TEST_CASE("the two-stream usage stack matches the committed golden byte for byte") {
    auto sc = load_scenario(kScenarioDir / "casestudy_2stream.scenario");
    sc.horizon = ms_to_cycles(450.0, sc.clock_ghz);
    UsageAccumulator acc(sc);
    run_dynamic(sc, 5, acc);
    const std::string csv = usage_csv(acc.finalize(), sc, false);
    CHECK(csv == slurp(kGoldenDir / "casestudy_2stream_usage_450ms.csv"));
}
