// baseline.hpp: static-mapping reference scheduler.
//
// Each task is bound to one tile for the whole run; jobs execute in
// arrival order with no dispatcher, no notification latencies and no mode
// switching. Execution times come from the same seeded per-source streams
// as the dynamic run, so comparisons are paired sample by sample.
#pragma once

#include <cstdint>

#include "tdsim/engine.hpp"
#include "tdsim/trace.hpp"

namespace tdsim {

struct AssignmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checks the assignment: every task mapped to an existing tile, and the
// pessimistic utilization of high-criticality tasks fits on each tile.
// Low-criticality work may oversubscribe its tile; late jobs are shed.
std::vector<std::string> validate_assignment(const ScenarioRuntime& sc,
                                             const StaticAssignment& assignment);

EngineStats run_static(const ScenarioRuntime& sc, const StaticAssignment& assignment,
                       std::uint64_t seed, TraceSink& sink);

} // namespace tdsim
