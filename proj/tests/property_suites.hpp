// Randomized and scripted property audits over whole simulation traces.
// Shared between the unit runner and the acceptance suite.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdsim/engine.hpp"

namespace tdsim::testing {

struct PropertyOutcome {
    std::uint64_t cases = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

enum class TraceShape { dynamic_run, static_run };

// Audits one trace against the structural invariants: tile mutual
// exclusion, capability safety, notification-after-copy ordering, bank
// exclusivity, queue conservation, execution fidelity, deadline flags,
// causality and timeline partition exactness. Static traces carry no
// dispatcher records, so occupancy opens at the payload copy and the
// queue/notification checks are skipped.
std::vector<std::string> audit_trace(const ScenarioRuntime& sc, const VectorTrace& trace,
                                     const EngineStats& stats, TraceShape shape);

// Generates small random scenarios, runs the dynamic engine (with the
// lost-wakeup audit enabled) and, when a feasible assignment exists, the
// static engine, auditing every trace.
PropertyOutcome random_scenario_properties(unsigned cases, std::uint64_t master_seed);

// Scripted high-load scenarios checking the return-to-low-mode countdown
// for n in {1, 2, 3}.
PropertyOutcome mode_return_properties();

} // namespace tdsim::testing
