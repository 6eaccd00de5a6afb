// timing.hpp: overhead and laxity calculus in integer cycles.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tdsim/model.hpp"
#include "tdsim/time_base.hpp"

namespace tdsim {

// Affine copy-time model (sync overhead + per-byte slope) with exact
// anchor overrides for calibrated sizes. The slope is a rational in
// cycles/byte so evaluation stays integer-exact.
struct CopyTimeModel {
    Cycles sync_overhead = 379;
    std::uint64_t per_byte_num = 1703;
    std::uint64_t per_byte_den = 8192;
    std::vector<std::pair<std::uint64_t, Cycles>> anchor_points{{16384, 3785}};

    Cycles cycles_for(std::uint64_t bytes) const;

    // Calibrates the slope from a single measured anchor, reserving
    // sync_fraction of the anchor time as the size-independent part.
    static CopyTimeModel calibrated(std::uint64_t anchor_bytes, Cycles anchor_cycles,
                                    double sync_fraction);
};

// Measured dispatcher-infrastructure constants. Kept in millicycles:
// several published values fall on half cycles at 1.25 GHz, and the
// overhead sum must be rounded only once.
struct TimingParams {
    Millicycles loop_wc_mc = 3'787'500;    // worst-case scheduling-loop iteration
    Millicycles stream_msg_mc = 9'000;     // two-packet notification latency
    Millicycles tile_start_mc = 332'500;   // tile reaction before the task function
    CopyTimeModel copy;
    std::optional<Cycles> o_switch_override;
    double clock_ghz = kDefaultClockGhz;
    // Extra slack subtracted from context-switch due times to cover the
    // simulator's serialized drain-then-dispatch pipeline; see engine docs.
    std::optional<Cycles> dispatch_margin;

    Cycles loop_wc_cycles() const { return millicycles_ceil_to_cycles(loop_wc_mc); }
    Cycles stream_msg_cycles() const { return millicycles_ceil_to_cycles(stream_msg_mc); }
    Cycles tile_start_cycles() const { return millicycles_ceil_to_cycles(tile_start_mc); }
    Cycles dispatch_margin_cycles() const {
        return dispatch_margin.value_or(4 * loop_wc_cycles());
    }
};

struct SwitchTime {
    Cycles at = 0;
    bool feasible = true; // false when the overhead consumes the whole margin
};

struct SwitchOverhead {
    Millicycles total_mc = 0;
    Cycles cycles = 0;   // single ceil of the exact sum
    double ms = 0.0;
    bool override_used = false;
};

// Execution-time margin of a task: deadline minus pessimistic bound.
Cycles laxity(const TaskDef& task);

// Latest instant a high-criticality job must be started, given the
// switching overhead. Saturates at the arrival time and reports
// infeasibility when the overhead consumes the whole margin.
SwitchTime switch_time(Cycles arrival, const TaskDef& task, Cycles o_switch);

// Worst-case switching overhead: two loop iterations, the payload copy,
// the start notification, the tile reaction, plus the worst in-flight
// low-criticality execution (omitted when no low task is given).
SwitchOverhead switch_overhead(const TimingParams& params, std::uint64_t max_buffer_bytes,
                               const TaskDef* worst_low_task);

Cycles copy_time(const CopyTimeModel& model, std::uint64_t bytes);

} // namespace tdsim
