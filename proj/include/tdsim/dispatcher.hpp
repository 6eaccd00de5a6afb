// dispatcher.hpp: criticality-aware resource allocation state machine.
//
// The dispatcher runs as an endless four-step loop: (1) context-switch
// check, then per priority level (2) refresh the local task copy from the
// queue, (3) try to place it on an idle capable tile, (4) drain one
// notification. The engine drives the loop; the state and the per-step
// decisions live here so they can be exercised directly.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tdsim/channels.hpp"
#include "tdsim/model.hpp"

namespace tdsim {

// Loop-flag bits: which algorithm steps performed work in an iteration.
namespace loop_flag {
constexpr std::uint8_t context_switch = 0x01;
constexpr std::uint8_t refresh_high = 0x02;
constexpr std::uint8_t refresh_low = 0x04;
constexpr std::uint8_t dispatch_high = 0x08;
constexpr std::uint8_t dispatch_low = 0x10;
constexpr std::uint8_t drain_high = 0x20;
constexpr std::uint8_t drain_low = 0x40;
} // namespace loop_flag

struct PendingSwitch {
    Cycles due = 0; // latest start instant minus the switching overhead
    TaskId task = 0;
    std::uint32_t seq = 0;
};

class Dispatcher {
public:
    Dispatcher() = default;
    Dispatcher(std::uint32_t n_param, std::size_t tile_count, Cycles dispatch_margin)
        : margin_(dispatch_margin), tile_busy_view_(tile_count, false) {
        mode_.n_param = n_param;
    }

    const SystemMode& mode() const { return mode_; }
    Criticality level() const { return mode_.mode; }

    // Local task copies, one per priority level.
    std::optional<JobMeta>& local(Criticality c) {
        return local_[static_cast<std::size_t>(c)];
    }

    void register_pending(const JobMeta& meta, Cycles due) {
        pending_.push_back({due, meta.task, meta.seq});
    }
    void remove_pending(TaskId task, std::uint32_t seq);
    std::optional<PendingSwitch> earliest_pending() const;
    bool has_pending() const { return !pending_.empty(); }

    // Step 1. Enters high mode when the earliest pending switch time would
    // be crossed within the margin window. Returns the new mode if a
    // transition happened.
    std::optional<Criticality> check_context_switch(Cycles now);

    // Step 3. First idle tile (ascending id order) whose capability set for
    // the current mode admits the job; tiles are consulted through the
    // dispatcher's own view of their busy state.
    std::optional<std::size_t> try_dispatch(const JobMeta& meta,
                                            const std::vector<Tile>& tiles) const;

    void mark_tile_busy(std::size_t tile_index) { tile_busy_view_[tile_index] = true; }
    bool tile_busy_in_view(std::size_t tile_index) const { return tile_busy_view_[tile_index]; }

    struct CompletionEffect {
        bool known_job = true;
        bool mode_changed_to_low = false;
    };
    // Processes a completion notification: frees the tile in the view and
    // feeds the high-mode countdown (exceedances reset it, completions
    // within the optimistic bound count it down; at zero the system
    // returns to low mode).
    CompletionEffect on_completion(std::size_t tile_index, bool job_known,
                                   Criticality job_criticality, Cycles actual_exec, Cycles eet);

private:
    SystemMode mode_;
    Cycles margin_ = 0;
    std::array<std::optional<JobMeta>, 2> local_;
    std::vector<PendingSwitch> pending_;
    std::vector<bool> tile_busy_view_;
};

} // namespace tdsim
