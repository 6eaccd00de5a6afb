// model.hpp: domain types for tasks, jobs, tiles and criticality modes.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdsim/time_base.hpp"

namespace tdsim {

// Two criticality levels; the model is deliberately hard-coded to two.
enum class Criticality : std::uint8_t { low = 0, high = 1 };

inline const char* to_string(Criticality c) {
    return c == Criticality::high ? "high" : "low";
}

// Set of criticality levels a tile accepts in a given system mode.
class CapabilitySet {
public:
    CapabilitySet() = default;
    static CapabilitySet none() { return CapabilitySet{}; }
    static CapabilitySet of(Criticality c) {
        CapabilitySet s;
        s.add(c);
        return s;
    }
    static CapabilitySet both() {
        CapabilitySet s;
        s.add(Criticality::low);
        s.add(Criticality::high);
        return s;
    }

    void add(Criticality c) { bits_ |= bit(c); }
    bool allows(Criticality c) const { return (bits_ & bit(c)) != 0; }
    bool empty() const { return bits_ == 0; }

private:
    static std::uint8_t bit(Criticality c) {
        return static_cast<std::uint8_t>(1u << static_cast<unsigned>(c));
    }
    std::uint8_t bits_ = 0;
};

using TaskId = std::uint32_t;
using TileId = std::int32_t;

constexpr TileId kDispatcherTile = 0;
constexpr TileId kNoTile = -1;

struct TaskDef {
    TaskId id = 0;
    std::string name;
    Criticality criticality = Criticality::low;
    Cycles eet = 0;      // optimistic execution-time bound (low-mode estimate)
    Cycles wcet = 0;     // pessimistic bound (high-mode estimate)
    Cycles period = 0;
    Cycles deadline = 0; // implicit deadlines: equals period
    std::uint64_t input_buffer_bytes = 0;
    std::uint64_t output_buffer_bytes = 0;
    Cycles source_offset = 0;
};

enum class JobState : std::uint8_t {
    queued,
    dispatched,
    copying_in,
    running,
    completed,
    dropped,
};

struct Job {
    TaskId task = 0;
    std::uint32_t seq = 0;
    Cycles arrival = 0;
    Cycles actual_exec = 0;
    Cycles absolute_deadline = 0;
    JobState state = JobState::queued;
};

// A non-preemptive compute resource. Capability sets are fixed at
// construction; only the dispatch choice is dynamic.
struct Tile {
    TileId id = 0;
    CapabilitySet allowed_low_mode;  // dispatchable criticalities while the system is in low mode
    CapabilitySet allowed_high_mode;

    // Runtime occupancy (owned by one engine instance per run).
    std::optional<TaskId> current_task;
    std::uint32_t current_seq = 0;
    Cycles busy_until = 0;

    const CapabilitySet& allowed(Criticality mode) const {
        return mode == Criticality::high ? allowed_high_mode : allowed_low_mode;
    }
    bool idle() const { return !current_task.has_value(); }
};

struct SystemMode {
    Criticality mode = Criticality::low;
    std::uint32_t n_param = 1;
    std::uint32_t high_mode_jobs_remaining = 0;

    bool consistent() const {
        if (high_mode_jobs_remaining > n_param) return false;
        if (high_mode_jobs_remaining == 0 && mode != Criticality::low) return false;
        return true;
    }
};

bool is_power_of_two(std::uint64_t v);

// Report-style task-set validation; empty result means valid.
std::vector<std::string> validate_taskset(const std::vector<TaskDef>& tasks,
                                          const std::vector<Tile>& tiles);

} // namespace tdsim
