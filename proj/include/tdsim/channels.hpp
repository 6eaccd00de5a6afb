// channels.hpp: notification channels, task queues and memory-bank locks.
#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "tdsim/model.hpp"
#include "tdsim/time_base.hpp"

namespace tdsim {

// 3-bit message type designator. Values 4..7 are reserved.
enum class MsgType : std::uint8_t {
    task_arrival = 0,  // source -> dispatcher
    task_complete = 1, // tile -> dispatcher
    task_start = 2,    // dispatcher -> tile (control channel)
    mode_notice = 3,   // dispatcher -> tiles, informational
};

// A two-packet stream message: header (routing + type) then the task id,
// with tlast asserted on the second packet.
struct Message {
    TileId route = 0;        // destination (or source, for dispatcher-bound messages)
    MsgType type = MsgType::task_arrival;
    std::uint32_t task_id = 0;
    std::uint32_t job_seq = 0; // simulator-side correlation; not on the wire

    std::pair<std::uint32_t, std::uint32_t> packets() const {
        const auto header = static_cast<std::uint32_t>(route) << 8 |
                            static_cast<std::uint32_t>(type);
        return {header, task_id};
    }
    static Message decode(std::uint32_t header, std::uint32_t payload) {
        Message m;
        m.route = static_cast<TileId>(header >> 8);
        m.type = static_cast<MsgType>(header & 0x7u);
        m.task_id = payload;
        return m;
    }
    static constexpr bool tlast_on_payload = true;
};

enum class ChannelClass : std::uint8_t { high_priority, low_priority, control };

enum class SendStatus : std::uint8_t { accepted, channel_full };

struct Delivery {
    Message msg;
    Cycles deliver_at = 0;
    std::uint32_t source = 0;
};

// FIFO packet-stream channel with a fixed per-message latency of
// hop_latency + 1 cycles (two back-to-back stream transfers). Multiple
// sources merge into one physical input; simultaneous sends are ordered
// round-robin starting after the last granted source, ties to the lower id.
class NotificationChannel {
public:
    NotificationChannel() = default;
    NotificationChannel(ChannelClass cls, Cycles hop_latency, std::size_t capacity,
                        std::uint32_t source_count = 0)
        : cls_(cls), hop_latency_(hop_latency), capacity_(capacity), sources_(source_count) {}

    SendStatus send(const Message& msg, Cycles now, std::uint32_t source_id = 0);

    // Pops the next message whose delivery time has been reached.
    std::optional<Delivery> pop_delivered(Cycles now);

    Cycles message_latency() const { return hop_latency_ + 1; }
    std::size_t pending() const { return fifo_.size(); }
    ChannelClass channel_class() const { return cls_; }
    std::uint64_t dropped() const { return dropped_; }

private:
    ChannelClass cls_ = ChannelClass::control;
    Cycles hop_latency_ = 8;
    std::size_t capacity_ = 64;
    std::uint32_t sources_ = 0;
    std::deque<Delivery> fifo_;
    Cycles last_send_time_ = 0;
    bool any_sent_ = false;
    std::uint32_t rr_cursor_ = 0;    // priority start for the next batch
    std::uint32_t batch_cursor_ = 0; // frozen at the first send of a batch
    std::uint64_t dropped_ = 0;
};

// Queue element: the metadata the dispatcher needs to place a job.
struct JobMeta {
    TaskId task = 0;
    std::uint32_t seq = 0;
    Criticality criticality = Criticality::low;
    Cycles arrival = 0;
    Cycles absolute_deadline = 0;
    Cycles wcet = 0;
    std::uint64_t input_bytes = 0;
};

enum class EnqueueStatus : std::uint8_t { accepted, queue_full };

// Per-priority task queue. The head element is promoted into a dispatcher-
// readable front buffer; promotion costs one metadata copy.
class TaskQueue {
public:
    TaskQueue() = default;
    TaskQueue(Criticality priority, std::size_t capacity, Cycles meta_copy_cycles)
        : priority_(priority), capacity_(capacity), meta_copy_(meta_copy_cycles) {}

    EnqueueStatus enqueue(const JobMeta& meta, Cycles now);

    // Returns the front buffer when its promotion has completed.
    std::optional<JobMeta> pop_front(Cycles now);

    bool empty() const { return !front_.has_value() && fifo_.empty(); }
    std::size_t depth() const { return fifo_.size() + (front_ ? 1 : 0); }
    Criticality priority() const { return priority_; }

    std::uint64_t enqueued_count = 0;
    std::uint64_t popped_count = 0;
    std::uint64_t dropped_count = 0;

private:
    void promote(Cycles now);

    Criticality priority_ = Criticality::low;
    std::size_t capacity_ = 16;
    Cycles meta_copy_ = 0;
    std::deque<JobMeta> fifo_;
    std::optional<JobMeta> front_;
    Cycles front_ready_at_ = 0;
};

// Whole-bank lock: one holder at a time.
struct MemoryBank {
    std::int32_t id = 0;
    std::optional<std::uint32_t> holder;
    Cycles held_until = 0;

    struct Acquire {
        bool granted = false;
        Cycles busy_until = 0;
    };
    Acquire acquire(std::uint32_t entity, Cycles duration, Cycles now);
    void release(Cycles now);
};

struct BankPlacement {
    bool feasible = false;
    std::vector<std::int32_t> bank_of_task; // indexed by task id
    std::string violation;
};

// Assigns staging banks so that tasks which may execute in parallel
// (i.e. on distinct tiles in some mode) hold distinct banks. Greedy
// first-fit in task-id order keeps the assignment deterministic.
BankPlacement check_bank_placement(const std::vector<TaskDef>& tasks,
                                   const std::vector<Tile>& tiles,
                                   std::int32_t banks_per_tile);

// True when two tasks can occupy distinct tiles at the same instant.
bool may_run_in_parallel(const TaskDef& a, const TaskDef& b, const std::vector<Tile>& tiles);

} // namespace tdsim
