#include "tdsim/channels.hpp"

#include <algorithm>

namespace tdsim {

SendStatus NotificationChannel::send(const Message& msg, Cycles now, std::uint32_t source_id) {
    if (fifo_.size() >= capacity_) {
        ++dropped_;
        return SendStatus::channel_full;
    }
    Delivery d{msg, now + message_latency(), source_id};

    const bool new_batch = !any_sent_ || now != last_send_time_;
    if (new_batch) batch_cursor_ = rr_cursor_;

    if (!new_batch && sources_ > 1) {
        // Simultaneous sends are ordered round-robin from the cursor frozen
        // at the start of the batch; equal keys keep insertion order, so
        // ties fall to the lower source id.
        auto rr_key = [&](std::uint32_t src) {
            return (src + sources_ - batch_cursor_) % sources_;
        };
        auto it = fifo_.end();
        while (it != fifo_.begin()) {
            auto prev = std::prev(it);
            if (prev->deliver_at != d.deliver_at) break;
            if (rr_key(prev->source) <= rr_key(source_id)) break;
            it = prev;
        }
        fifo_.insert(it, d);
    } else {
        fifo_.push_back(d);
    }

    // The next batch starts after this batch's first-served source, so
    // repeated simultaneous batches rotate which source goes first.
    if (sources_ > 0) {
        auto first = fifo_.end();
        while (first != fifo_.begin() && std::prev(first)->deliver_at == d.deliver_at)
            first = std::prev(first);
        if (first != fifo_.end()) rr_cursor_ = (first->source + 1) % sources_;
    }
    last_send_time_ = now;
    any_sent_ = true;
    return SendStatus::accepted;
}

std::optional<Delivery> NotificationChannel::pop_delivered(Cycles now) {
    if (fifo_.empty() || fifo_.front().deliver_at > now) return std::nullopt;
    Delivery d = fifo_.front();
    fifo_.pop_front();
    return d;
}

EnqueueStatus TaskQueue::enqueue(const JobMeta& meta, Cycles now) {
    // Conservation counts every presented job: enqueued == popped +
    // dropped + still queued.
    ++enqueued_count;
    // Capacity bounds the whole queue, front buffer included.
    if (depth() >= capacity_) {
        ++dropped_count;
        return EnqueueStatus::queue_full;
    }
    fifo_.push_back(meta);
    if (!front_) promote(now);
    return EnqueueStatus::accepted;
}

void TaskQueue::promote(Cycles now) {
    if (front_ || fifo_.empty()) return;
    front_ = fifo_.front();
    fifo_.pop_front();
    front_ready_at_ = now + meta_copy_;
}

std::optional<JobMeta> TaskQueue::pop_front(Cycles now) {
    if (!front_ || front_ready_at_ > now) return std::nullopt;
    JobMeta meta = *front_;
    front_.reset();
    ++popped_count;
    promote(now);
    return meta;
}

MemoryBank::Acquire MemoryBank::acquire(std::uint32_t entity, Cycles duration, Cycles now) {
    Acquire a;
    if (holder && held_until > now) {
        a.granted = false;
        a.busy_until = held_until;
        return a;
    }
    holder = entity;
    held_until = now + duration;
    a.granted = true;
    a.busy_until = held_until;
    return a;
}

void MemoryBank::release(Cycles now) {
    holder.reset();
    held_until = now;
}

bool may_run_in_parallel(const TaskDef& a, const TaskDef& b, const std::vector<Tile>& tiles) {
    for (int mode = 0; mode < 2; ++mode) {
        const auto m = static_cast<Criticality>(mode);
        for (const auto& ta : tiles) {
            if (!ta.allowed(m).allows(a.criticality)) continue;
            for (const auto& tb : tiles) {
                if (tb.id == ta.id) continue;
                if (tb.allowed(m).allows(b.criticality)) return true;
            }
        }
    }
    return false;
}

BankPlacement check_bank_placement(const std::vector<TaskDef>& tasks,
                                   const std::vector<Tile>& tiles,
                                   std::int32_t banks_per_tile) {
    BankPlacement p;
    TaskId max_id = 0;
    for (const auto& t : tasks) max_id = std::max(max_id, t.id);
    p.bank_of_task.assign(max_id + 1, -1);

    for (const auto& t : tasks) {
        std::vector<bool> used(static_cast<std::size_t>(banks_per_tile), false);
        for (const auto& other : tasks) {
            if (other.id == t.id) continue;
            const std::int32_t bank = p.bank_of_task[other.id];
            if (bank < 0) continue;
            if (may_run_in_parallel(t, other, tiles)) used[static_cast<std::size_t>(bank)] = true;
        }
        std::int32_t chosen = -1;
        for (std::int32_t b = 0; b < banks_per_tile; ++b) {
            if (!used[static_cast<std::size_t>(b)]) {
                chosen = b;
                break;
            }
        }
        if (chosen < 0) {
            p.feasible = false;
            p.violation = "task '" + t.name + "' cannot be placed on a distinct bank (" +
                          std::to_string(banks_per_tile) + " banks available)";
            return p;
        }
        p.bank_of_task[t.id] = chosen;
    }
    p.feasible = true;
    return p;
}

} // namespace tdsim
