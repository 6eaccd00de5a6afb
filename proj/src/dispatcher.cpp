#include "tdsim/dispatcher.hpp"

#include <algorithm>

namespace tdsim {

void Dispatcher::remove_pending(TaskId task, std::uint32_t seq) {
    pending_.erase(std::remove_if(pending_.begin(), pending_.end(),
                                  [&](const PendingSwitch& p) {
                                      return p.task == task && p.seq == seq;
                                  }),
                   pending_.end());
}

std::optional<PendingSwitch> Dispatcher::earliest_pending() const {
    if (pending_.empty()) return std::nullopt;
    return *std::min_element(pending_.begin(), pending_.end(),
                             [](const PendingSwitch& a, const PendingSwitch& b) {
                                 if (a.due != b.due) return a.due < b.due;
                                 if (a.task != b.task) return a.task < b.task;
                                 return a.seq < b.seq;
                             });
}

std::optional<Criticality> Dispatcher::check_context_switch(Cycles now) {
    if (mode_.mode != Criticality::low) return std::nullopt;
    const auto earliest = earliest_pending();
    if (!earliest) return std::nullopt;
    if (now + margin_ < earliest->due) return std::nullopt;
    mode_.mode = Criticality::high;
    mode_.high_mode_jobs_remaining = mode_.n_param;
    return Criticality::high;
}

std::optional<std::size_t> Dispatcher::try_dispatch(const JobMeta& meta,
                                                    const std::vector<Tile>& tiles) const {
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        if (tile_busy_view_[i]) continue;
        if (tiles[i].allowed(mode_.mode).allows(meta.criticality)) return i;
    }
    return std::nullopt;
}

Dispatcher::CompletionEffect Dispatcher::on_completion(std::size_t tile_index, bool job_known,
                                                       Criticality job_criticality,
                                                       Cycles actual_exec, Cycles eet) {
    CompletionEffect e;
    if (!job_known) {
        e.known_job = false;
        return e;
    }
    tile_busy_view_[tile_index] = false;
    if (job_criticality != Criticality::high) return e;
    if (mode_.mode != Criticality::high) return e;
    if (actual_exec > eet) {
        mode_.high_mode_jobs_remaining = mode_.n_param;
        return e;
    }
    if (mode_.high_mode_jobs_remaining > 0) --mode_.high_mode_jobs_remaining;
    if (mode_.high_mode_jobs_remaining == 0) {
        mode_.mode = Criticality::low;
        e.mode_changed_to_low = true;
    }
    return e;
}

} // namespace tdsim
