#include "tdsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tdsim {

Cycles RunSummary::total_busy() const {
    Cycles v = 0;
    for (const auto& t : tiles) v += t.busy;
    return v;
}

Cycles RunSummary::total_overhead() const {
    Cycles v = 0;
    for (const auto& t : tiles) v += t.overhead;
    return v;
}

Cycles RunSummary::total_idle() const {
    Cycles v = 0;
    for (const auto& t : tiles) v += t.idle(horizon);
    return v;
}

UsageAccumulator::UsageAccumulator(const ScenarioRuntime& sc) : sc_(sc) {
    out_.horizon = sc.horizon;
    out_.clock_ghz = sc.clock_ghz;
    out_.task_count = sc.tasks.size();
    for (const auto& t : sc.tasks) out_.task_crit.push_back(t.def.criticality);
    std::vector<TileId> ids;
    for (const auto& t : sc.tiles) ids.push_back(t.id);
    std::sort(ids.begin(), ids.end());
    tile_ids_ = ids;
    out_.tiles.resize(ids.size());
    allowed_low_by_slot_.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out_.tiles[i].id = ids[i];
        for (const auto& t : sc.tiles) {
            if (t.id == ids[i]) allowed_low_by_slot_[i] = t.allowed_low_mode;
        }
    }
    live_.resize(ids.size());
}

std::size_t UsageAccumulator::tile_slot(TileId id) const {
    const auto it = std::lower_bound(tile_ids_.begin(), tile_ids_.end(), id);
    if (it == tile_ids_.end() || *it != id) throw TraceIncomplete("record names unknown tile");
    return static_cast<std::size_t>(it - tile_ids_.begin());
}

void UsageAccumulator::add_overhead(std::size_t idx, Cycles amount, Cycles& bucket) {
    out_.tiles[idx].overhead += amount;
    bucket += amount;
    if (live_[idx].switch_attributed) out_.switch_attributed_overhead += amount;
}

void UsageAccumulator::record(const TraceRecord& r) {
    auto& counts = out_.by_crit[r.task < out_.task_crit.size()
                                    ? static_cast<std::size_t>(out_.task_crit[r.task])
                                    : 0];
    switch (r.kind) {
    case TraceKind::job_arrival: {
        ++counts.arrivals;
        const auto& def = sc_.tasks[r.task].def;
        if (r.time + def.deadline <= out_.horizon) ++counts.eligible;
        break;
    }
    case TraceKind::staging_copy_start:
        staging_begin_[(static_cast<std::uint64_t>(r.task) << 32) | r.seq] = r.time;
        break;
    case TraceKind::staging_copy_done: {
        const auto it = staging_begin_.find((static_cast<std::uint64_t>(r.task) << 32) | r.seq);
        if (it != staging_begin_.end()) {
            out_.staging_copy_time += r.time - it->second;
            staging_begin_.erase(it);
        }
        break;
    }
    case TraceKind::queue_drop:
        ++counts.queue_drops;
        break;
    case TraceKind::shed:
        ++counts.sheds;
        break;
    case TraceKind::dispatched: {
        const std::size_t idx = tile_slot(r.tile);
        live_[idx].task = r.task;
        live_[idx].switch_attributed =
            r.mode == Criticality::high &&
            !allowed_low_by_slot_[idx].allows(out_.task_crit[r.task]);
        break;
    }
    case TraceKind::copy_start: {
        const std::size_t idx = tile_slot(r.tile);
        live_[idx].task = r.task;
        live_[idx].copy_begin = r.time;
        break;
    }
    case TraceKind::copy_done: {
        const std::size_t idx = tile_slot(r.tile);
        auto& lv = live_[idx];
        if (!lv.copy_begin) throw TraceIncomplete("copy completion without start");
        const Cycles dur = r.time - *lv.copy_begin;
        add_overhead(idx, dur, out_.overhead_copies);
        auto& mx = out_.copy_max_by_size[r.aux];
        mx = std::max(mx, dur);
        lv.copy_begin.reset();
        lv.copy_end = r.time;
        break;
    }
    case TraceKind::start_msg: {
        const std::size_t idx = tile_slot(r.tile);
        auto& lv = live_[idx];
        if (lv.copy_end) {
            add_overhead(idx, r.time - *lv.copy_end, out_.overhead_msgs);
            lv.copy_end.reset();
        }
        lv.start_msg_at = r.time;
        break;
    }
    case TraceKind::exec_start: {
        const std::size_t idx = tile_slot(r.tile);
        auto& lv = live_[idx];
        if (lv.start_msg_at) {
            add_overhead(idx, r.time - *lv.start_msg_at, out_.overhead_start);
            lv.start_msg_at.reset();
        } else if (lv.copy_end) {
            // Static runs begin execution straight after the copy.
            lv.copy_end.reset();
        }
        lv.exec_begin = r.time;
        break;
    }
    case TraceKind::job_complete: {
        const std::size_t idx = tile_slot(r.tile);
        auto& lv = live_[idx];
        if (!lv.exec_begin) throw TraceIncomplete("completion without execution start");
        const Cycles dur = r.time - *lv.exec_begin;
        out_.tiles[idx].busy += dur;
        out_.tiles[idx].busy_by_task[r.task] += dur;
        out_.exec_hist[r.task][dur] += 1;
        lv.exec_begin.reset();
        lv.complete_at = r.time;
        ++counts.completions;
        const bool ontime = (r.aux & 1u) != 0;
        if (ontime) {
            ++counts.ontime;
            const auto& def = sc_.tasks[r.task].def;
            const Cycles deadline =
                def.source_offset + static_cast<Cycles>(r.seq) * def.period + def.deadline;
            if (deadline <= out_.horizon) ++counts.ontime_eligible;
        } else {
            ++counts.late;
        }
        break;
    }
    case TraceKind::complete_msg: {
        const std::size_t idx = tile_slot(r.tile);
        auto& lv = live_[idx];
        if (lv.complete_at) {
            add_overhead(idx, r.time - *lv.complete_at, out_.overhead_msgs);
            lv.complete_at.reset();
            lv.switch_attributed = false;
        }
        break;
    }
    case TraceKind::mode_change: {
        ++out_.mode_changes;
        const auto next = static_cast<Criticality>(r.aux);
        if (next == Criticality::high && mode_ == Criticality::low) high_since_ = r.time;
        if (next == Criticality::low && mode_ == Criticality::high)
            out_.high_mode_time += r.time - high_since_;
        mode_ = next;
        break;
    }
    case TraceKind::anomaly:
        ++out_.anomalies;
        break;
    case TraceKind::sim_end:
        saw_end_ = true;
        break;
    case TraceKind::enqueued:
    case TraceKind::arrival_msg:
    case TraceKind::bank_acquired:
    case TraceKind::bank_released:
        break;
    }
}

void UsageAccumulator::loop_sample(Cycles duration, std::uint8_t flags) {
    ++out_.loop_iterations;
    if (flags != 0) {
        ++out_.nonempty_iterations;
        out_.loop_hist[duration] += 1;
    }
}

RunSummary UsageAccumulator::finalize() {
    if (finalized_) return out_;
    finalized_ = true;
    const Cycles h = out_.horizon;
    for (std::size_t i = 0; i < live_.size(); ++i) {
        auto& lv = live_[i];
        if (lv.copy_begin) add_overhead(i, h - *lv.copy_begin, out_.overhead_copies);
        if (lv.copy_end) add_overhead(i, h - *lv.copy_end, out_.overhead_msgs);
        if (lv.start_msg_at) add_overhead(i, h - *lv.start_msg_at, out_.overhead_start);
        if (lv.exec_begin) {
            out_.tiles[i].busy += h - *lv.exec_begin;
            out_.tiles[i].busy_by_task[lv.task] += h - *lv.exec_begin;
        }
        // A completion whose acknowledgement never arrived (static runs,
        // or a horizon cut) contributes nothing; the sliver stays idle.
        lv = TileLive{};
    }
    if (mode_ == Criticality::high) {
        out_.high_mode_time += h - high_since_;
        mode_ = Criticality::low;
    }
    for (const auto& t : out_.tiles) {
        if (t.busy + t.overhead > h)
            throw TraceIncomplete("tile timeline exceeds the horizon");
    }
    return out_;
}

RunSummary summarize(const VectorTrace& trace, const ScenarioRuntime& sc) {
    UsageAccumulator acc(sc);
    for (const auto& r : trace.records) acc.record(r);
    for (const auto& s : trace.loop_samples) acc.loop_sample(s.duration, s.flags);
    return acc.finalize();
}

TileUsageReport tile_usage(const VectorTrace& trace, Cycles horizon, const ScenarioRuntime& sc) {
    RunSummary s = summarize(trace, sc);
    if (s.horizon != horizon) s.horizon = horizon;
    TileUsageReport rep;
    rep.horizon = horizon;
    rep.clock_ghz = s.clock_ghz;
    for (const auto& t : s.tiles) {
        TileUsageRow row;
        row.tile = t.id;
        row.busy = t.busy;
        row.overhead = t.overhead;
        row.idle = t.idle(horizon);
        row.busy_by_task = t.busy_by_task;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

ComparisonReport compare(const RunSummary& dynamic_run, const RunSummary& static_run,
                         const ComparisonContext& ctx) {
    if (dynamic_run.horizon != static_run.horizon ||
        dynamic_run.task_crit != static_run.task_crit)
        throw MismatchedScenarios("runs cover different horizons or task sets");

    ComparisonReport r;
    const auto idle_d = static_cast<double>(dynamic_run.total_idle());
    const auto idle_s = static_cast<double>(static_run.total_idle());
    r.idle_reduction_pct = idle_s > 0.0 ? 100.0 * (idle_s - idle_d) / idle_s : 0.0;
    r.idle_dynamic_ms = cycles_to_ms(dynamic_run.total_idle(), dynamic_run.clock_ghz);
    r.idle_static_ms = cycles_to_ms(static_run.total_idle(), static_run.clock_ghz);

    r.low_ontime_dynamic = dynamic_run.counts(Criticality::low).ontime;
    r.low_ontime_static = static_run.counts(Criticality::low).ontime;
    r.low_throughput_ratio =
        r.low_ontime_static > 0
            ? static_cast<double>(r.low_ontime_dynamic) / static_cast<double>(r.low_ontime_static)
            : (r.low_ontime_dynamic > 0 ? std::numeric_limits<double>::infinity() : 1.0);

    r.high_misses_dynamic = dynamic_run.counts(Criticality::high).misses();
    r.high_misses_static = static_run.counts(Criticality::high).misses();

    const auto busy = static_cast<double>(dynamic_run.total_busy());
    r.overhead_fraction =
        busy > 0.0 ? static_cast<double>(dynamic_run.total_overhead()) / busy : 0.0;

    const auto horizon = static_cast<double>(dynamic_run.horizon);
    r.o_switch_vs_teet_low_pct =
        ctx.eet_low > 0 ? 100.0 * static_cast<double>(ctx.o_switch) / ctx.eet_low : 0.0;
    r.o_switch_vs_horizon_pct =
        horizon > 0.0 ? 100.0 * static_cast<double>(ctx.o_switch) / horizon : 0.0;
    r.switch_overhead_vs_horizon_pct =
        horizon > 0.0
            ? 100.0 * static_cast<double>(dynamic_run.switch_attributed_overhead) / horizon
            : 0.0;
    return r;
}

std::vector<HistRow> histogram(const RunSummary& summary, HistQuantity q, double bin_width_ms,
                               std::optional<TaskId> task) {
    std::vector<HistRow> rows;
    const double cpm = cycles_per_ms(summary.clock_ghz);

    if (q == HistQuantity::copy_time) {
        for (const auto& [size, max_cycles] : summary.copy_max_by_size) {
            HistRow row;
            row.right_ms = static_cast<double>(size); // buffer size in bytes
            row.max_ms = static_cast<double>(max_cycles) / cpm;
            row.count = 1;
            rows.push_back(row);
        }
        return rows;
    }

    const std::map<Cycles, std::uint64_t>* samples = nullptr;
    if (q == HistQuantity::loop_time) {
        samples = &summary.loop_hist;
    } else {
        if (!task) throw std::invalid_argument("exec_time histogram needs a task");
        const auto it = summary.exec_hist.find(*task);
        if (it == summary.exec_hist.end()) return rows;
        samples = &it->second;
    }

    std::map<std::uint64_t, std::uint64_t> binned; // bin index -> count
    const double width_cycles = bin_width_ms * cpm;
    for (const auto& [dur, count] : *samples) {
        const auto bin = static_cast<std::uint64_t>(
            std::ceil(static_cast<double>(dur) / width_cycles - 1e-9));
        binned[bin == 0 ? 1 : bin] += count;
    }
    for (const auto& [bin, count] : binned) {
        HistRow row;
        row.right_ms = static_cast<double>(bin) * bin_width_ms;
        row.count = count;
        rows.push_back(row);
    }
    return rows;
}

} // namespace tdsim
