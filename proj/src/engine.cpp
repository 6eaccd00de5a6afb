#include "tdsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <unordered_map>

#include "tdsim/dispatcher.hpp"

namespace tdsim {

Cycles ExecTimeModel::sample(Xoshiro256StarStar& rng, std::uint32_t seq) const {
    switch (kind) {
    case Kind::constant:
        return constant_value;
    case Kind::empirical:
        return samples.empty() ? constant_value : samples[seq % samples.size()];
    case Kind::bimodal: {
        const bool exceed = rng.bernoulli(p_exceed);
        if (exceed) return rng.uniform(high_min, high_max);
        return rng.uniform(low_min, low_max);
    }
    }
    return constant_value;
}

Cycles sample_exec_time(const ExecTimeModel& model, Xoshiro256StarStar& rng, std::uint32_t seq) {
    return model.sample(rng, seq);
}

std::uint64_t ScenarioRuntime::max_buffer_bytes() const {
    std::uint64_t m = 0;
    for (const auto& t : tasks)
        m = std::max({m, t.def.input_buffer_bytes, t.def.output_buffer_bytes});
    return m;
}

const TaskDef* ScenarioRuntime::worst_low_task() const {
    const TaskDef* worst = nullptr;
    for (const auto& t : tasks) {
        if (t.def.criticality != Criticality::low) continue;
        if (worst == nullptr || t.def.wcet > worst->wcet) worst = &t.def;
    }
    return worst;
}

Cycles ScenarioRuntime::o_switch_effective() const {
    return switch_overhead(timing, max_buffer_bytes(), worst_low_task()).cycles;
}

std::vector<std::string> ScenarioRuntime::validate() const {
    std::vector<TaskDef> defs;
    defs.reserve(tasks.size());
    for (const auto& t : tasks) defs.push_back(t.def);

    std::vector<std::string> out = validate_taskset(defs, tiles);

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].def.id != i)
            out.push_back("task '" + tasks[i].def.name + "': id must equal its index");
    }

    if (!defs.empty() && !tiles.empty()) {
        const auto placement = check_bank_placement(defs, tiles, banks_per_tile);
        if (!placement.feasible) out.push_back("bank placement: " + placement.violation);
    }

    const Cycles o_switch = o_switch_effective();
    for (const auto& t : tasks) {
        if (t.def.criticality != Criticality::high) continue;
        const auto st = switch_time(0, t.def, o_switch);
        if (!st.feasible)
            out.push_back("task '" + t.def.name +
                          "': switching overhead consumes the whole laxity "
                          "(o_switch >= deadline - t_wcet); configuration infeasible");
    }

    for (const auto& t : tasks) {
        switch (t.exec.kind) {
        case ExecTimeModel::Kind::constant:
            if (t.exec.constant_value == 0 || t.exec.constant_value > t.def.wcet)
                out.push_back("task '" + t.def.name + "': constant execution time out of range");
            break;
        case ExecTimeModel::Kind::bimodal:
            if (t.exec.low_min == 0 || t.exec.low_max > t.def.eet)
                out.push_back("task '" + t.def.name + "': bimodal low range must lie within t_eet");
            if (t.exec.high_min <= t.def.eet || t.exec.high_max > t.def.wcet)
                out.push_back("task '" + t.def.name +
                              "': bimodal high range must lie in (t_eet, t_wcet]");
            if (t.exec.low_min > t.exec.low_max || t.exec.high_min > t.exec.high_max)
                out.push_back("task '" + t.def.name + "': bimodal range bounds inverted");
            break;
        case ExecTimeModel::Kind::empirical:
            for (Cycles s : t.exec.samples) {
                if (s == 0 || s > t.def.wcet) {
                    out.push_back("task '" + t.def.name + "': empirical sample out of range");
                    break;
                }
            }
            break;
        }
    }
    return out;
}

namespace {

enum class Ev : std::uint8_t {
    job_complete,
    msg_high,
    msg_low,
    msg_control,
    staging_retry,
    staging_done,
    tile_copy_retry,
    tile_copy_done,
    exec_begin,
    job_arrival,
    wake,
    sim_end,
};

// Calendar ordering class: completions before message deliveries before
// copy completions before arrivals before dispatcher wakes before the end
// marker.
int prio(Ev e) {
    switch (e) {
    case Ev::job_complete: return 0;
    case Ev::msg_high:
    case Ev::msg_low:
    case Ev::msg_control: return 1;
    case Ev::staging_retry:
    case Ev::staging_done:
    case Ev::tile_copy_retry:
    case Ev::tile_copy_done:
    case Ev::exec_begin: return 2;
    case Ev::job_arrival: return 3;
    case Ev::wake: return 4;
    case Ev::sim_end: return 5;
    }
    return 6;
}

struct Event {
    Cycles time;
    Ev kind;
    std::uint64_t order;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
};

struct EventAfter {
    bool operator()(const Event& x, const Event& y) const {
        if (x.time != y.time) return x.time > y.time;
        const int px = prio(x.kind), py = prio(y.kind);
        if (px != py) return px > py;
        return x.order > y.order;
    }
};

std::uint64_t job_key(TaskId task, std::uint32_t seq) {
    return (static_cast<std::uint64_t>(task) << 32) | seq;
}

class DynamicEngine {
public:
    DynamicEngine(const ScenarioRuntime& sc, std::uint64_t seed, TraceSink& sink, bool audit)
        : sc_(sc), sink_(sink), audit_(audit) {
        const auto problems = sc.validate();
        if (!problems.empty()) throw ScenarioError(problems.front());

        tiles_ = sc.tiles;
        std::sort(tiles_.begin(), tiles_.end(),
                  [](const Tile& a, const Tile& b) { return a.id < b.id; });

        o_switch_ = sc.o_switch_effective();
        margin_ = sc.timing.dispatch_margin_cycles();
        dispatcher_ = Dispatcher(sc.n_param, tiles_.size(), margin_);

        std::vector<TaskDef> defs;
        for (const auto& t : sc.tasks) defs.push_back(t.def);
        placement_ = check_bank_placement(defs, tiles_, sc.banks_per_tile);
        banks_.resize(static_cast<std::size_t>(sc.banks_per_tile));
        for (std::size_t i = 0; i < banks_.size(); ++i) banks_[i].id = static_cast<std::int32_t>(i);

        const auto n_sources = static_cast<std::uint32_t>(sc.tasks.size() + tiles_.size());
        channels_[0] = NotificationChannel(ChannelClass::high_priority, sc.hop_latency,
                                           sc.channel_capacity, n_sources);
        channels_[1] = NotificationChannel(ChannelClass::low_priority, sc.hop_latency,
                                           sc.channel_capacity, n_sources);
        channels_[2] = NotificationChannel(ChannelClass::control, sc.hop_latency,
                                           sc.channel_capacity, 1);

        queues_[0] = TaskQueue(Criticality::low, sc.queue_capacity, sc.meta_copy_cycles());
        queues_[1] = TaskQueue(Criticality::high, sc.queue_capacity, sc.meta_copy_cycles());

        for (const auto& t : sc.tasks) {
            sources_.push_back({0, Xoshiro256StarStar(stream_seed(seed, t.def.id))});
        }
        dispatcher_rng_ = Xoshiro256StarStar(stream_seed(seed, 0xD15BA7C4E5ULL));
    }

    EngineStats run() {
        for (const auto& t : sc_.tasks) {
            if (t.def.source_offset < sc_.horizon)
                push(t.def.source_offset, Ev::job_arrival, t.def.id);
        }
        if (sc_.horizon > 0) push(0, Ev::wake);
        push(sc_.horizon, Ev::sim_end);

        while (!calendar_.empty()) {
            const Event e = calendar_.top();
            calendar_.pop();
            ++stats_.events_processed;
            switch (e.kind) {
            case Ev::job_arrival: on_arrival(e); break;
            case Ev::staging_retry: begin_staging(e.time, e.a, e.b); break;
            case Ev::staging_done: on_staging_done(e); break;
            case Ev::msg_high: on_priority_msg(e.time, 1); break;
            case Ev::msg_low: on_priority_msg(e.time, 0); break;
            case Ev::msg_control: on_control_msg(e.time); break;
            case Ev::tile_copy_retry: begin_tile_copy(e.time, e.a); break;
            case Ev::tile_copy_done: on_tile_copy_done(e); break;
            case Ev::exec_begin: on_exec_begin(e); break;
            case Ev::job_complete: on_job_complete(e); break;
            case Ev::wake: on_wake(e.time); break;
            case Ev::sim_end:
                emit({e.time, TraceKind::sim_end, 0, 0, kNoTile, dispatcher_.level(), 0});
                collect_queue_stats();
                return stats_;
            }
        }
        collect_queue_stats();
        return stats_;
    }

private:
    void push(Cycles time, Ev kind, std::uint32_t a = 0, std::uint32_t b = 0) {
        calendar_.push({time, kind, order_++, a, b});
    }

    void emit(const TraceRecord& r) { sink_.record(r); }

    MemoryBank& bank_of(TaskId task) {
        return banks_[static_cast<std::size_t>(placement_.bank_of_task[task])];
    }

    std::size_t tile_index(TileId id) const {
        for (std::size_t i = 0; i < tiles_.size(); ++i)
            if (tiles_[i].id == id) return i;
        throw std::logic_error("unknown tile id");
    }

    void on_arrival(const Event& e) {
        const TaskId task = e.a;
        auto& src = sources_[task];
        const auto& spec = sc_.tasks[task];
        const std::uint32_t seq = src.next_seq++;

        Job job;
        job.task = task;
        job.seq = seq;
        job.arrival = e.time;
        job.actual_exec = spec.exec.sample(src.rng, seq);
        job.absolute_deadline = e.time + spec.def.deadline;
        jobs_[job_key(task, seq)] = job;

        emit({e.time, TraceKind::job_arrival, task, seq, kNoTile, dispatcher_.level(),
              job.actual_exec});

        begin_staging(e.time, task, seq);

        const Cycles next = e.time + spec.def.period;
        if (next < sc_.horizon) push(next, Ev::job_arrival, task);
    }

    void begin_staging(Cycles now, TaskId task, std::uint32_t seq) {
        const auto& def = sc_.tasks[task].def;
        auto& bank = bank_of(task);
        const Cycles dur = sc_.timing.copy.cycles_for(def.input_buffer_bytes);
        const auto grant = bank.acquire(task, dur, now);
        if (!grant.granted) {
            push(grant.busy_until, Ev::staging_retry, task, seq);
            return;
        }
        emit({now, TraceKind::bank_acquired, task, seq, kDispatcherTile, dispatcher_.level(),
              static_cast<std::uint64_t>(bank.id)});
        emit({now, TraceKind::staging_copy_start, task, seq, kDispatcherTile, dispatcher_.level(),
              def.input_buffer_bytes});
        push(now + dur, Ev::staging_done, task, seq);
    }

    void on_staging_done(const Event& e) {
        const TaskId task = e.a;
        const std::uint32_t seq = e.b;
        const auto& def = sc_.tasks[task].def;
        auto& bank = bank_of(task);
        bank.release(e.time);
        emit({e.time, TraceKind::bank_released, task, seq, kDispatcherTile, dispatcher_.level(),
              static_cast<std::uint64_t>(bank.id)});
        emit({e.time, TraceKind::staging_copy_done, task, seq, kDispatcherTile, dispatcher_.level(),
              def.input_buffer_bytes});

        // Metadata travels to the queue buffer over the merged stream; the
        // merger therefore arbitrates simultaneous arrivals, and the queue
        // write lands together with the notification one message latency
        // later.
        Message msg;
        msg.route = kDispatcherTile;
        msg.type = MsgType::task_arrival;
        msg.task_id = task;
        msg.job_seq = seq;
        auto& ch = channels_[def.criticality == Criticality::high ? 0 : 1];
        if (ch.send(msg, e.time, task) == SendStatus::accepted) {
            push(e.time + ch.message_latency(),
                 def.criticality == Criticality::high ? Ev::msg_high : Ev::msg_low);
        } else {
            emit({e.time, TraceKind::anomaly, task, seq, kNoTile, dispatcher_.level(),
                  static_cast<std::uint64_t>(AnomalyCode::channel_full)});
            auto it = jobs_.find(job_key(task, seq));
            if (it != jobs_.end()) {
                it->second.state = JobState::dropped;
                jobs_.erase(it);
            }
        }
    }

    void enqueue_arrival(const Message& msg, Cycles now) {
        auto it = jobs_.find(job_key(msg.task_id, msg.job_seq));
        if (it == jobs_.end()) return;
        Job& job = it->second;
        const auto& def = sc_.tasks[msg.task_id].def;

        JobMeta meta;
        meta.task = msg.task_id;
        meta.seq = msg.job_seq;
        meta.criticality = def.criticality;
        meta.arrival = job.arrival;
        meta.absolute_deadline = job.absolute_deadline;
        meta.wcet = def.wcet;
        meta.input_bytes = def.input_buffer_bytes;

        auto& q = queues_[def.criticality == Criticality::high ? 1 : 0];
        if (q.enqueue(meta, now) == EnqueueStatus::queue_full) {
            job.state = JobState::dropped;
            emit({now, TraceKind::queue_drop, meta.task, meta.seq, kNoTile, dispatcher_.level(),
                  0});
            jobs_.erase(it);
            return;
        }
        emit({now, TraceKind::enqueued, meta.task, meta.seq, kNoTile, dispatcher_.level(),
              q.depth()});

        if (def.criticality == Criticality::high) {
            const auto st = switch_time(job.arrival, def, o_switch_);
            dispatcher_.register_pending(meta, st.at);
        }
    }

    // pr: 1 = high-priority channel, 0 = low-priority channel
    void on_priority_msg(Cycles now, int pr) {
        auto& ch = channels_[pr == 1 ? 0 : 1];
        const auto d = ch.pop_delivered(now);
        if (!d) throw std::logic_error("channel delivery without pending message");
        const auto& msg = d->msg;
        const TraceKind kind =
            msg.type == MsgType::task_complete ? TraceKind::complete_msg : TraceKind::arrival_msg;
        emit({now, kind, msg.task_id, msg.job_seq,
              msg.type == MsgType::task_complete ? msg.route : kNoTile, dispatcher_.level(), 0});
        if (msg.type == MsgType::task_arrival) enqueue_arrival(msg, now);
        inbox_[pr].push_back(msg);
    }

    void on_control_msg(Cycles now) {
        auto& ch = channels_[2];
        const auto d = ch.pop_delivered(now);
        if (!d) throw std::logic_error("control delivery without pending message");
        const std::size_t idx = tile_index(d->msg.route);
        emit({now, TraceKind::start_msg, d->msg.task_id, d->msg.job_seq, tiles_[idx].id,
              dispatcher_.level(), 0});
        push(now + sc_.timing.tile_start_cycles(), Ev::exec_begin, static_cast<std::uint32_t>(idx));
    }

    void begin_tile_copy(Cycles now, std::uint32_t idx) {
        Tile& tile = tiles_[idx];
        if (!tile.current_task) throw std::logic_error("tile copy without a resident job");
        const TaskId task = *tile.current_task;
        const auto& def = sc_.tasks[task].def;
        auto& bank = bank_of(task);
        const Cycles dur = sc_.timing.copy.cycles_for(def.input_buffer_bytes);
        const auto grant = bank.acquire(task, dur, now);
        if (!grant.granted) {
            push(grant.busy_until, Ev::tile_copy_retry, idx);
            return;
        }
        emit({now, TraceKind::bank_acquired, task, tile.current_seq, tile.id, dispatcher_.level(),
              static_cast<std::uint64_t>(bank.id)});
        emit({now, TraceKind::copy_start, task, tile.current_seq, tile.id, dispatcher_.level(),
              def.input_buffer_bytes});
        if (auto it = jobs_.find(job_key(task, tile.current_seq)); it != jobs_.end())
            it->second.state = JobState::copying_in;
        push(now + dur, Ev::tile_copy_done, idx);
    }

    void on_tile_copy_done(const Event& e) {
        const std::size_t idx = e.a;
        Tile& tile = tiles_[idx];
        if (!tile.current_task) throw std::logic_error("copy completion on an empty tile");
        const TaskId task = *tile.current_task;
        const auto& def = sc_.tasks[task].def;
        auto& bank = bank_of(task);
        bank.release(e.time);
        emit({e.time, TraceKind::bank_released, task, tile.current_seq, tile.id,
              dispatcher_.level(), static_cast<std::uint64_t>(bank.id)});
        emit({e.time, TraceKind::copy_done, task, tile.current_seq, tile.id, dispatcher_.level(),
              def.input_buffer_bytes});

        Message msg;
        msg.route = tile.id;
        msg.type = MsgType::task_start;
        msg.task_id = task;
        msg.job_seq = tile.current_seq;
        auto& ch = channels_[2];
        if (ch.send(msg, e.time, 0) == SendStatus::accepted) {
            push(e.time + ch.message_latency(), Ev::msg_control);
        } else {
            emit({e.time, TraceKind::anomaly, task, tile.current_seq, tile.id, dispatcher_.level(),
                  static_cast<std::uint64_t>(AnomalyCode::channel_full)});
        }
    }

    void on_exec_begin(const Event& e) {
        const std::size_t idx = e.a;
        Tile& tile = tiles_[idx];
        if (!tile.current_task) throw std::logic_error("exec begin on an empty tile");
        auto it = jobs_.find(job_key(*tile.current_task, tile.current_seq));
        if (it == jobs_.end()) throw std::logic_error("exec begin without job record");
        Job& job = it->second;
        job.state = JobState::running;
        emit({e.time, TraceKind::exec_start, job.task, job.seq, tile.id, dispatcher_.level(), 0});
        tile.busy_until = e.time + job.actual_exec;
        push(tile.busy_until, Ev::job_complete, static_cast<std::uint32_t>(idx));
    }

    void on_job_complete(const Event& e) {
        const std::size_t idx = e.a;
        Tile& tile = tiles_[idx];
        if (!tile.current_task) throw std::logic_error("completion on an empty tile");
        const TaskId task = *tile.current_task;
        const std::uint32_t seq = tile.current_seq;
        auto it = jobs_.find(job_key(task, seq));
        if (it == jobs_.end()) throw std::logic_error("completion without job record");
        Job& job = it->second;
        job.state = JobState::completed;
        const bool ontime = e.time <= job.absolute_deadline;
        emit({e.time, TraceKind::job_complete, task, seq, tile.id, dispatcher_.level(),
              ontime ? 1u : 0u});

        tile.current_task.reset();

        Message msg;
        msg.route = tile.id;
        msg.type = MsgType::task_complete;
        msg.task_id = task;
        msg.job_seq = seq;
        const bool high = sc_.tasks[task].def.criticality == Criticality::high;
        auto& ch = channels_[high ? 0 : 1];
        const auto source = static_cast<std::uint32_t>(sc_.tasks.size() + idx);
        if (ch.send(msg, e.time, source) == SendStatus::accepted) {
            push(e.time + ch.message_latency(), high ? Ev::msg_high : Ev::msg_low);
        } else {
            emit({e.time, TraceKind::anomaly, task, seq, tile.id, dispatcher_.level(),
                  static_cast<std::uint64_t>(AnomalyCode::channel_full)});
        }
    }

    void on_wake(Cycles now) {
        const Cycles duration =
            sc_.loop_uniform
                ? dispatcher_rng_.uniform(sc_.loop_min, sc_.timing.loop_wc_cycles())
                : sc_.timing.loop_wc_cycles();
        std::uint8_t flags = 0;

        std::vector<bool> idle_at_start;
        const Criticality mode_at_start = dispatcher_.level();
        if (audit_) {
            idle_at_start.resize(tiles_.size());
            for (std::size_t i = 0; i < tiles_.size(); ++i)
                idle_at_start[i] = !dispatcher_.tile_busy_in_view(i);
        }

        // Step 1: context-switch check.
        if (dispatcher_.check_context_switch(now)) {
            flags |= loop_flag::context_switch;
            emit({now, TraceKind::mode_change, 0, 0, kNoTile, Criticality::high,
                  static_cast<std::uint64_t>(Criticality::high)});
        }

        // Steps 2-4, high priority level first.
        for (const Criticality level : {Criticality::high, Criticality::low}) {
            const bool high = level == Criticality::high;
            auto& local = dispatcher_.local(level);

            if (!local) {
                auto meta = queues_[high ? 1 : 0].pop_front(now);
                if (meta) {
                    local = *meta;
                    flags |= high ? loop_flag::refresh_high : loop_flag::refresh_low;
                }
            }

            if (local) {
                if (!high && shed_due(*local, now)) {
                    shed_job(*local, now);
                    flags |= loop_flag::dispatch_low;
                    local.reset();
                } else if (const auto idx = dispatcher_.try_dispatch(*local, tiles_)) {
                    dispatch_job(*local, *idx, now);
                    flags |= high ? loop_flag::dispatch_high : loop_flag::dispatch_low;
                    local.reset();
                }
            }

            auto& inbox = inbox_[high ? 1 : 0];
            if (!inbox.empty()) {
                const Message msg = inbox.front();
                inbox.pop_front();
                flags |= high ? loop_flag::drain_high : loop_flag::drain_low;
                if (msg.type == MsgType::task_complete) drain_completion(msg, now);
            }
        }

        if (audit_ && dispatcher_.level() == mode_at_start) {
            // Lost-wakeup audit: a job still held locally must not fit any
            // tile that stayed idle in the dispatcher's view across the
            // whole iteration. Iterations where the mode flipped are
            // exempt; the next pass re-evaluates under the new pool.
            for (const Criticality level : {Criticality::high, Criticality::low}) {
                const auto& local = dispatcher_.local(level);
                if (!local) continue;
                for (std::size_t i = 0; i < tiles_.size(); ++i) {
                    if (!idle_at_start[i] || dispatcher_.tile_busy_in_view(i)) continue;
                    if (tiles_[i].allowed(dispatcher_.level()).allows(local->criticality))
                        throw std::logic_error("work-conservation violation in dispatcher loop");
                }
            }
        }

        sink_.loop_sample(duration, flags);
        ++stats_.loop_iterations;
        if (flags != 0) ++stats_.nonempty_iterations;
        push(now + duration, Ev::wake);
    }

    void collect_queue_stats() {
        for (int level = 0; level < 2; ++level) {
            auto& qs = stats_.queues[level];
            // queues_ is indexed low=0, high=1, matching Criticality.
            const auto& q = queues_[level];
            qs.enqueued = q.enqueued_count;
            qs.popped = q.popped_count;
            qs.dropped = q.dropped_count;
            qs.final_depth = q.depth();
            qs.held_locally =
                dispatcher_.local(static_cast<Criticality>(level)).has_value() ? 1 : 0;
        }
    }

    bool shed_due(const JobMeta& meta, Cycles now) const {
        const Cycles overhead = sc_.timing.copy.cycles_for(meta.input_bytes) +
                                sc_.timing.stream_msg_cycles() + sc_.timing.tile_start_cycles();
        return now + overhead + meta.wcet > meta.absolute_deadline;
    }

    void shed_job(const JobMeta& meta, Cycles now) {
        emit({now, TraceKind::shed, meta.task, meta.seq, kNoTile, dispatcher_.level(), 0});
        auto it = jobs_.find(job_key(meta.task, meta.seq));
        if (it != jobs_.end()) {
            it->second.state = JobState::dropped;
            jobs_.erase(it);
        }
    }

    void dispatch_job(const JobMeta& meta, std::size_t idx, Cycles now) {
        Tile& tile = tiles_[idx];
        if (tile.current_task)
            throw std::logic_error("dispatch to an occupied tile"); // scheduler bug
        tile.current_task = meta.task;
        tile.current_seq = meta.seq;
        dispatcher_.mark_tile_busy(idx);
        dispatcher_.remove_pending(meta.task, meta.seq);
        auto it = jobs_.find(job_key(meta.task, meta.seq));
        if (it != jobs_.end()) it->second.state = JobState::dispatched;
        emit({now, TraceKind::dispatched, meta.task, meta.seq, tile.id, dispatcher_.level(), 0});
        begin_tile_copy(now, static_cast<std::uint32_t>(idx));
    }

    void drain_completion(const Message& msg, Cycles now) {
        const std::size_t idx = tile_index(msg.route);
        auto it = jobs_.find(job_key(msg.task_id, msg.job_seq));
        const bool known = it != jobs_.end() && it->second.state == JobState::completed;
        if (!known) {
            dispatcher_.on_completion(idx, false, Criticality::low, 0, 0);
            emit({now, TraceKind::anomaly, msg.task_id, msg.job_seq, msg.route,
                  dispatcher_.level(), static_cast<std::uint64_t>(AnomalyCode::unknown_job)});
            return;
        }
        const auto& def = sc_.tasks[msg.task_id].def;
        const auto effect =
            dispatcher_.on_completion(idx, true, def.criticality, it->second.actual_exec, def.eet);
        jobs_.erase(it);
        if (effect.mode_changed_to_low) {
            emit({now, TraceKind::mode_change, 0, 0, kNoTile, Criticality::low,
                  static_cast<std::uint64_t>(Criticality::low)});
        }
    }

    const ScenarioRuntime& sc_;
    TraceSink& sink_;
    bool audit_ = false;

    std::vector<Tile> tiles_;
    Dispatcher dispatcher_;
    Cycles o_switch_ = 0;
    Cycles margin_ = 0;

    BankPlacement placement_;
    std::vector<MemoryBank> banks_;
    std::array<NotificationChannel, 3> channels_; // high, low, control
    std::array<TaskQueue, 2> queues_;             // low, high
    std::array<std::deque<Message>, 2> inbox_;    // low, high

    struct SourceState {
        std::uint32_t next_seq;
        Xoshiro256StarStar rng;
    };
    std::vector<SourceState> sources_;
    Xoshiro256StarStar dispatcher_rng_{0};

    std::unordered_map<std::uint64_t, Job> jobs_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> calendar_;
    std::uint64_t order_ = 0;
    EngineStats stats_;
};

} // namespace

EngineStats run_dynamic(const ScenarioRuntime& sc, std::uint64_t seed, TraceSink& sink,
                        bool audit_work_conservation) {
    DynamicEngine engine(sc, seed, sink, audit_work_conservation);
    return engine.run();
}

} // namespace tdsim
