#include "tdsim/baseline.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <unordered_map>

namespace tdsim {

std::vector<std::string> validate_assignment(const ScenarioRuntime& sc,
                                             const StaticAssignment& assignment) {
    std::vector<std::string> out;
    if (assignment.tile_of_task.size() < sc.tasks.size()) {
        out.emplace_back("static assignment does not cover every task");
        return out;
    }
    for (const auto& t : sc.tasks) {
        const TileId tile = assignment.tile_of_task[t.def.id];
        const bool exists = std::any_of(sc.tiles.begin(), sc.tiles.end(),
                                        [&](const Tile& x) { return x.id == tile; });
        if (!exists)
            out.push_back("task '" + t.def.name + "' assigned to unknown tile " +
                          std::to_string(tile));
    }
    // Pessimistic reservation must fit for high-criticality tasks.
    for (const auto& tile : sc.tiles) {
        long double util = 0.0L;
        for (const auto& t : sc.tasks) {
            if (t.def.criticality != Criticality::high) continue;
            if (assignment.tile_of_task[t.def.id] != tile.id) continue;
            util += static_cast<long double>(t.def.wcet) / static_cast<long double>(t.def.period);
        }
        if (util > 1.0L + 1e-12L)
            out.push_back("tile " + std::to_string(tile.id) +
                          ": high-criticality utilization " + std::to_string((double)util) +
                          " exceeds 1");
    }
    return out;
}

namespace {

enum class Ev : std::uint8_t { job_complete, copy_done, job_arrival, sim_end };

int prio(Ev e) {
    switch (e) {
    case Ev::job_complete: return 0;
    case Ev::copy_done: return 2;
    case Ev::job_arrival: return 3;
    case Ev::sim_end: return 5;
    }
    return 6;
}

struct Event {
    Cycles time;
    Ev kind;
    std::uint64_t order;
    std::uint32_t a = 0;
};

struct EventAfter {
    bool operator()(const Event& x, const Event& y) const {
        if (x.time != y.time) return x.time > y.time;
        const int px = prio(x.kind), py = prio(y.kind);
        if (px != py) return px > py;
        return x.order > y.order;
    }
};

struct PendingJob {
    TaskId task;
    std::uint32_t seq;
    Cycles arrival;
    Cycles exec;
    Cycles deadline;
};

class StaticEngine {
public:
    StaticEngine(const ScenarioRuntime& sc, const StaticAssignment& assignment,
                 std::uint64_t seed, TraceSink& sink)
        : sc_(sc), assignment_(assignment), sink_(sink) {
        const auto sc_problems = sc.validate();
        if (!sc_problems.empty()) throw ScenarioError(sc_problems.front());
        const auto problems = validate_assignment(sc, assignment);
        if (!problems.empty()) throw AssignmentError(problems.front());

        tiles_ = sc.tiles;
        std::sort(tiles_.begin(), tiles_.end(),
                  [](const Tile& a, const Tile& b) { return a.id < b.id; });
        queues_.resize(tiles_.size());
        running_.resize(tiles_.size());

        for (const auto& t : sc.tasks)
            sources_.push_back({0, Xoshiro256StarStar(stream_seed(seed, t.def.id))});
    }

    EngineStats run() {
        for (const auto& t : sc_.tasks) {
            if (t.def.source_offset < sc_.horizon)
                push(t.def.source_offset, Ev::job_arrival, t.def.id);
        }
        push(sc_.horizon, Ev::sim_end);

        while (!calendar_.empty()) {
            const Event e = calendar_.top();
            calendar_.pop();
            ++stats_.events_processed;
            switch (e.kind) {
            case Ev::job_arrival: on_arrival(e); break;
            case Ev::copy_done: on_copy_done(e); break;
            case Ev::job_complete: on_complete(e); break;
            case Ev::sim_end:
                emit({e.time, TraceKind::sim_end, 0, 0, kNoTile, Criticality::low, 0});
                return stats_;
            }
        }
        return stats_;
    }

private:
    void push(Cycles time, Ev kind, std::uint32_t a = 0) {
        calendar_.push({time, kind, order_++, a});
    }
    void emit(const TraceRecord& r) { sink_.record(r); }

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

        PendingJob job;
        job.task = task;
        job.seq = seq;
        job.arrival = e.time;
        job.exec = spec.exec.sample(src.rng, seq);
        job.deadline = e.time + spec.def.deadline;

        emit({e.time, TraceKind::job_arrival, task, seq, kNoTile, Criticality::low, job.exec});

        const std::size_t idx = tile_index(assignment_.tile_of_task[task]);
        queues_[idx].push_back(job);
        if (!running_[idx]) start_next(idx, e.time);

        const Cycles next = e.time + spec.def.period;
        if (next < sc_.horizon) push(next, Ev::job_arrival, task);
    }

    void start_next(std::size_t idx, Cycles now) {
        auto& q = queues_[idx];
        while (!q.empty()) {
            const PendingJob job = q.front();
            const auto& def = sc_.tasks[job.task].def;
            const Cycles copy = sc_.timing.copy.cycles_for(def.input_buffer_bytes);
            // Low-criticality jobs that can no longer finish in time are
            // shed instead of executed late.
            if (def.criticality == Criticality::low && now + copy + def.wcet > job.deadline) {
                emit({now, TraceKind::shed, job.task, job.seq, tiles_[idx].id, Criticality::low, 0});
                q.pop_front();
                continue;
            }
            q.pop_front();
            running_[idx] = job;
            emit({now, TraceKind::copy_start, job.task, job.seq, tiles_[idx].id, Criticality::low,
                  def.input_buffer_bytes});
            push(now + copy, Ev::copy_done, static_cast<std::uint32_t>(idx));
            return;
        }
    }

    void on_copy_done(const Event& e) {
        const std::size_t idx = e.a;
        const PendingJob& job = *running_[idx];
        const auto& def = sc_.tasks[job.task].def;
        emit({e.time, TraceKind::copy_done, job.task, job.seq, tiles_[idx].id, Criticality::low,
              def.input_buffer_bytes});
        emit({e.time, TraceKind::exec_start, job.task, job.seq, tiles_[idx].id, Criticality::low, 0});
        push(e.time + job.exec, Ev::job_complete, static_cast<std::uint32_t>(idx));
    }

    void on_complete(const Event& e) {
        const std::size_t idx = e.a;
        const PendingJob job = *running_[idx];
        running_[idx].reset();
        const bool ontime = e.time <= job.deadline;
        emit({e.time, TraceKind::job_complete, job.task, job.seq, tiles_[idx].id, Criticality::low,
              ontime ? 1u : 0u});
        start_next(idx, e.time);
    }

    const ScenarioRuntime& sc_;
    const StaticAssignment& assignment_;
    TraceSink& sink_;

    std::vector<Tile> tiles_;
    std::vector<std::deque<PendingJob>> queues_;
    std::vector<std::optional<PendingJob>> running_;

    struct SourceState {
        std::uint32_t next_seq;
        Xoshiro256StarStar rng;
    };
    std::vector<SourceState> sources_;

    std::priority_queue<Event, std::vector<Event>, EventAfter> calendar_;
    std::uint64_t order_ = 0;
    EngineStats stats_;
};

} // namespace

EngineStats run_static(const ScenarioRuntime& sc, const StaticAssignment& assignment,
                       std::uint64_t seed, TraceSink& sink) {
    if (sc.tasks.empty()) {
        // Degenerate but well-defined: nothing to schedule.
        sink.record({sc.horizon, TraceKind::sim_end, 0, 0, kNoTile, Criticality::low, 0});
        return {};
    }
    StaticEngine engine(sc, assignment, seed, sink);
    return engine.run();
}

} // namespace tdsim
