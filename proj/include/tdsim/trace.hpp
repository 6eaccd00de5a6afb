// trace.hpp: timestamped event records and streaming sinks.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdsim/model.hpp"
#include "tdsim/time_base.hpp"

namespace tdsim {

enum class TraceKind : std::uint8_t {
    job_arrival,        // aux = sampled execution time
    staging_copy_start, // aux = bytes
    staging_copy_done,  // aux = bytes
    enqueued,
    queue_drop,          // queue overflow; job dropped
    shed,                // low job dropped: cannot finish by its deadline
    arrival_msg,         // notification delivered to the dispatcher
    dispatched,          // tile chosen
    copy_start,          // tile-local payload copy; aux = bytes
    copy_done,           // aux = bytes
    start_msg,           // start notification delivered at the tile
    exec_start,
    job_complete,        // aux = 1 when completed by its deadline
    complete_msg,        // completion notification delivered to the dispatcher
    mode_change,         // aux = new mode
    bank_acquired,       // aux = bank id
    bank_released,       // aux = bank id
    anomaly,             // aux = anomaly code
    sim_end,
};

const char* to_string(TraceKind k);

enum class AnomalyCode : std::uint64_t {
    channel_full = 1,
    unknown_job = 2,
};

struct TraceRecord {
    Cycles time = 0;
    TraceKind kind = TraceKind::sim_end;
    TaskId task = 0;
    std::uint32_t seq = 0;
    TileId tile = kNoTile;
    Criticality mode = Criticality::low;
    std::uint64_t aux = 0;
};

// One sink instance consumes records from exactly one run.
class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void record(const TraceRecord& r) = 0;
    // Dispatcher loop iterations are reported out of band; flags identify
    // which algorithm steps did work (0 = empty iteration).
    virtual void loop_sample(Cycles duration, std::uint8_t flags) {
        (void)duration;
        (void)flags;
    }
};

class VectorTrace : public TraceSink {
public:
    void record(const TraceRecord& r) override { records.push_back(r); }
    void loop_sample(Cycles duration, std::uint8_t flags) override {
        loop_samples.push_back({duration, flags});
    }

    struct LoopSample {
        Cycles duration;
        std::uint8_t flags;
    };

    std::vector<TraceRecord> records;
    std::vector<LoopSample> loop_samples;
};

class MultiSink : public TraceSink {
public:
    void add(TraceSink* s) { sinks_.push_back(s); }
    void record(const TraceRecord& r) override {
        for (auto* s : sinks_) s->record(r);
    }
    void loop_sample(Cycles duration, std::uint8_t flags) override {
        for (auto* s : sinks_) s->loop_sample(duration, flags);
    }

private:
    std::vector<TraceSink*> sinks_;
};

class NullSink : public TraceSink {
public:
    void record(const TraceRecord&) override {}
};

} // namespace tdsim
