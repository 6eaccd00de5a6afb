#include "tdsim/csv.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tdsim {

namespace {

std::string timestamp_line() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string("# generated ") + buf + "\n";
}

} // namespace

std::string format_ms(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", ms);
    return buf;
}

std::string usage_csv(const RunSummary& summary, const ScenarioRuntime& sc, bool timestamp) {
    std::ostringstream os;
    if (timestamp) os << timestamp_line();
    os << "Tile";
    for (const auto& t : sc.tasks) os << "," << t.def.name;
    os << ",Free\n";
    const double ghz = summary.clock_ghz;
    for (const auto& tile : summary.tiles) {
        os << tile.id;
        Cycles accounted = 0;
        for (const auto& t : sc.tasks) {
            const auto it = tile.busy_by_task.find(t.def.id);
            const Cycles busy = it == tile.busy_by_task.end() ? 0 : it->second;
            accounted += busy;
            os << "," << format_ms(cycles_to_ms(busy, ghz));
        }
        // Free absorbs idle time plus the (small) per-job overhead so the
        // stacked columns always sum to the horizon.
        const Cycles free_time = summary.horizon - accounted;
        os << "," << format_ms(cycles_to_ms(free_time, ghz)) << "\n";
    }
    return os.str();
}

std::string hist_csv(const std::vector<HistRow>& rows, HistQuantity q, bool timestamp) {
    std::ostringstream os;
    if (timestamp) os << timestamp_line();
    if (q == HistQuantity::copy_time) {
        os << "Size,Max\n";
        for (const auto& r : rows)
            os << static_cast<std::uint64_t>(r.right_ms) << "," << format_ms(r.max_ms) << "\n";
    } else {
        os << "right,count\n";
        for (const auto& r : rows) os << format_ms(r.right_ms) << "," << r.count << "\n";
    }
    return os.str();
}

namespace {

nlohmann::json counts_json(const CritCounts& c) {
    return {
        {"arrivals", c.arrivals},
        {"eligible", c.eligible},
        {"completions", c.completions},
        {"ontime", c.ontime},
        {"late", c.late},
        {"queue_drops", c.queue_drops},
        {"sheds", c.sheds},
        {"deadline_misses", c.misses()},
    };
}

nlohmann::json summary_block(const RunSummary& s) {
    nlohmann::json tiles = nlohmann::json::array();
    for (const auto& t : s.tiles) {
        nlohmann::json busy_by_task;
        for (const auto& [task, busy] : t.busy_by_task)
            busy_by_task[std::to_string(task)] = cycles_to_ms(busy, s.clock_ghz);
        tiles.push_back({
            {"tile", t.id},
            {"busy_ms", cycles_to_ms(t.busy, s.clock_ghz)},
            {"overhead_ms", cycles_to_ms(t.overhead, s.clock_ghz)},
            {"idle_ms", cycles_to_ms(t.idle(s.horizon), s.clock_ghz)},
            {"busy_cycles", t.busy},
            {"overhead_cycles", t.overhead},
            {"idle_cycles", t.idle(s.horizon)},
            {"busy_by_task_ms", busy_by_task},
        });
    }
    return {
        {"tiles", tiles},
        {"high", counts_json(s.counts(Criticality::high))},
        {"low", counts_json(s.counts(Criticality::low))},
        {"mode_changes", s.mode_changes},
        {"high_mode_time_ms", cycles_to_ms(s.high_mode_time, s.clock_ghz)},
        {"overhead_copies_ms", cycles_to_ms(s.overhead_copies, s.clock_ghz)},
        {"overhead_msgs_ms", cycles_to_ms(s.overhead_msgs, s.clock_ghz)},
        {"overhead_start_ms", cycles_to_ms(s.overhead_start, s.clock_ghz)},
        {"switch_attributed_overhead_ms", cycles_to_ms(s.switch_attributed_overhead, s.clock_ghz)},
        {"staging_copy_ms", cycles_to_ms(s.staging_copy_time, s.clock_ghz)},
        {"loop_iterations", s.loop_iterations},
        {"nonempty_iterations", s.nonempty_iterations},
        {"anomalies", s.anomalies},
        {"total_idle_ms", cycles_to_ms(s.total_idle(), s.clock_ghz)},
        {"total_busy_ms", cycles_to_ms(s.total_busy(), s.clock_ghz)},
    };
}

} // namespace

std::string summary_json(const RunSummary& summary, const ScenarioRuntime& sc, std::uint64_t seed,
                         bool timestamp) {
    nlohmann::json doc;
    doc["scenario"] = sc.name;
    doc["seed"] = seed;
    doc["horizon_ms"] = cycles_to_ms(summary.horizon, summary.clock_ghz);
    doc["run"] = summary_block(summary);
    if (timestamp) doc["generated"] = timestamp_line().substr(12);
    return doc.dump(2) + "\n";
}

std::string comparison_json(const ComparisonReport& report, const RunSummary& dynamic_run,
                            const RunSummary& static_run, const ScenarioRuntime& sc,
                            std::uint64_t seed, bool timestamp) {
    nlohmann::json doc;
    doc["scenario"] = sc.name;
    doc["seed"] = seed;
    doc["horizon_ms"] = cycles_to_ms(dynamic_run.horizon, dynamic_run.clock_ghz);
    doc["dynamic"] = summary_block(dynamic_run);
    doc["static"] = summary_block(static_run);
    doc["comparison"] = {
        {"idle_reduction_pct", report.idle_reduction_pct},
        {"low_throughput_ratio", report.low_throughput_ratio},
        {"high_deadline_misses",
         {{"static", report.high_misses_static}, {"dynamic", report.high_misses_dynamic}}},
        {"overhead_fraction", report.overhead_fraction},
        {"o_switch_vs_teet_low_pct", report.o_switch_vs_teet_low_pct},
        {"o_switch_vs_horizon_pct", report.o_switch_vs_horizon_pct},
        {"switch_overhead_vs_horizon_pct", report.switch_overhead_vs_horizon_pct},
        {"low_ontime", {{"static", report.low_ontime_static}, {"dynamic", report.low_ontime_dynamic}}},
        {"idle_ms", {{"static", report.idle_static_ms}, {"dynamic", report.idle_dynamic_ms}}},
    };
    if (timestamp) doc["generated"] = timestamp_line().substr(12);
    return doc.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

struct CsvTraceWriter::Impl {
    std::ofstream out;
    double ghz;
};

CsvTraceWriter::CsvTraceWriter(const std::filesystem::path& path, const ScenarioRuntime& sc,
                               bool timestamp)
    : impl_(new Impl{std::ofstream(path, std::ios::binary), sc.clock_ghz}) {
    if (!impl_->out) throw std::runtime_error("cannot write " + path.string());
    if (timestamp) impl_->out << timestamp_line();
    impl_->out << "cycles,time_ms,event,task,seq,tile,mode\n";
}

CsvTraceWriter::~CsvTraceWriter() { delete impl_; }

void CsvTraceWriter::record(const TraceRecord& r) {
    impl_->out << r.time << "," << format_ms(cycles_to_ms(r.time, impl_->ghz)) << ","
               << to_string(r.kind) << "," << r.task << "," << r.seq << "," << r.tile << ","
               << to_string(r.mode) << "\n";
}

} // namespace tdsim
