// csv.hpp: plot-ready CSV and JSON report writers.
//
// Column contracts: usage stacks are `Tile,<task names...>,Free`;
// loop/runtime histograms are `right,count`; copy times are `Size,Max`.
// Durations are written in milliseconds with six decimal places.
#pragma once

#include <filesystem>
#include <string>

#include "tdsim/analysis.hpp"
#include "tdsim/engine.hpp"

namespace tdsim {

std::string format_ms(double ms);

std::string usage_csv(const RunSummary& summary, const ScenarioRuntime& sc, bool timestamp);
std::string hist_csv(const std::vector<HistRow>& rows, HistQuantity q, bool timestamp);
std::string comparison_json(const ComparisonReport& report, const RunSummary& dynamic_run,
                            const RunSummary& static_run, const ScenarioRuntime& sc,
                            std::uint64_t seed, bool timestamp);
std::string summary_json(const RunSummary& summary, const ScenarioRuntime& sc, std::uint64_t seed,
                         bool timestamp);

void write_file(const std::filesystem::path& path, const std::string& content);

// Streaming trace sink writing `cycles,time_ms,event,task,seq,tile,mode` rows.
class CsvTraceWriter : public TraceSink {
public:
    CsvTraceWriter(const std::filesystem::path& path, const ScenarioRuntime& sc, bool timestamp);
    ~CsvTraceWriter() override;
    void record(const TraceRecord& r) override;

private:
    struct Impl;
    Impl* impl_;
};

} // namespace tdsim
