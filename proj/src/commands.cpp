#include "tdsim/commands.hpp"

#include <cstdio>
#include <exception>
#include <functional>
#include <memory>

#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "tdsim/analysis.hpp"
#include "tdsim/baseline.hpp"
#include "tdsim/csv.hpp"
#include "tdsim/scenario.hpp"
#include "tdsim/sweep.hpp"

namespace tdsim {

namespace {

ScenarioRuntime load_with_overrides(const CommandOptions& opts) {
    ScenarioRuntime sc = load_scenario(opts.scenario_path);
    if (opts.horizon_ms) sc.horizon = ms_to_cycles(*opts.horizon_ms, sc.clock_ghz);
    return sc;
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

void write_histograms(const RunSummary& summary, const ScenarioRuntime& sc,
                      const CommandOptions& opts) {
    const bool ts = !opts.no_timestamp;
    write_file(opts.out_dir / "hist_loop_time.csv",
               hist_csv(histogram(summary, HistQuantity::loop_time, opts.hist_loop_width_ms),
                        HistQuantity::loop_time, ts));
    write_file(opts.out_dir / "hist_copy_time.csv",
               hist_csv(histogram(summary, HistQuantity::copy_time, 0.0), HistQuantity::copy_time,
                        ts));
    for (const auto& t : sc.tasks) {
        write_file(opts.out_dir / ("hist_exec_" + sanitize(t.def.name) + ".csv"),
                   hist_csv(histogram(summary, HistQuantity::exec_time, opts.hist_exec_width_ms,
                                      t.def.id),
                            HistQuantity::exec_time, ts));
    }
}

int guarded(std::ostream& err, const char* what, const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        err << what << ": " << e.what() << "\n";
        return 1;
    }
}

std::string fmt7(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.7f", v);
    return buf;
}

} // namespace

int cmd_run(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, "run", [&] {
        const ScenarioRuntime sc = load_with_overrides(opts);
        std::filesystem::create_directories(opts.out_dir);

        UsageAccumulator acc(sc);
        MultiSink sinks;
        sinks.add(&acc);
        std::unique_ptr<CsvTraceWriter> trace;
        if (opts.write_trace) {
            trace = std::make_unique<CsvTraceWriter>(opts.out_dir / "trace.csv", sc,
                                                     !opts.no_timestamp);
            sinks.add(trace.get());
        }
        run_dynamic(sc, opts.seed, sinks);
        const RunSummary summary = acc.finalize();

        write_file(opts.out_dir / "usage.csv", usage_csv(summary, sc, !opts.no_timestamp));
        write_file(opts.out_dir / "run.json",
                   summary_json(summary, sc, opts.seed, !opts.no_timestamp));
        write_histograms(summary, sc, opts);

        out << "dynamic run: " << summary.counts(Criticality::high).completions << " high and "
            << summary.counts(Criticality::low).completions << " low completions, "
            << summary.counts(Criticality::high).misses() << " high deadline misses\n";
        return 0;
    });
}

int cmd_baseline(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, "baseline", [&] {
        const ScenarioRuntime sc = load_with_overrides(opts);
        if (!sc.static_assignment) {
            err << "baseline: scenario has no static_assignment section\n";
            return 1;
        }
        std::filesystem::create_directories(opts.out_dir);

        UsageAccumulator acc(sc);
        MultiSink sinks;
        sinks.add(&acc);
        std::unique_ptr<CsvTraceWriter> trace;
        if (opts.write_trace) {
            trace = std::make_unique<CsvTraceWriter>(opts.out_dir / "trace.csv", sc,
                                                     !opts.no_timestamp);
            sinks.add(trace.get());
        }
        run_static(sc, *sc.static_assignment, opts.seed, sinks);
        const RunSummary summary = acc.finalize();

        write_file(opts.out_dir / "usage.csv", usage_csv(summary, sc, !opts.no_timestamp));
        write_file(opts.out_dir / "baseline.json",
                   summary_json(summary, sc, opts.seed, !opts.no_timestamp));

        out << "static run: " << summary.counts(Criticality::high).completions << " high and "
            << summary.counts(Criticality::low).completions << " low completions, "
            << summary.counts(Criticality::high).misses() << " high deadline misses\n";
        return 0;
    });
}

int cmd_compare(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, "compare", [&] {
        const ScenarioRuntime sc = load_with_overrides(opts);
        if (!sc.static_assignment) {
            err << "compare: scenario has no static_assignment section\n";
            return 1;
        }
        std::filesystem::create_directories(opts.out_dir);
        const bool ts = !opts.no_timestamp;

        UsageAccumulator dyn_acc(sc);
        {
            MultiSink sinks;
            sinks.add(&dyn_acc);
            std::unique_ptr<CsvTraceWriter> trace;
            if (opts.write_trace) {
                trace = std::make_unique<CsvTraceWriter>(opts.out_dir / "trace.csv", sc, ts);
                sinks.add(trace.get());
            }
            run_dynamic(sc, opts.seed, sinks);
        }
        const RunSummary dyn = dyn_acc.finalize();

        UsageAccumulator stat_acc(sc);
        {
            MultiSink sinks;
            sinks.add(&stat_acc);
            std::unique_ptr<CsvTraceWriter> trace;
            if (opts.write_trace) {
                trace = std::make_unique<CsvTraceWriter>(opts.out_dir / "trace_static.csv", sc, ts);
                sinks.add(trace.get());
            }
            run_static(sc, *sc.static_assignment, opts.seed, sinks);
        }
        const RunSummary stat = stat_acc.finalize();

        ComparisonContext ctx;
        ctx.o_switch = sc.o_switch_effective();
        const TaskDef* low = sc.worst_low_task();
        ctx.eet_low = low ? low->eet : 0;
        const ComparisonReport report = compare(dyn, stat, ctx);

        write_file(opts.out_dir / "usage.csv", usage_csv(dyn, sc, ts));
        write_file(opts.out_dir / "usage_static.csv", usage_csv(stat, sc, ts));
        write_file(opts.out_dir / "comparison.json",
                   comparison_json(report, dyn, stat, sc, opts.seed, ts));
        write_histograms(dyn, sc, opts);

        out << "idle_reduction_pct=" << report.idle_reduction_pct
            << " low_throughput_ratio=" << report.low_throughput_ratio
            << " high_misses_dynamic=" << report.high_misses_dynamic
            << " high_misses_static=" << report.high_misses_static << "\n";
        return 0;
    });
}

int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, "sweep", [&] {
        const ScenarioRuntime sc = load_with_overrides(opts);
#ifdef _OPENMP
        if (opts.threads > 0) omp_set_num_threads(opts.threads);
#endif
        const auto results = opts.sweep_serial
                                 ? run_sweep_serial(sc, opts.seed, opts.sweep_runs)
                                 : run_sweep_parallel(sc, opts.seed, opts.sweep_runs);
        const SweepAggregate agg = aggregate(results);

        std::filesystem::create_directories(opts.out_dir);
        nlohmann::json doc;
        doc["scenario"] = sc.name;
        doc["master_seed"] = opts.seed;
        doc["runs"] = agg.runs;
        auto stat_json = [](const Stat& s) {
            return nlohmann::json{{"mean", s.mean}, {"min", s.min}, {"max", s.max}};
        };
        doc["idle_reduction_pct"] = stat_json(agg.idle_reduction_pct);
        doc["low_throughput_ratio"] = stat_json(agg.low_throughput_ratio);
        doc["overhead_fraction"] = stat_json(agg.overhead_fraction);
        doc["o_switch_vs_horizon_pct"] = stat_json(agg.o_switch_vs_horizon_pct);
        doc["switch_overhead_vs_horizon_pct"] = stat_json(agg.switch_overhead_vs_horizon_pct);
        doc["high_misses_dynamic_total"] = agg.high_misses_dynamic_total;
        doc["high_misses_static_total"] = agg.high_misses_static_total;
        doc["runs_with_dynamic_misses"] = agg.runs_with_dynamic_misses;
        doc["high_jobs_total"] = agg.high_jobs_total;
        doc["high_exceeding_total"] = agg.high_exceeding_total;
        nlohmann::json per_run = nlohmann::json::array();
        for (const auto& r : results) {
            per_run.push_back({{"seed", r.seed},
                               {"idle_reduction_pct", r.report.idle_reduction_pct},
                               {"low_throughput_ratio", r.report.low_throughput_ratio},
                               {"high_misses_dynamic", r.report.high_misses_dynamic},
                               {"high_misses_static", r.report.high_misses_static},
                               {"anomalies", r.anomalies}});
        }
        doc["per_run"] = per_run;
        write_file(opts.out_dir / "sweep.json", doc.dump(2) + "\n");

        out << "sweep: runs=" << agg.runs
            << " mean_idle_reduction_pct=" << agg.idle_reduction_pct.mean
            << " mean_low_throughput_ratio=" << agg.low_throughput_ratio.mean
            << " high_misses_dynamic_total=" << agg.high_misses_dynamic_total << "\n";
        return 0;
    });
}

int cmd_calibrate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, "calibrate", [&] {
        const ScenarioRuntime sc = load_with_overrides(opts);
        TimingParams formula = sc.timing;
        formula.o_switch_override.reset();

        const auto paper = switch_overhead(formula, sc.max_buffer_bytes(), nullptr);
        const TaskDef* low = sc.worst_low_task();
        const auto full = switch_overhead(formula, sc.max_buffer_bytes(), low);

        out << "max_buffer_bytes=" << sc.max_buffer_bytes() << "\n";
        out << "o_switch_paper_ms=" << fmt7(paper.ms) << "\n";
        out << "o_switch_paper_cycles=" << paper.cycles << "\n";
        out << "o_switch_full_ms=" << fmt7(full.ms) << "\n";
        out << "o_switch_full_cycles=" << full.cycles << "\n";
        out << "o_switch_full_worst_low=" << (low ? low->name : "(none)") << "\n";
        if (sc.timing.o_switch_override)
            out << "o_switch_override_cycles=" << *sc.timing.o_switch_override << "\n";
        out << "o_switch_effective_cycles=" << sc.o_switch_effective() << "\n";
        out << "dispatch_margin_cycles=" << sc.timing.dispatch_margin_cycles() << "\n";
        return 0;
    });
}

} // namespace tdsim
