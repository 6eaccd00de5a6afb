// tdsim: mixed-criticality task-dispatch simulator for non-preemptive
// tile arrays.
#include <iostream>

#include <CLI11.hpp>

#include "tdsim/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event simulator of a dynamic task-dispatching "
                 "infrastructure for mixed-criticality workloads on a "
                 "non-preemptive tile array"};
    app.require_subcommand(1);

    tdsim::CommandOptions opts;
    std::string scenario;
    std::string out_dir = "out";
    double horizon_ms = -1.0;

    auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--scenario", scenario, "Scenario file (JSON)")->required();
        cmd->add_option("--seed", opts.seed, "Seed (sweep: master seed)");
        cmd->add_option("--horizon", horizon_ms, "Override the horizon (ms)");
        if (needs_out) {
            cmd->add_option("--out", out_dir, "Output directory");
            cmd->add_flag("--no-timestamp", opts.no_timestamp,
                          "Omit the timestamp header from output files");
            cmd->add_flag("--trace", opts.write_trace, "Write the full event trace CSV");
            cmd->add_option("--hist-exec-width", opts.hist_exec_width_ms,
                            "Execution-time histogram bin width (ms)");
            cmd->add_option("--hist-loop-width", opts.hist_loop_width_ms,
                            "Loop-time histogram bin width (ms)");
        }
    };

    auto* run = app.add_subcommand("run", "One dynamic simulation");
    add_common(run, true);
    auto* baseline = app.add_subcommand("baseline", "One static-mapping simulation");
    add_common(baseline, true);
    auto* comp = app.add_subcommand("compare", "Paired dynamic/static comparison (shared seed)");
    add_common(comp, true);
    auto* sweep = app.add_subcommand("sweep", "Seed sweep with aggregate statistics");
    add_common(sweep, true);
    sweep->add_option("--runs", opts.sweep_runs, "Number of seeds");
    sweep->add_flag("--serial", opts.sweep_serial, "Use the serial reference sweep");
    sweep->add_option("--threads", opts.threads, "OpenMP thread count (0 = default)");
    auto* calibrate = app.add_subcommand("calibrate", "Print the derived switching overhead");
    add_common(calibrate, false);

    CLI11_PARSE(app, argc, argv);

    opts.scenario_path = scenario;
    opts.out_dir = out_dir;
    if (horizon_ms >= 0.0) opts.horizon_ms = horizon_ms;

    if (run->parsed()) return tdsim::cmd_run(opts, std::cout, std::cerr);
    if (baseline->parsed()) return tdsim::cmd_baseline(opts, std::cout, std::cerr);
    if (comp->parsed()) return tdsim::cmd_compare(opts, std::cout, std::cerr);
    if (sweep->parsed()) return tdsim::cmd_sweep(opts, std::cout, std::cerr);
    if (calibrate->parsed()) return tdsim::cmd_calibrate(opts, std::cout, std::cerr);
    return 1;
}
