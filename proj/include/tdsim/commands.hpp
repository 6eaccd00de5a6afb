// commands.hpp: the CLI subcommands as library functions.
#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "tdsim/engine.hpp"

namespace tdsim {

struct CommandOptions {
    std::filesystem::path scenario_path;
    std::uint64_t seed = 1;
    std::optional<double> horizon_ms;
    std::filesystem::path out_dir = "out";
    bool no_timestamp = false;
    bool write_trace = false;
    double hist_exec_width_ms = 0.5;
    double hist_loop_width_ms = 1e-4;
    unsigned sweep_runs = 30;
    bool sweep_serial = false;
    int threads = 0;
};

// Each returns a process exit status; diagnostics go to `err`.
int cmd_run(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_baseline(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_compare(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_calibrate(const CommandOptions& opts, std::ostream& out, std::ostream& err);

} // namespace tdsim
