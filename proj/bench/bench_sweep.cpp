// Compares the serial reference sweep against the OpenMP-parallel sweep
// on a reduced-horizon copy of a scenario and checks they agree.
#include <chrono>
#include <iostream>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "tdsim/scenario.hpp"
#include "tdsim/sweep.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_results(const std::vector<tdsim::SweepRunResult>& a,
                  const std::vector<tdsim::SweepRunResult>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].seed != b[i].seed) return false;
        if (a[i].report.idle_reduction_pct != b[i].report.idle_reduction_pct) return false;
        if (a[i].report.low_throughput_ratio != b[i].report.low_throughput_ratio) return false;
        if (a[i].report.high_misses_dynamic != b[i].report.high_misses_dynamic) return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs OpenMP sweep benchmark"};
    std::string scenario = "scenarios/casestudy.scenario";
    double horizon_ms = 900.0;
    unsigned runs = 8;
    std::uint64_t master_seed = 1;
    app.add_option("--scenario", scenario, "Scenario file");
    app.add_option("--horizon", horizon_ms, "Horizon per run (ms)");
    app.add_option("--runs", runs, "Seeds per sweep");
    app.add_option("--seed", master_seed, "Master seed");
    CLI11_PARSE(app, argc, argv);

    tdsim::ScenarioRuntime sc = tdsim::load_scenario(scenario);
    sc.horizon = tdsim::ms_to_cycles(horizon_ms, sc.clock_ghz);

    const auto t_serial = std::chrono::steady_clock::now();
    const auto serial = tdsim::run_sweep_serial(sc, master_seed, runs);
    const double serial_s = seconds_since(t_serial);

    const auto t_par = std::chrono::steady_clock::now();
    const auto parallel = tdsim::run_sweep_parallel(sc, master_seed, runs);
    const double par_s = seconds_since(t_par);

    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
#pragma omp single
    threads = omp_get_num_threads();
#endif

    std::cout << "runs=" << runs << " horizon_ms=" << horizon_ms << " threads=" << threads << "\n"
              << "serial_s=" << serial_s << "\n"
              << "parallel_s=" << par_s << "\n"
              << "speedup=" << (par_s > 0 ? serial_s / par_s : 0.0) << "\n";

    if (!same_results(serial, parallel)) {
        std::cerr << "FAIL: serial and parallel sweeps disagree\n";
        return 1;
    }
    std::cout << "results identical\n";
    return 0;
}
