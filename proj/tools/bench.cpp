// Times the serial reference engine against the OpenMP engine on the same
// tilt sweep and checks that both produce byte-identical CSV.

#include <omp.h>

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "risbeam/experiment.hpp"

namespace {

risbeam::SweepSpec bench_spec(int trials, double theta_step, int threads) {
    risbeam::SweepSpec spec;
    spec.kind = risbeam::SweepSpec::Kind::tilt;
    spec.phi_list = {risbeam::AngleDeg{50.0}};
    spec.strategies = {risbeam::PhaseStrategy::Kind::optimal, risbeam::PhaseStrategy::Kind::random};
    spec.trials = trials;
    spec.grid.theta_step = risbeam::AngleDeg{theta_step};
    spec.threads = threads;
    return spec;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP sweep engine benchmark"};
    int trials = 50;
    double theta_step = 5.0;
    int threads = 0;
    std::string config_path;
    app.add_option("--trials", trials, "Monte Carlo trials per cell");
    app.add_option("--theta-step", theta_step, "tilt grid step in degrees");
    app.add_option("--threads", threads, "threads for the parallel engine (0 = all)");
    app.add_option("--config", config_path, "optional sweep config to benchmark instead");
    CLI11_PARSE(app, argc, argv);

    risbeam::SweepSpec spec;
    if (config_path.empty()) {
        spec = bench_spec(trials, theta_step, threads);
    } else {
        spec = risbeam::load_sweep_config(config_path);
        spec.kind = risbeam::SweepSpec::Kind::tilt;
        spec.threads = threads;
    }

    const double t0 = omp_get_wtime();
    const risbeam::SweepResult serial = risbeam::reference::run_tilt_sweep(spec);
    const double t1 = omp_get_wtime();
    risbeam::SweepSpec par = spec;
    if (par.threads == 1) par.threads = 0;
    const risbeam::SweepResult parallel = risbeam::run_tilt_sweep(par);
    const double t2 = omp_get_wtime();

    const std::string csv_serial = risbeam::to_string(serial, risbeam::OutputFormat::csv);
    const std::string csv_parallel = risbeam::to_string(parallel, risbeam::OutputFormat::csv);
    const bool identical = csv_serial == csv_parallel;

    const double serial_s = t1 - t0;
    const double parallel_s = t2 - t1;
    std::cout << "rows:           " << serial.rows.size() << "\n";
    std::cout << "trials:         " << spec.trials << "\n";
    std::cout << "threads:        " << (par.threads <= 0 ? omp_get_max_threads() : par.threads)
              << "\n";
    std::cout << "serial:         " << serial_s << " s\n";
    std::cout << "openmp:         " << parallel_s << " s\n";
    std::cout << "speedup:        " << (parallel_s > 0 ? serial_s / parallel_s : 0.0) << "x\n";
    std::cout << "output match:   " << (identical ? "yes" : "NO") << "\n";
    return identical ? 0 : 1;
}
