// Command line front end: loads a sweep config, runs the requested sweep or
// the joint optimization, and writes CSV/JSON. Exit codes: 0 success,
// 1 validation failure, 2 I/O failure.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "risbeam/errors.hpp"
#include "risbeam/experiment.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path = "-";
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    bool trials_set = false;
    int threads = -1;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "path to the sweep config file")->required();
    cmd->add_option("--out", args.out_path, "output path ('-' = stdout)");
    cmd->add_option("--format", args.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", args.seed, "override the config seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--trials", args.trials, "override the trial count")
        ->each([&args](const std::string&) { args.trials_set = true; });
    cmd->add_option("--threads", args.threads,
                    "worker threads (0 = all available; never affects output bytes)");
}

risbeam::SweepSpec load_spec(const CommonArgs& args, risbeam::SweepSpec::Kind kind) {
    risbeam::SweepSpec spec = risbeam::load_sweep_config(args.config_path);
    spec.kind = kind;
    if (args.seed_set) spec.scenario.seed = args.seed;
    if (args.trials_set) spec.trials = args.trials;
    if (args.threads >= 0) spec.threads = args.threads;
    return spec;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw risbeam::IoError("cannot open output file: " + out_path);
    out << text;
    out.flush();
    if (!out) throw risbeam::IoError("write failed: " + out_path);
}

risbeam::OutputFormat format_of(const CommonArgs& args) {
    return args.format == "json" ? risbeam::OutputFormat::json : risbeam::OutputFormat::csv;
}

int run_validate(const std::string& config_path) {
    const risbeam::SweepSpec spec = risbeam::load_sweep_config(config_path);
    const auto errs = risbeam::validate(spec);
    if (errs.empty()) {
        std::cout << "ok\n";
        return 0;
    }
    for (const std::string& code : errs) std::cout << code << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted downlink simulator with 3D base-station beamforming"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* sweep_tilt = app.add_subcommand("sweep-tilt", "SNR versus BS tilt angle");
    CLI::App* sweep_n = app.add_subcommand("sweep-n", "SNR versus RIS element count");
    CLI::App* optimize = app.add_subcommand("optimize", "joint angle and phase optimization");
    CLI::App* validate_cfg = app.add_subcommand("validate-config", "check a config file");
    add_common_options(sweep_tilt, args);
    add_common_options(sweep_n, args);
    add_common_options(optimize, args);
    validate_cfg->add_option("--config", args.config_path, "path to the config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (validate_cfg->parsed()) {
            return run_validate(args.config_path);
        }
        if (sweep_tilt->parsed()) {
            const auto spec = load_spec(args, risbeam::SweepSpec::Kind::tilt);
            write_output(risbeam::to_string(risbeam::run_tilt_sweep(spec), format_of(args)),
                         args.out_path);
            return 0;
        }
        if (sweep_n->parsed()) {
            const auto spec = load_spec(args, risbeam::SweepSpec::Kind::n_elements);
            write_output(risbeam::to_string(risbeam::run_n_sweep(spec), format_of(args)),
                         args.out_path);
            return 0;
        }
        const auto spec = load_spec(args, risbeam::SweepSpec::Kind::full_grid);
        const auto report = risbeam::run_joint_optimization(spec);
        write_output(risbeam::joint_report_json(report, spec), args.out_path);
        return 0;
    } catch (const risbeam::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const risbeam::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
