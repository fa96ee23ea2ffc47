#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "risbeam/optimizer.hpp"

namespace risbeam {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kCsvHeader =
    "theta_deg,phi_deg,n_elements,strategy,mean_snr_db,std_snr_db,trials,seed";

// One sweep: scenario, what to iterate, which phase strategies to compare,
// and how many Monte Carlo trials to average over.
struct SweepSpec {
    enum class Kind { tilt, n_elements, full_grid };

    Scenario scenario;
    Kind kind = Kind::tilt;
    std::vector<AngleDeg> phi_list{AngleDeg{10.0}, AngleDeg{30.0}, AngleDeg{50.0}};
    std::vector<int> n_list{8, 16, 32, 64}; // n_elements sweeps only
    std::vector<PhaseStrategy::Kind> strategies{PhaseStrategy::Kind::optimal,
                                                PhaseStrategy::Kind::random};
    int trials = 500;
    AngleGrid grid;
    PhaseStrategy ascent;      // restarts / tol / max_sweeps for the optimal strategy
    ChannelModel channel;      // iid by default; fixed channels for golden runs
    std::string channel_file;  // provenance echo when channel came from a file
    int threads = 0;           // 0 = all available; 1 = serial reference path
    bool suppress_direct = false;    // diagnostics: force alpha_d = 0
    bool suppress_reflected = false; // diagnostics: force alpha_r = 0
};

const char* sweep_kind_name(SweepSpec::Kind kind);
SweepSpec::Kind sweep_kind_from_name(const std::string& name); // throws ConfigError

// Violated invariant codes for the sweep spec (includes the scenario's).
std::vector<std::string> validate(const SweepSpec& spec);

struct SweepRow {
    double theta_deg = 0.0;
    double phi_deg = 0.0;
    int n_elements = 0;
    PhaseStrategy::Kind strategy = PhaseStrategy::Kind::optimal;
    double mean_snr_db = 0.0; // -inf encoded as "-inf" at emit time
    double std_snr_db = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;   // sorted by (phi, theta, n, strategy)
    std::string config_echo;      // canonical serialized spec
    std::uint64_t config_hash = 0;
};

// Received SNR versus BS tilt, for each azimuth in phi_list and each
// strategy, averaged over `trials` seeded channel realizations. The same
// per-trial channels are shared across all grid points and strategies.
SweepResult run_tilt_sweep(const SweepSpec& spec);

// As the tilt sweep but iterating n_list: one curve per element count, with
// n = 0 emitted as the no_ris baseline. Per trial, the channels for smaller
// N are prefixes of the largest draw, so curves differ only through N.
SweepResult run_n_sweep(const SweepSpec& spec);

// Serial reference engines: same math, plain loops, no OpenMP. Kept for
// testing; output is byte-identical to the parallel paths.
namespace reference {
SweepResult run_tilt_sweep(const SweepSpec& spec);
SweepResult run_n_sweep(const SweepSpec& spec);
} // namespace reference

struct JointOptimizationReport {
    AngleDeg theta_modal;
    AngleDeg phi_modal;
    int modal_count = 0;
    int trials = 0;
    double mean_snr_db = 0.0;
    double std_snr_db = 0.0;
    std::vector<OptimizationResult> per_trial;
};

// Full joint search (grid over steering angles, phases per the strategy)
// per trial; reports the modal argmax angles and the mean optimal SNR.
JointOptimizationReport run_joint_optimization(const SweepSpec& spec);
std::string joint_report_json(const JointOptimizationReport& report, const SweepSpec& spec);

enum class OutputFormat { csv, json };

void emit_csv(const SweepResult& result, std::ostream& out);
void emit_json(const SweepResult& result, std::ostream& out);
std::string to_string(const SweepResult& result, OutputFormat format);
// Writes to path; throws IoError with the path on failure.
void emit(const SweepResult& result, OutputFormat format, const std::filesystem::path& path);

// Canonical flat key = value form of the whole spec (scenario keys plus the
// sweep keys); hashing this text yields config_hash.
std::string serialize_config(const SweepSpec& spec);
// Strict parse: unknown keys are rejected. A channel_file key switches the
// channel model to fixed and loads the file (relative to the config file for
// load_sweep_config, relative to the working directory otherwise).
SweepSpec parse_sweep_config(const std::string& text);
SweepSpec load_sweep_config(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);

} // namespace risbeam
