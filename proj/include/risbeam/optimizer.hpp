#pragma once

#include <string>
#include <vector>

#include "risbeam/link.hpp"

namespace risbeam {

// How phases are chosen at an evaluated steering point. `optimal` runs the
// coordinate ascent below; the others are the comparison baselines.
struct PhaseStrategy {
    enum class Kind { optimal, random, zero_phase, no_ris };
    Kind kind = Kind::optimal;
    int restarts = 4;     // optimal only; restart 1 always starts at all-zero phases
    double tol = 1e-9;    // stop when a full sweep improves f by less than tol relative
    int max_sweeps = 200;
};

const char* strategy_name(PhaseStrategy::Kind kind);
PhaseStrategy::Kind strategy_from_name(const std::string& name); // throws ConfigError

// Rectangular steering-angle grid. Values are min + k * step up to max.
struct AngleGrid {
    AngleDeg theta_min{-90.0};
    AngleDeg theta_max{90.0};
    AngleDeg theta_step{1.0};
    AngleDeg phi_min{0.0};
    AngleDeg phi_max{180.0};
    AngleDeg phi_step{2.0};

    std::vector<double> theta_values() const;
    std::vector<double> phi_values() const;
};
std::vector<std::string> validate(const AngleGrid& grid);

struct PhaseAscentResult {
    PhaseVector psi;
    double objective = 0.0; // ||h_eff||^2 at psi, recomputed from scratch
    Snr snr;
    int sweeps_used = 0;             // in the winning restart
    std::vector<double> sweep_trace; // winning restart, SNR after each sweep
    // Per restart, SNR after the initial point and after every coordinate
    // update; each is non-decreasing (monotone ascent).
    std::vector<std::vector<double>> update_traces;
};

// Maximizes f(psi) = ||a0 + sum_i e^{j psi_i} b_i||^2 by cyclic coordinate
// ascent, where a0 is the direct term and b_i the per-element reflected
// terms of the effective channel. Each update sets psi_i to its closed-form
// maximizer -arg(d_i^H b_i) with d_i the sum excluding element i, so every
// step is exactly optimal for its coordinate and f never decreases. Restart
// 1 starts from all-zero phases, later restarts from uniform random phases
// drawn from `stream`; the best restart wins.
//
// Requires N >= 1 (PreconditionError otherwise; the no-RIS baseline never
// calls this).
PhaseAscentResult optimize_phases(const Scenario& s, const SteeringAngles& a,
                                  const ChannelSet& ch, const PhaseStrategy& strat,
                                  RandomStream& stream);

// Gain-explicit core; lets tests and diagnostics force either path off.
PhaseAscentResult optimize_phases(const LinkGains& gains, double reflection_amplitude,
                                  double noise_power, const ChannelView& ch,
                                  const PhaseStrategy& strat, RandomStream& stream);

// random -> i.i.d. uniform [0, 2*pi) from the stream; zero_phase -> zeros.
PhaseVector baseline_phases(const PhaseStrategy& strat, std::size_t n, RandomStream& stream);

struct OptimizationResult {
    AngleDeg theta_star;
    AngleDeg phi_star;
    PhaseVector psi_star;
    double snr_linear = 0.0;
    double snr_db = 0.0;
    int sweeps_used = 0;
    std::vector<double> objective_trace; // winning point, per sweep, non-decreasing
};

// Evaluates every grid point with the given strategy and returns the argmax.
// Ties break deterministically toward smaller theta, then smaller phi; the
// comparison uses ||h_eff||^2, so scaling the noise power can never change
// the winner. Points are independent and evaluated concurrently; the
// reduction runs in grid-index order.
OptimizationResult grid_search(const Scenario& s, const AngleGrid& grid, const ChannelSet& ch,
                               const PhaseStrategy& strat, RandomStream& stream);

struct QuantizedOracleResult {
    PhaseVector psi;
    double objective = 0.0;
    Snr snr;
};

// Exhaustive search over all levels^N phase combinations on the uniform
// grid {2 pi k / levels}. Verification oracle only: guarded to N in [1, 4]
// and levels^N <= 1e7.
QuantizedOracleResult quantized_phase_oracle(const Scenario& s, const SteeringAngles& a,
                                             const ChannelSet& ch, int levels);

} // namespace risbeam
