#include "risbeam/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "risbeam/errors.hpp"

namespace risbeam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Row-vector form of the effective channel: h_eff^H = a0 + sum_i e^{j psi_i} b_i
// with a0[k] = sqrt(alpha_d) conj(h_d[k]) and
// b[i][k] = sqrt(alpha_r) beta conj(g[i]) h_r[i][k]. Its norm equals the
// column form used by the link module.
struct AlignmentTerms {
    CVec a0;               // M
    CMat b;                // N x M
    std::vector<double> b_norm_sq; // ||b_i||^2
};

AlignmentTerms make_alignment(const LinkGains& gains, double beta, const ChannelView& ch) {
    const std::size_t m = ch.m();
    const std::size_t n = ch.n();
    AlignmentTerms t;
    t.a0.resize(m);
    const double ad = std::sqrt(gains.alpha_d);
    for (std::size_t k = 0; k < m; ++k) t.a0[k] = ad * std::conj(ch.h_d[k]);

    t.b = CMat(n, m);
    t.b_norm_sq.resize(n);
    const double ar = std::sqrt(gains.alpha_r) * beta;
    for (std::size_t i = 0; i < n; ++i) {
        const cxd coef = ar * std::conj(ch.g[i]);
        const auto src = ch.h_r_row(i);
        auto dst = t.b.row(i);
        for (std::size_t k = 0; k < m; ++k) dst[k] = coef * src[k];
        t.b_norm_sq[i] = norm_sq(dst);
    }
    return t;
}

double eval_objective(const AlignmentTerms& t, const PhaseVector& psi, CVec& sum) {
    sum = t.a0;
    for (std::size_t i = 0; i < t.b.rows; ++i) {
        const cxd e = std::polar(1.0, psi[i]);
        const auto bi = t.b.row(i);
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += e * bi[k];
    }
    return norm_sq(sum);
}

struct RestartOutcome {
    PhaseVector psi;
    double objective = 0.0;
    int sweeps_used = 0;
    std::vector<double> sweep_trace;
    std::vector<double> update_trace;
};

RestartOutcome run_ascent(const AlignmentTerms& t, PhaseVector psi, const PhaseStrategy& strat,
                          double noise_power) {
    const std::size_t m = t.a0.size();
    const std::size_t n = t.b.rows;
    RestartOutcome out;
    CVec sum;
    double f = eval_objective(t, psi, sum);
    out.update_trace.push_back(f / noise_power);

    int sweep = 0;
    while (sweep < strat.max_sweeps) {
        ++sweep;
        // Refresh the running sum each sweep so incremental rounding cannot
        // accumulate across hundreds of updates.
        f = eval_objective(t, psi, sum);
        const double f_start = f;
        for (std::size_t i = 0; i < n; ++i) {
            if (t.b_norm_sq[i] == 0.0) {
                out.update_trace.push_back(f / noise_power);
                continue;
            }
            const auto bi = t.b.row(i);
            const cxd e_old = std::polar(1.0, psi[i]);
            // d_i^H b_i = sum^H b_i - conj(e_old) ||b_i||^2
            cxd c = hdot(sum, bi);
            c -= std::conj(e_old) * t.b_norm_sq[i];
            // f(psi) = ||d_i||^2 + ||b_i||^2 + 2 Re(e^{j psi} c): the best
            // step gains 2 (|c| - Re(e_old c)) >= 0.
            const double gain = 2.0 * (std::abs(c) - (e_old * c).real());
            if (gain > 0.0) {
                const double psi_new = wrap_phase(-std::atan2(c.imag(), c.real()));
                const cxd delta = std::polar(1.0, psi_new) - e_old;
                for (std::size_t k = 0; k < m; ++k) sum[k] += delta * bi[k];
                f += gain;
                psi.set(i, psi_new);
            }
            out.update_trace.push_back(f / noise_power);
        }
        // Collective rotation: a common shift of all phases multiplies the
        // whole reflected sum by e^{j delta}. Single-coordinate moves couple
        // to this mode only weakly through a0, which makes cyclic ascent
        // crawl when alpha_d is small; optimizing delta in closed form
        // (delta = -arg(a0^H r), r = sum - a0) removes the slow mode while
        // staying an exactly optimal, monotone update.
        if (n > 0) {
            cxd cr{0.0, 0.0};
            for (std::size_t k = 0; k < m; ++k) cr += std::conj(t.a0[k]) * (sum[k] - t.a0[k]);
            if (std::abs(cr) > cr.real()) {
                const double delta = wrap_phase(-std::atan2(cr.imag(), cr.real()));
                const cxd e_d = std::polar(1.0, delta);
                f = 0.0;
                for (std::size_t k = 0; k < m; ++k) {
                    sum[k] = t.a0[k] + e_d * (sum[k] - t.a0[k]);
                    f += std::norm(sum[k]);
                }
                for (std::size_t i = 0; i < n; ++i) psi.set(i, psi[i] + delta);
                out.update_trace.push_back(f / noise_power);
            }
        }
        out.sweep_trace.push_back(f / noise_power);
        if (f - f_start <= strat.tol * f_start) break;
    }
    out.sweeps_used = sweep;
    out.psi = std::move(psi);
    out.objective = f;
    return out;
}

} // namespace

PhaseAscentResult optimize_phases(const LinkGains& gains, double reflection_amplitude,
                                  double noise_power, const ChannelView& ch,
                                  const PhaseStrategy& strat, RandomStream& stream) {
    const std::size_t n = ch.n();
    if (n == 0) {
        throw PreconditionError("optimize_phases: no RIS elements (use the no_ris strategy)");
    }
    if (strat.restarts < 1 || strat.max_sweeps < 1 || !(strat.tol > 0.0)) {
        throw PreconditionError("optimize_phases: bad strategy parameters");
    }
    const AlignmentTerms terms = make_alignment(gains, reflection_amplitude, ch);

    PhaseAscentResult result;
    bool have_best = false;
    RestartOutcome best;
    for (int r = 0; r < strat.restarts; ++r) {
        PhaseVector start;
        if (r == 0) {
            start = PhaseVector::zeros(n);
        } else {
            std::vector<double> psi(n);
            for (double& p : psi) p = stream.next_uniform(0.0, kTwoPi);
            start = PhaseVector(std::move(psi));
        }
        RestartOutcome outcome = run_ascent(terms, std::move(start), strat, noise_power);
        result.update_traces.push_back(outcome.update_trace);
        if (!have_best || outcome.objective > best.objective) {
            best = std::move(outcome);
            have_best = true;
        }
    }

    // Report a from-scratch evaluation at the winning phases, not the
    // incrementally maintained value.
    CVec scratch;
    result.objective = eval_objective(terms, best.psi, scratch);
    result.snr = snr_from_norm_sq(result.objective, noise_power);
    result.psi = std::move(best.psi);
    result.sweeps_used = best.sweeps_used;
    result.sweep_trace = std::move(best.sweep_trace);
    return result;
}

PhaseAscentResult optimize_phases(const Scenario& s, const SteeringAngles& a,
                                  const ChannelSet& ch, const PhaseStrategy& strat,
                                  RandomStream& stream) {
    if (ch.m() != static_cast<std::size_t>(s.m_antennas) ||
        ch.n() != static_cast<std::size_t>(s.n_elements)) {
        throw DimensionError("optimize_phases: channel set does not match scenario dimensions");
    }
    const double beta = reflection_amplitude(s.ris, a.theta_bs, a.phi_bs);
    return optimize_phases(link_gains(s, a), beta, s.noise_power, view_of(ch), strat, stream);
}

PhaseVector baseline_phases(const PhaseStrategy& strat, std::size_t n, RandomStream& stream) {
    switch (strat.kind) {
    case PhaseStrategy::Kind::zero_phase:
        return PhaseVector::zeros(n);
    case PhaseStrategy::Kind::random: {
        std::vector<double> psi(n);
        for (double& p : psi) p = stream.next_uniform(0.0, kTwoPi);
        return PhaseVector(std::move(psi));
    }
    default:
        throw PreconditionError("baseline_phases: strategy must be random or zero_phase");
    }
}

const char* strategy_name(PhaseStrategy::Kind kind) {
    switch (kind) {
    case PhaseStrategy::Kind::optimal: return "optimal";
    case PhaseStrategy::Kind::random: return "random";
    case PhaseStrategy::Kind::zero_phase: return "zero_phase";
    case PhaseStrategy::Kind::no_ris: return "no_ris";
    }
    return "unknown";
}

PhaseStrategy::Kind strategy_from_name(const std::string& name) {
    if (name == "optimal") return PhaseStrategy::Kind::optimal;
    if (name == "random") return PhaseStrategy::Kind::random;
    if (name == "zero_phase") return PhaseStrategy::Kind::zero_phase;
    if (name == "no_ris") return PhaseStrategy::Kind::no_ris;
    throw ConfigError("unknown strategy '" + name + "'");
}

namespace {

std::vector<double> axis_values(double lo, double hi, double step) {
    if (!(step > 0.0) || !(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi) ||
        !std::isfinite(step)) {
        return {};
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) v[k] = lo + static_cast<double>(k) * step;
    return v;
}

} // namespace

std::vector<double> AngleGrid::theta_values() const {
    return axis_values(theta_min.value, theta_max.value, theta_step.value);
}

std::vector<double> AngleGrid::phi_values() const {
    return axis_values(phi_min.value, phi_max.value, phi_step.value);
}

std::vector<std::string> validate(const AngleGrid& grid) {
    std::vector<std::string> errs;
    const bool theta_finite = std::isfinite(grid.theta_min.value) &&
                              std::isfinite(grid.theta_max.value) &&
                              std::isfinite(grid.theta_step.value);
    const bool phi_finite = std::isfinite(grid.phi_min.value) &&
                            std::isfinite(grid.phi_max.value) && std::isfinite(grid.phi_step.value);
    if (!theta_finite || !phi_finite) errs.emplace_back("grid_not_finite");
    if (theta_finite) {
        if (!(grid.theta_step.value > 0.0)) errs.emplace_back("grid_theta_step_nonpositive");
        if (!(grid.theta_min.value <= grid.theta_max.value)) {
            errs.emplace_back("grid_theta_range_invalid");
        }
        if (grid.theta_min.value < -90.0 || grid.theta_max.value > 90.0) {
            errs.emplace_back("grid_theta_out_of_domain");
        }
    }
    if (phi_finite) {
        if (!(grid.phi_step.value > 0.0)) errs.emplace_back("grid_phi_step_nonpositive");
        if (!(grid.phi_min.value <= grid.phi_max.value)) {
            errs.emplace_back("grid_phi_range_invalid");
        }
        if (grid.phi_min.value < 0.0 || grid.phi_max.value > 180.0) {
            errs.emplace_back("grid_phi_out_of_domain");
        }
    }
    return errs;
}

namespace {

struct PointEval {
    double objective = 0.0;
    PhaseVector psi;
    int sweeps_used = 0;
    std::vector<double> sweep_trace;
};

PointEval evaluate_grid_point(const Scenario& s, const SteeringAngles& a, const ChannelSet& ch,
                              const PhaseStrategy& strat, RandomStream stream) {
    PointEval ev;
    const LinkGains gains = link_gains(s, a);
    const double beta = reflection_amplitude(s.ris, a.theta_bs, a.phi_bs);
    switch (strat.kind) {
    case PhaseStrategy::Kind::optimal: {
        PhaseAscentResult r = optimize_phases(s, a, ch, strat, stream);
        ev.objective = r.objective;
        ev.psi = std::move(r.psi);
        ev.sweeps_used = r.sweeps_used;
        ev.sweep_trace = std::move(r.sweep_trace);
        break;
    }
    case PhaseStrategy::Kind::random:
    case PhaseStrategy::Kind::zero_phase: {
        ev.psi = baseline_phases(strat, ch.n(), stream);
        const EffectiveChannel h = effective_channel(gains, beta, ev.psi, view_of(ch));
        ev.objective = norm_sq(h.h_eff);
        ev.sweep_trace = {ev.objective / s.noise_power};
        break;
    }
    case PhaseStrategy::Kind::no_ris: {
        const LinkGains direct_only{gains.alpha_d, 0.0};
        const EffectiveChannel h =
            effective_channel(direct_only, beta, PhaseVector{}, prefix_view(ch, 0));
        ev.objective = norm_sq(h.h_eff);
        ev.sweep_trace = {ev.objective / s.noise_power};
        break;
    }
    }
    return ev;
}

} // namespace

OptimizationResult grid_search(const Scenario& s, const AngleGrid& grid, const ChannelSet& ch,
                               const PhaseStrategy& strat, RandomStream& stream) {
    if (!validate(grid).empty()) throw PreconditionError("grid_search: invalid angle grid");
    const std::vector<double> thetas = grid.theta_values();
    const std::vector<double> phis = grid.phi_values();
    if (thetas.empty() || phis.empty()) throw PreconditionError("grid_search: empty grid");

    const std::size_t total = thetas.size() * phis.size();
    std::vector<PointEval> evals(total);
    const RandomStream root = stream;

    // Points are independent; each forks its own stream off the grid index,
    // so the schedule cannot change any result.
    #pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(total); ++p) {
        const std::size_t it = static_cast<std::size_t>(p) / phis.size();
        const std::size_t ip = static_cast<std::size_t>(p) % phis.size();
        const SteeringAngles a{AngleDeg{thetas[it]}, AngleDeg{phis[ip]}};
        evals[p] = evaluate_grid_point(s, a, ch, strat, root.fork(static_cast<std::uint64_t>(p)));
    }

    // Ordered reduction: strictly-greater wins, so ties keep the smallest
    // theta, then the smallest phi.
    std::size_t best = 0;
    for (std::size_t p = 1; p < total; ++p) {
        if (evals[p].objective > evals[best].objective) best = p;
    }

    OptimizationResult result;
    result.theta_star = AngleDeg{thetas[best / phis.size()]};
    result.phi_star = AngleDeg{phis[best % phis.size()]};
    result.psi_star = std::move(evals[best].psi);
    const Snr best_snr = snr_from_norm_sq(evals[best].objective, s.noise_power);
    result.snr_linear = best_snr.linear;
    result.snr_db = best_snr.db;
    result.sweeps_used = evals[best].sweeps_used;
    result.objective_trace = std::move(evals[best].sweep_trace);
    return result;
}

QuantizedOracleResult quantized_phase_oracle(const Scenario& s, const SteeringAngles& a,
                                             const ChannelSet& ch, int levels) {
    const std::size_t n = ch.n();
    if (ch.m() != static_cast<std::size_t>(s.m_antennas) ||
        n != static_cast<std::size_t>(s.n_elements)) {
        throw DimensionError("quantized_phase_oracle: channel set does not match scenario");
    }
    if (n < 1 || n > 4) {
        throw PreconditionError("quantized_phase_oracle: N must be in [1, 4]");
    }
    if (levels < 2) throw PreconditionError("quantized_phase_oracle: levels must be >= 2");
    double combos = 1.0;
    for (std::size_t i = 0; i < n; ++i) combos *= levels;
    if (combos > 1e7) {
        throw PreconditionError("quantized_phase_oracle: levels^N exceeds the 1e7 guard");
    }

    const LinkGains gains = link_gains(s, a);
    const double beta = reflection_amplitude(s.ris, a.theta_bs, a.phi_bs);
    const AlignmentTerms terms = make_alignment(gains, beta, view_of(ch));
    const std::size_t m = terms.a0.size();

    std::vector<cxd> phasors(levels);
    std::vector<double> grid_phase(levels);
    for (int k = 0; k < levels; ++k) {
        grid_phase[k] = kTwoPi * k / levels;
        phasors[k] = std::polar(1.0, grid_phase[k]);
    }

    std::vector<int> digits(n, 0);
    std::vector<double> best_psi(n, 0.0);
    double best_f = -1.0;
    CVec sum(m);
    const auto total = static_cast<std::uint64_t>(combos);
    for (std::uint64_t combo = 0; combo < total; ++combo) {
        sum = terms.a0;
        for (std::size_t i = 0; i < n; ++i) {
            const cxd e = phasors[digits[i]];
            const auto bi = terms.b.row(i);
            for (std::size_t k = 0; k < m; ++k) sum[k] += e * bi[k];
        }
        const double f = norm_sq(sum);
        if (f > best_f) {
            best_f = f;
            for (std::size_t i = 0; i < n; ++i) best_psi[i] = grid_phase[digits[i]];
        }
        // mixed-radix odometer
        for (std::size_t i = 0; i < n; ++i) {
            if (++digits[i] < levels) break;
            digits[i] = 0;
        }
    }

    QuantizedOracleResult out;
    out.psi = PhaseVector(std::move(best_psi));
    out.objective = best_f;
    out.snr = snr_from_norm_sq(best_f, s.noise_power);
    return out;
}

} // namespace risbeam
