#include "risbeam/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "config_internal.hpp"
#include "kvconfig.hpp"
#include "risbeam/errors.hpp"

namespace risbeam {

namespace {

// Fork tag separating per-row phase randomness (random baselines, ascent
// restarts) from the channel draws of the same trial.
constexpr std::uint64_t kPhaseFork = 0x70686173u; // "phas"

int effective_threads(const SweepSpec& spec) {
    return spec.threads <= 0 ? omp_get_max_threads() : spec.threads;
}

struct Row {
    double theta = 0.0;
    double phi = 0.0;
    int n_column = 0; // value shown in the CSV n_elements column
    int n_use = 0;    // RIS elements actually used in the evaluation
    PhaseStrategy::Kind strategy = PhaseStrategy::Kind::optimal;
    std::size_t index = 0; // position in the canonical row order; keys the RNG
};

bool row_less(const Row& a, const Row& b) {
    if (a.phi != b.phi) return a.phi < b.phi;
    if (a.theta != b.theta) return a.theta < b.theta;
    if (a.n_column != b.n_column) return a.n_column < b.n_column;
    return std::string_view(strategy_name(a.strategy)) < strategy_name(b.strategy);
}

bool row_equal(const Row& a, const Row& b) {
    return a.phi == b.phi && a.theta == b.theta && a.n_column == b.n_column &&
           a.strategy == b.strategy;
}

std::vector<double> sorted_phi_values(const SweepSpec& spec) {
    std::vector<double> phis;
    phis.reserve(spec.phi_list.size());
    for (AngleDeg p : spec.phi_list) phis.push_back(p.value);
    std::sort(phis.begin(), phis.end());
    return phis;
}

std::vector<PhaseStrategy::Kind> sorted_strategies(const SweepSpec& spec) {
    std::vector<PhaseStrategy::Kind> out = spec.strategies;
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        return std::string_view(strategy_name(a)) < strategy_name(b);
    });
    return out;
}

// Canonical row order: sorted by (phi, theta, n, strategy), duplicates
// dropped. Row indices key the per-row random streams, so any permutation
// of the config lists produces identical output.
std::vector<Row> build_rows(const SweepSpec& spec, SweepSpec::Kind kind) {
    const std::vector<double> phis = sorted_phi_values(spec);
    const std::vector<double> thetas = spec.grid.theta_values();
    const std::vector<PhaseStrategy::Kind> strategies = sorted_strategies(spec);

    std::vector<Row> rows;
    for (double phi : phis) {
        for (double theta : thetas) {
            if (kind == SweepSpec::Kind::tilt) {
                for (PhaseStrategy::Kind st : strategies) {
                    const bool uses_ris = st != PhaseStrategy::Kind::no_ris;
                    rows.push_back(Row{theta, phi, spec.scenario.n_elements,
                                       uses_ris ? spec.scenario.n_elements : 0, st});
                }
            } else {
                std::vector<int> ns = spec.n_list;
                std::sort(ns.begin(), ns.end());
                for (int n : ns) {
                    if (n == 0) {
                        rows.push_back(Row{theta, phi, 0, 0, PhaseStrategy::Kind::no_ris});
                        continue;
                    }
                    for (PhaseStrategy::Kind st : strategies) {
                        const bool uses_ris = st != PhaseStrategy::Kind::no_ris;
                        rows.push_back(Row{theta, phi, n, uses_ris ? n : 0, st});
                    }
                }
            }
        }
    }
    std::sort(rows.begin(), rows.end(), row_less);
    rows.erase(std::unique(rows.begin(), rows.end(), row_equal), rows.end());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].index = i;
    return rows;
}

struct CellStats {
    double mean_lin = 0.0;
    double std_lin = 0.0;
};

CellStats stats_of(const std::vector<double>& x) {
    CellStats st;
    double sum = 0.0;
    for (double v : x) sum += v;
    st.mean_lin = sum / static_cast<double>(x.size());
    if (x.size() >= 2) {
        double ss = 0.0;
        for (double v : x) ss += (v - st.mean_lin) * (v - st.mean_lin);
        st.std_lin = std::sqrt(ss / static_cast<double>(x.size() - 1));
    }
    return st;
}

// Per-trial SNRs for one (phi, theta, n, strategy) cell. Trials run in index
// order; all randomness is keyed by (seed, trial, row), never by schedule.
CellStats evaluate_cell(const SweepSpec& spec, const Row& row,
                        const std::vector<ChannelSet>& channels) {
    const Scenario& s = spec.scenario;
    const SteeringAngles a{AngleDeg{row.theta}, AngleDeg{row.phi}};
    LinkGains gains = link_gains(s, a);
    if (spec.suppress_direct) gains.alpha_d = 0.0;
    if (spec.suppress_reflected) gains.alpha_r = 0.0;
    const double beta = reflection_amplitude(s.ris, a.theta_bs, a.phi_bs);

    std::vector<double> snr_lin(static_cast<std::size_t>(spec.trials));
    for (int t = 0; t < spec.trials; ++t) {
        const ChannelView cv = prefix_view(channels[t], static_cast<std::size_t>(row.n_use));
        double lin = 0.0;
        switch (row.strategy) {
        case PhaseStrategy::Kind::no_ris: {
            const LinkGains direct_only{gains.alpha_d, 0.0};
            const EffectiveChannel h = effective_channel(direct_only, beta, PhaseVector{}, cv);
            lin = snr_from_norm_sq(norm_sq(h.h_eff), s.noise_power).linear;
            break;
        }
        case PhaseStrategy::Kind::zero_phase: {
            const PhaseVector psi = PhaseVector::zeros(cv.n());
            const EffectiveChannel h = effective_channel(gains, beta, psi, cv);
            lin = snr_from_norm_sq(norm_sq(h.h_eff), s.noise_power).linear;
            break;
        }
        case PhaseStrategy::Kind::random: {
            RandomStream rng =
                derive_stream(s.seed, static_cast<std::uint64_t>(t)).fork(kPhaseFork).fork(row.index);
            PhaseStrategy st;
            st.kind = PhaseStrategy::Kind::random;
            const PhaseVector psi = baseline_phases(st, cv.n(), rng);
            const EffectiveChannel h = effective_channel(gains, beta, psi, cv);
            lin = snr_from_norm_sq(norm_sq(h.h_eff), s.noise_power).linear;
            break;
        }
        case PhaseStrategy::Kind::optimal: {
            RandomStream rng =
                derive_stream(s.seed, static_cast<std::uint64_t>(t)).fork(kPhaseFork).fork(row.index);
            PhaseStrategy st = spec.ascent;
            st.kind = PhaseStrategy::Kind::optimal;
            lin = optimize_phases(gains, beta, s.noise_power, cv, st, rng).snr.linear;
            break;
        }
        }
        snr_lin[static_cast<std::size_t>(t)] = lin;
    }
    return stats_of(snr_lin);
}

std::size_t draw_elements(const SweepSpec& spec, SweepSpec::Kind kind) {
    if (kind == SweepSpec::Kind::n_elements) {
        int n_max = 0;
        for (int n : spec.n_list) n_max = std::max(n_max, n);
        return static_cast<std::size_t>(n_max);
    }
    return static_cast<std::size_t>(spec.scenario.n_elements);
}

std::vector<ChannelSet> precompute_channels(const SweepSpec& spec, std::size_t n_draw,
                                            bool parallel) {
    const auto m = static_cast<std::size_t>(spec.scenario.m_antennas);
    std::vector<ChannelSet> channels(static_cast<std::size_t>(spec.trials));
    if (parallel) {
        const int nthreads = effective_threads(spec);
        #pragma omp parallel for num_threads(nthreads) schedule(static)
        for (int t = 0; t < spec.trials; ++t) {
            RandomStream st = derive_stream(spec.scenario.seed, static_cast<std::uint64_t>(t));
            channels[static_cast<std::size_t>(t)] = draw(spec.channel, m, n_draw, st);
        }
    } else {
        for (int t = 0; t < spec.trials; ++t) {
            RandomStream st = derive_stream(spec.scenario.seed, static_cast<std::uint64_t>(t));
            channels[static_cast<std::size_t>(t)] = draw(spec.channel, m, n_draw, st);
        }
    }
    return channels;
}

SweepResult assemble(const SweepSpec& spec, const std::vector<Row>& rows,
                     const std::vector<CellStats>& stats) {
    SweepResult result;
    result.rows.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SweepRow out;
        out.theta_deg = rows[i].theta;
        out.phi_deg = rows[i].phi;
        out.n_elements = rows[i].n_column;
        out.strategy = rows[i].strategy;
        out.mean_snr_db = snr_db_from_linear(stats[i].mean_lin);
        // Delta method: sd(10 log10 X) ~ (10 / ln 10) sd(X) / E[X].
        out.std_snr_db =
            stats[i].mean_lin > 0.0 ? (10.0 / std::log(10.0)) * stats[i].std_lin / stats[i].mean_lin
                                    : 0.0;
        out.trials = spec.trials;
        out.seed = spec.scenario.seed;
        result.rows.push_back(out);
    }
    result.config_echo = serialize_config(spec);
    result.config_hash = fnv1a64(result.config_echo);
    return result;
}

void require_sweep_valid(const SweepSpec& spec, SweepSpec::Kind expected) {
    if (spec.kind != expected) {
        throw PreconditionError(std::string("sweep kind mismatch: spec says ") +
                                sweep_kind_name(spec.kind) + ", runner wants " +
                                sweep_kind_name(expected));
    }
    auto errs = validate(spec);
    if (!errs.empty()) throw ValidationError(std::move(errs));
}

// Serial reference engine: one plain loop nest, no OpenMP. The parallel
// engine below must stay byte-identical to this.
SweepResult run_sweep_serial(const SweepSpec& spec, SweepSpec::Kind kind) {
    require_sweep_valid(spec, kind);
    const std::vector<Row> rows = build_rows(spec, kind);
    const std::vector<ChannelSet> channels = precompute_channels(spec, draw_elements(spec, kind),
                                                                 /*parallel=*/false);
    std::vector<CellStats> stats(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        stats[r] = evaluate_cell(spec, rows[r], channels);
    }
    return assemble(spec, rows, stats);
}

// OpenMP engine: rows are independent and each writes only its own slot;
// trials stay in index order inside evaluate_cell, so the reduction is
// schedule-invariant.
SweepResult run_sweep_parallel(const SweepSpec& spec, SweepSpec::Kind kind) {
    require_sweep_valid(spec, kind);
    const std::vector<Row> rows = build_rows(spec, kind);
    const std::vector<ChannelSet> channels = precompute_channels(spec, draw_elements(spec, kind),
                                                                 /*parallel=*/true);
    std::vector<CellStats> stats(rows.size());
    const int nthreads = effective_threads(spec);
    #pragma omp parallel for num_threads(nthreads) schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows.size()); ++r) {
        stats[r] = evaluate_cell(spec, rows[static_cast<std::size_t>(r)], channels);
    }
    return assemble(spec, rows, stats);
}

} // namespace

SweepResult run_tilt_sweep(const SweepSpec& spec) {
    return effective_threads(spec) > 1 ? run_sweep_parallel(spec, SweepSpec::Kind::tilt)
                                       : run_sweep_serial(spec, SweepSpec::Kind::tilt);
}

SweepResult run_n_sweep(const SweepSpec& spec) {
    return effective_threads(spec) > 1 ? run_sweep_parallel(spec, SweepSpec::Kind::n_elements)
                                       : run_sweep_serial(spec, SweepSpec::Kind::n_elements);
}

namespace reference {

SweepResult run_tilt_sweep(const SweepSpec& spec) {
    return run_sweep_serial(spec, SweepSpec::Kind::tilt);
}

SweepResult run_n_sweep(const SweepSpec& spec) {
    return run_sweep_serial(spec, SweepSpec::Kind::n_elements);
}

} // namespace reference

JointOptimizationReport run_joint_optimization(const SweepSpec& spec) {
    require_sweep_valid(spec, SweepSpec::Kind::full_grid);

    PhaseStrategy strat = spec.ascent;
    strat.kind = spec.strategies.front();

    const auto m = static_cast<std::size_t>(spec.scenario.m_antennas);
    const auto n = static_cast<std::size_t>(spec.scenario.n_elements);
    const std::uint64_t seed = spec.scenario.seed;

    JointOptimizationReport report;
    report.trials = spec.trials;
    report.per_trial.resize(static_cast<std::size_t>(spec.trials));

    if (spec.trials == 1) {
        // stay outside a parallel region so grid_search can parallelize the
        // grid points itself
        RandomStream st = derive_stream(seed, 0);
        const ChannelSet ch = draw(spec.channel, m, n, st);
        report.per_trial[0] = grid_search(spec.scenario, spec.grid, ch, strat, st);
    } else {
        const int nthreads = effective_threads(spec);
        #pragma omp parallel for num_threads(nthreads) schedule(dynamic)
        for (int t = 0; t < spec.trials; ++t) {
            RandomStream st = derive_stream(seed, static_cast<std::uint64_t>(t));
            const ChannelSet ch = draw(spec.channel, m, n, st);
            report.per_trial[static_cast<std::size_t>(t)] =
                grid_search(spec.scenario, spec.grid, ch, strat, st);
        }
    }

    // Modal argmax across trials; ties break toward smaller (theta, phi).
    std::map<std::pair<double, double>, int> counts;
    for (const OptimizationResult& r : report.per_trial) {
        ++counts[{r.theta_star.value, r.phi_star.value}];
    }
    std::pair<double, double> modal{};
    int modal_count = 0;
    for (const auto& [angles, count] : counts) {
        if (count > modal_count) {
            modal = angles;
            modal_count = count;
        }
    }
    report.theta_modal = AngleDeg{modal.first};
    report.phi_modal = AngleDeg{modal.second};
    report.modal_count = modal_count;

    std::vector<double> lin(report.per_trial.size());
    for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = report.per_trial[i].snr_linear;
    const CellStats st = stats_of(lin);
    report.mean_snr_db = snr_db_from_linear(st.mean_lin);
    report.std_snr_db =
        st.mean_lin > 0.0 ? (10.0 / std::log(10.0)) * st.std_lin / st.mean_lin : 0.0;
    return report;
}

const char* sweep_kind_name(SweepSpec::Kind kind) {
    switch (kind) {
    case SweepSpec::Kind::tilt: return "tilt";
    case SweepSpec::Kind::n_elements: return "n_elements";
    case SweepSpec::Kind::full_grid: return "full_grid";
    }
    return "unknown";
}

SweepSpec::Kind sweep_kind_from_name(const std::string& name) {
    if (name == "tilt") return SweepSpec::Kind::tilt;
    if (name == "n_elements") return SweepSpec::Kind::n_elements;
    if (name == "full_grid") return SweepSpec::Kind::full_grid;
    throw ConfigError("unknown sweep kind '" + name + "'");
}

std::vector<std::string> validate(const SweepSpec& spec) {
    std::vector<std::string> errs = validate(spec.scenario);
    for (const std::string& code : validate(spec.grid)) errs.push_back(code);

    if (spec.trials < 1) errs.emplace_back("trials_nonpositive");
    if (spec.strategies.empty()) errs.emplace_back("strategies_empty");
    if (spec.ascent.restarts < 1) errs.emplace_back("restarts_nonpositive");
    if (!(spec.ascent.tol > 0.0)) errs.emplace_back("tol_nonpositive");
    if (spec.ascent.max_sweeps < 1) errs.emplace_back("max_sweeps_nonpositive");
    if (spec.threads < 0) errs.emplace_back("threads_negative");

    const bool wants_optimal =
        std::find(spec.strategies.begin(), spec.strategies.end(),
                  PhaseStrategy::Kind::optimal) != spec.strategies.end();

    switch (spec.kind) {
    case SweepSpec::Kind::tilt:
        if (spec.phi_list.empty()) errs.emplace_back("phi_list_empty");
        for (AngleDeg p : spec.phi_list) {
            if (!std::isfinite(p.value) || p.value < 0.0 || p.value > 180.0) {
                errs.emplace_back("phi_list_out_of_domain");
                break;
            }
        }
        if (wants_optimal && spec.scenario.n_elements == 0) {
            errs.emplace_back("optimal_requires_ris");
        }
        break;
    case SweepSpec::Kind::n_elements:
        if (spec.phi_list.empty()) errs.emplace_back("phi_list_empty");
        for (AngleDeg p : spec.phi_list) {
            if (!std::isfinite(p.value) || p.value < 0.0 || p.value > 180.0) {
                errs.emplace_back("phi_list_out_of_domain");
                break;
            }
        }
        if (spec.n_list.empty()) errs.emplace_back("n_list_empty");
        for (int n : spec.n_list) {
            if (n < 0) {
                errs.emplace_back("n_list_negative");
                break;
            }
        }
        break;
    case SweepSpec::Kind::full_grid:
        if (spec.strategies.size() != 1) errs.emplace_back("full_grid_needs_one_strategy");
        if (spec.suppress_direct || spec.suppress_reflected) {
            errs.emplace_back("suppress_not_supported_for_full_grid");
        }
        if (wants_optimal && spec.scenario.n_elements == 0) {
            errs.emplace_back("optimal_requires_ris");
        }
        break;
    }
    return errs;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (double x : v) {
        if (!out.empty()) out += ", ";
        out += kv::format_double(x);
    }
    return out;
}

} // namespace

std::string serialize_config(const SweepSpec& spec) {
    using kv::format_double;
    std::ostringstream out;
    out << serialize_config(spec.scenario);
    out << "sweep = " << sweep_kind_name(spec.kind) << "\n";
    std::vector<double> phis;
    for (AngleDeg p : spec.phi_list) phis.push_back(p.value);
    out << "phi_list_deg = " << join_doubles(phis) << "\n";
    std::string ns;
    for (int n : spec.n_list) {
        if (!ns.empty()) ns += ", ";
        ns += std::to_string(n);
    }
    out << "n_list = " << ns << "\n";
    std::string strats;
    for (PhaseStrategy::Kind k : spec.strategies) {
        if (!strats.empty()) strats += ", ";
        strats += strategy_name(k);
    }
    out << "strategies = " << strats << "\n";
    out << "trials = " << spec.trials << "\n";
    out << "theta_min_deg = " << format_double(spec.grid.theta_min.value) << "\n";
    out << "theta_max_deg = " << format_double(spec.grid.theta_max.value) << "\n";
    out << "theta_step_deg = " << format_double(spec.grid.theta_step.value) << "\n";
    out << "phi_min_deg = " << format_double(spec.grid.phi_min.value) << "\n";
    out << "phi_max_deg = " << format_double(spec.grid.phi_max.value) << "\n";
    out << "phi_step_deg = " << format_double(spec.grid.phi_step.value) << "\n";
    out << "restarts = " << spec.ascent.restarts << "\n";
    out << "tol = " << format_double(spec.ascent.tol) << "\n";
    out << "max_sweeps = " << spec.ascent.max_sweeps << "\n";
    out << "threads = " << spec.threads << "\n";
    out << "suppress_direct = " << (spec.suppress_direct ? "true" : "false") << "\n";
    out << "suppress_reflected = " << (spec.suppress_reflected ? "true" : "false") << "\n";
    if (!spec.channel_file.empty()) out << "channel_file = " << spec.channel_file << "\n";
    return out.str();
}

namespace {

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        // scenario
        "m_antennas", "n_elements", "theta_ris_deg", "phi_ris_deg", "theta_ue_deg", "phi_ue_deg",
        "theta_3db_deg", "phi_3db_deg", "a_max_db", "a_m_v_db", "a_m_h_db", "a_m_db", "k1", "k2",
        "noise_power", "seed",
        // sweep
        "sweep", "phi_list_deg", "n_list", "strategies", "trials", "theta_min_deg",
        "theta_max_deg", "theta_step_deg", "phi_min_deg", "phi_max_deg", "phi_step_deg",
        "restarts", "tol", "max_sweeps", "threads", "suppress_direct", "suppress_reflected",
        "channel_file"};
    return keys;
}

SweepSpec parse_sweep_kv(const kv::KvFile& f, const std::filesystem::path& base_dir) {
    for (const std::string& key : f.keys()) {
        const auto& known = known_keys();
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    SweepSpec spec;
    spec.scenario = scenario_from_kv(f);
    spec.kind = sweep_kind_from_name(f.get_string("sweep", sweep_kind_name(spec.kind)));

    std::vector<double> phi_defaults;
    for (AngleDeg p : spec.phi_list) phi_defaults.push_back(p.value);
    spec.phi_list.clear();
    for (double v : f.get_double_list("phi_list_deg", phi_defaults)) {
        spec.phi_list.push_back(AngleDeg{v});
    }

    spec.n_list = f.get_int_list("n_list", spec.n_list);

    std::vector<std::string> strat_defaults;
    for (PhaseStrategy::Kind k : spec.strategies) strat_defaults.emplace_back(strategy_name(k));
    spec.strategies.clear();
    for (const std::string& name : f.get_string_list("strategies", strat_defaults)) {
        spec.strategies.push_back(strategy_from_name(name));
    }

    spec.trials = f.get_int("trials", spec.trials);
    spec.grid.theta_min.value = f.get_double("theta_min_deg", spec.grid.theta_min.value);
    spec.grid.theta_max.value = f.get_double("theta_max_deg", spec.grid.theta_max.value);
    spec.grid.theta_step.value = f.get_double("theta_step_deg", spec.grid.theta_step.value);
    spec.grid.phi_min.value = f.get_double("phi_min_deg", spec.grid.phi_min.value);
    spec.grid.phi_max.value = f.get_double("phi_max_deg", spec.grid.phi_max.value);
    spec.grid.phi_step.value = f.get_double("phi_step_deg", spec.grid.phi_step.value);
    spec.ascent.restarts = f.get_int("restarts", spec.ascent.restarts);
    spec.ascent.tol = f.get_double("tol", spec.ascent.tol);
    spec.ascent.max_sweeps = f.get_int("max_sweeps", spec.ascent.max_sweeps);
    spec.threads = f.get_int("threads", spec.threads);
    spec.suppress_direct = f.get_bool("suppress_direct", spec.suppress_direct);
    spec.suppress_reflected = f.get_bool("suppress_reflected", spec.suppress_reflected);

    spec.channel_file = f.get_string("channel_file", "");
    if (!spec.channel_file.empty()) {
        std::filesystem::path p(spec.channel_file);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        spec.channel = ChannelModel::fixed_set(load_channel_file(p.string()));
    }
    return spec;
}

} // namespace

SweepSpec parse_sweep_config(const std::string& text) {
    return parse_sweep_kv(kv::KvFile::parse(text), {});
}

SweepSpec load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_kv(kv::KvFile::parse(buf.str()), path.parent_path());
}

void emit_csv(const SweepResult& result, std::ostream& out) {
    using kv::format_double;
    out << kCsvHeader << "\n";
    for (const SweepRow& r : result.rows) {
        out << format_double(r.theta_deg) << ',' << format_double(r.phi_deg) << ','
            << r.n_elements << ',' << strategy_name(r.strategy) << ','
            << format_double(r.mean_snr_db) << ',' << format_double(r.std_snr_db) << ','
            << r.trials << ',' << r.seed << "\n";
    }
}

namespace {

nlohmann::ordered_json db_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

nlohmann::ordered_json metadata_json(const std::string& config_echo, std::uint64_t config_hash) {
    nlohmann::ordered_json meta;
    meta["tool"] = "risbeam";
    meta["version"] = kToolVersion;
    meta["config_hash"] = hex16(config_hash);
    meta["averaging"] = "mean over linear SNR then 10*log10(mean); "
                        "std_snr_db = (10/ln 10) * std_lin / mean_lin (delta method)";
    meta["config"] = config_echo;
    return meta;
}

} // namespace

void emit_json(const SweepResult& result, std::ostream& out) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(result.config_echo, result.config_hash);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const SweepRow& r : result.rows) {
        nlohmann::ordered_json row;
        row["theta_deg"] = r.theta_deg;
        row["phi_deg"] = r.phi_deg;
        row["n_elements"] = r.n_elements;
        row["strategy"] = strategy_name(r.strategy);
        row["mean_snr_db"] = db_value(r.mean_snr_db);
        row["std_snr_db"] = db_value(r.std_snr_db);
        row["trials"] = r.trials;
        row["seed"] = r.seed;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    out << j.dump(2) << "\n";
}

std::string to_string(const SweepResult& result, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::csv) {
        emit_csv(result, out);
    } else {
        emit_json(result, out);
    }
    return out.str();
}

void emit(const SweepResult& result, OutputFormat format, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path.string());
    out << to_string(result, format);
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

std::string joint_report_json(const JointOptimizationReport& report, const SweepSpec& spec) {
    const std::string echo = serialize_config(spec);
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(echo, fnv1a64(echo));

    nlohmann::ordered_json res;
    res["theta_star_deg"] = report.theta_modal.value;
    res["phi_star_deg"] = report.phi_modal.value;
    res["modal_count"] = report.modal_count;
    res["trials"] = report.trials;
    res["mean_snr_db"] = db_value(report.mean_snr_db);
    res["std_snr_db"] = db_value(report.std_snr_db);

    std::map<std::pair<double, double>, int> counts;
    for (const OptimizationResult& r : report.per_trial) {
        ++counts[{r.theta_star.value, r.phi_star.value}];
    }
    std::vector<std::pair<std::pair<double, double>, int>> hist(counts.begin(), counts.end());
    std::sort(hist.begin(), hist.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    nlohmann::ordered_json hj = nlohmann::ordered_json::array();
    for (const auto& [angles, count] : hist) {
        nlohmann::ordered_json e;
        e["theta_deg"] = angles.first;
        e["phi_deg"] = angles.second;
        e["count"] = count;
        hj.push_back(std::move(e));
    }
    res["argmax_histogram"] = std::move(hj);
    j["result"] = std::move(res);

    std::ostringstream out;
    out << j.dump(2) << "\n";
    return out.str();
}

} // namespace risbeam
