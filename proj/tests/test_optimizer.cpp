#include <doctest.h>

#include <cmath>
#include <numbers>

#include "risbeam/errors.hpp"
#include "risbeam/optimizer.hpp"

using namespace risbeam;

namespace {

constexpr double kPi = std::numbers::pi;

ChannelSet random_channel(std::size_t m, std::size_t n, RandomStream& rng) {
    ChannelSet ch;
    ch.h_d.resize(m);
    ch.g.resize(n);
    ch.h_r = CMat(n, m);
    for (cxd& x : ch.h_d) x = rng.next_cgaussian();
    for (cxd& x : ch.g) x = rng.next_cgaussian();
    for (cxd& x : ch.h_r.data) x = rng.next_cgaussian();
    return ch;
}

Scenario small_scenario(int m, int n, RandomStream& rng) {
    Scenario s = reference_scenario();
    s.m_antennas = m;
    s.n_elements = n;
    s.theta_ris_o = AngleDeg{rng.next_uniform(-90.0, 90.0)};
    s.phi_ris_o = AngleDeg{rng.next_uniform(0.0, 180.0)};
    s.theta_ue = AngleDeg{rng.next_uniform(-90.0, 90.0)};
    s.phi_ue = AngleDeg{rng.next_uniform(0.0, 180.0)};
    return s;
}

// Perfect alignment closed form for M = 1: every reflected term can be
// rotated onto the direct term, so the optimum is the sum of magnitudes.
double m1_closed_form(const LinkGains& gains, double beta, const ChannelSet& ch,
                      double noise_power) {
    double amp = std::sqrt(gains.alpha_d) * std::abs(ch.h_d[0]);
    for (std::size_t i = 0; i < ch.n(); ++i) {
        amp += std::sqrt(gains.alpha_r) * beta * std::abs(ch.g[i]) * std::abs(ch.h_r.at(i, 0));
    }
    return amp * amp / noise_power;
}

void check_monotone(const std::vector<double>& trace) {
    for (std::size_t k = 1; k < trace.size(); ++k) {
        CHECK(trace[k] >= trace[k - 1] - 1e-12 * std::max(trace[k - 1], 1e-300));
    }
}

} // namespace

TEST_SUITE("optimizer") {

TEST_CASE("strategy names round trip") {
    for (auto kind : {PhaseStrategy::Kind::optimal, PhaseStrategy::Kind::random,
                      PhaseStrategy::Kind::zero_phase, PhaseStrategy::Kind::no_ris}) {
        CHECK(strategy_from_name(strategy_name(kind)) == kind);
    }
    CHECK_THROWS_AS(strategy_from_name("best"), ConfigError);
}

TEST_CASE("baseline phases") {
    PhaseStrategy zero;
    zero.kind = PhaseStrategy::Kind::zero_phase;
    RandomStream rng(1);
    CHECK(baseline_phases(zero, 4, rng).values() == std::vector<double>{0.0, 0.0, 0.0, 0.0});

    PhaseStrategy random;
    random.kind = PhaseStrategy::Kind::random;
    RandomStream r1 = derive_stream(5, 0);
    RandomStream r2 = derive_stream(5, 0);
    CHECK(baseline_phases(random, 6, r1).values() == baseline_phases(random, 6, r2).values());

    RandomStream r3(123);
    const PhaseVector big = baseline_phases(random, 10000, r3);
    double mean = 0.0;
    for (double p : big.values()) mean += p;
    mean /= 10000.0;
    CHECK(mean > 0.95 * kPi);
    CHECK(mean < 1.05 * kPi);

    PhaseStrategy opt;
    CHECK_THROWS_AS(baseline_phases(opt, 4, rng), PreconditionError);
}

TEST_CASE("optimize_phases rejects an empty RIS") {
    RandomStream rng(2);
    const ChannelSet ch = random_channel(4, 0, rng);
    PhaseStrategy strat;
    CHECK_THROWS_AS(optimize_phases(LinkGains{1.0, 1.0}, 1.0, 1.0, view_of(ch), strat, rng),
                    PreconditionError);
}

TEST_CASE("zero reflected terms converge in one sweep") {
    RandomStream rng(3);
    ChannelSet ch = random_channel(5, 3, rng);
    for (cxd& x : ch.g) x = cxd{0.0, 0.0};
    PhaseStrategy strat;
    const auto r = optimize_phases(LinkGains{0.5, 0.8}, 0.9, 1.0, view_of(ch), strat, rng);
    CHECK(r.sweeps_used == 1);
    CHECK(r.objective == doctest::Approx(0.5 * norm_sq(ch.h_d)).epsilon(1e-12));
    for (const auto& trace : r.update_traces) check_monotone(trace);
}

TEST_CASE("M = 1 attains the perfect-alignment closed form") {
    RandomStream rng(4);
    PhaseStrategy strat;
    strat.tol = 1e-12; // leave headroom below the 1e-9 comparison
    for (int i = 0; i < 25; ++i) {
        const std::size_t n = 1 + rng.next_u64() % 8;
        const ChannelSet ch = random_channel(1, n, rng);
        const LinkGains gains{i % 5 == 0 ? 0.0 : rng.next_uniform(0.0, 1.0),
                              rng.next_uniform(0.1, 1.0)};
        const double beta = rng.next_uniform(0.1, 1.0);
        const auto r = optimize_phases(gains, beta, 1.0, view_of(ch), strat, rng);
        CHECK(r.snr.linear ==
              doctest::Approx(m1_closed_form(gains, beta, ch, 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("N = 1 equals a dense brute-force grid over the single phase") {
    RandomStream rng(6);
    PhaseStrategy strat;
    for (int i = 0; i < 10; ++i) {
        const std::size_t m = 1 + rng.next_u64() % 6;
        const ChannelSet ch = random_channel(m, 1, rng);
        const LinkGains gains{rng.next_uniform(0.0, 1.0), rng.next_uniform(0.1, 1.0)};
        const double beta = rng.next_uniform(0.1, 1.0);
        const auto r = optimize_phases(gains, beta, 1.0, view_of(ch), strat, rng);

        double grid_best = 0.0;
        for (int k = 0; k < 3600; ++k) {
            const PhaseVector psi({2.0 * kPi * k / 3600.0});
            const EffectiveChannel h = effective_channel(gains, beta, psi, view_of(ch));
            grid_best = std::max(grid_best, norm_sq(h.h_eff));
        }
        // quantization gap bound: 2 * (pi/3600) * ||b1|| * (||a0|| + ||b1||)
        double b_norm = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            b_norm += std::norm(std::sqrt(gains.alpha_r) * beta * ch.g[0] * ch.h_r.at(0, k));
        }
        b_norm = std::sqrt(b_norm);
        const double a_norm = std::sqrt(gains.alpha_d * norm_sq(ch.h_d));
        const double gap = 2.0 * (kPi / 3600.0) * b_norm * (a_norm + b_norm);
        CHECK(r.objective >= grid_best - 1e-12 * grid_best);
        CHECK(r.objective <= grid_best + gap);

        // the first coordinate update already reaches the optimum
        CHECK(r.update_traces[0][1] == doctest::Approx(r.snr.linear).epsilon(1e-9));
    }
}

TEST_CASE("every update trace is monotone") {
    RandomStream rng(8);
    for (int i = 0; i < 60; ++i) {
        const std::size_t m = 1 + rng.next_u64() % 8;
        const std::size_t n = 1 + rng.next_u64() % 32;
        const ChannelSet ch = random_channel(m, n, rng);
        const LinkGains gains{rng.next_uniform(0.0, 1.0), rng.next_uniform(0.0, 1.0)};
        PhaseStrategy strat;
        const auto r = optimize_phases(gains, 0.8, 1.0, view_of(ch), strat, rng);
        CHECK(r.update_traces.size() == 4);
        for (const auto& trace : r.update_traces) check_monotone(trace);
        check_monotone(r.sweep_trace);
    }
}

TEST_CASE("optimal dominates the zero-phase and random baselines") {
    RandomStream rng(9);
    PhaseStrategy opt;
    PhaseStrategy rnd;
    rnd.kind = PhaseStrategy::Kind::random;
    for (int i = 0; i < 40; ++i) {
        const std::size_t m = 1 + rng.next_u64() % 8;
        const std::size_t n = 1 + rng.next_u64() % 16;
        const ChannelSet ch = random_channel(m, n, rng);
        const LinkGains gains{rng.next_uniform(0.0, 1.0), rng.next_uniform(0.1, 1.0)};
        const double beta = rng.next_uniform(0.1, 1.0);
        const auto r = optimize_phases(gains, beta, 1.0, view_of(ch), opt, rng);

        const EffectiveChannel hz =
            effective_channel(gains, beta, PhaseVector::zeros(n), view_of(ch));
        CHECK(r.objective >= norm_sq(hz.h_eff) * (1.0 - 1e-12));

        for (int k = 0; k < 5; ++k) {
            const PhaseVector psi = baseline_phases(rnd, n, rng);
            const EffectiveChannel hr = effective_channel(gains, beta, psi, view_of(ch));
            CHECK(r.objective >= norm_sq(hr.h_eff) - 1e-9);
        }
    }
}

TEST_CASE("coordinate ascent reaches the exhaustive oracle") {
    RandomStream rng(10);
    PhaseStrategy strat;
    strat.tol = 1e-12;
    const int levels = 64;
    int idx = 0;
    for (int n = 1; n <= 3; ++n) {
        for (int m : {1, 2, 4}) {
            for (int rep = 0; rep < 2; ++rep, ++idx) {
                Scenario s = small_scenario(m, n, rng);
                RandomStream ch_rng = derive_stream(100, idx);
                const ChannelSet ch = random_channel(m, n, ch_rng);
                const SteeringAngles a{AngleDeg{rng.next_uniform(-90.0, 90.0)},
                                       AngleDeg{rng.next_uniform(0.0, 180.0)}};
                const auto oracle = quantized_phase_oracle(s, a, ch, levels);
                RandomStream opt_rng(idx);
                const auto ca = optimize_phases(s, a, ch, strat, opt_rng);

                // epsilon_q = 2 (pi/levels) (sum ||b_i||) (||a0|| + sum ||b_j||)
                const LinkGains gains = link_gains(s, a);
                const double beta = reflection_amplitude(s.ris, a.theta_bs, a.phi_bs);
                double sum_b = 0.0;
                for (int i = 0; i < n; ++i) {
                    double row = 0.0;
                    for (int k = 0; k < m; ++k) {
                        row += std::norm(std::sqrt(gains.alpha_r) * beta * ch.g[i] *
                                         ch.h_r.at(i, k));
                    }
                    sum_b += std::sqrt(row);
                }
                const double a_norm = std::sqrt(gains.alpha_d * norm_sq(ch.h_d));
                const double eps_q = 2.0 * (kPi / levels) * sum_b * (a_norm + sum_b);
                CHECK(ca.snr.linear >= oracle.snr.linear - eps_q / s.noise_power - 1e-12);
            }
        }
    }
}

TEST_CASE("quantized oracle guards its domain") {
    RandomStream rng(12);
    Scenario s = small_scenario(2, 1, rng);
    const ChannelSet ch1 = random_channel(2, 1, rng);
    CHECK_THROWS_AS(quantized_phase_oracle(s, {AngleDeg{0}, AngleDeg{90}}, ch1, 1),
                    PreconditionError);

    s.n_elements = 0;
    const ChannelSet ch0 = random_channel(2, 0, rng);
    CHECK_THROWS_AS(quantized_phase_oracle(s, {AngleDeg{0}, AngleDeg{90}}, ch0, 64),
                    PreconditionError);

    s.n_elements = 4;
    const ChannelSet ch4 = random_channel(2, 4, rng);
    CHECK_THROWS_AS(quantized_phase_oracle(s, {AngleDeg{0}, AngleDeg{90}}, ch4, 100),
                    PreconditionError); // 100^4 = 1e8 > guard

    s.n_elements = 5;
    const ChannelSet ch5 = random_channel(2, 5, rng);
    CHECK_THROWS_AS(quantized_phase_oracle(s, {AngleDeg{0}, AngleDeg{90}}, ch5, 4),
                    PreconditionError);
}

TEST_CASE("quantized oracle picks the aligned phase") {
    Scenario s = reference_scenario();
    s.m_antennas = 1;
    s.n_elements = 1;
    s.theta_ue = AngleDeg{0.0};
    s.phi_ue = AngleDeg{90.0};
    s.theta_ris_o = AngleDeg{0.0};
    s.phi_ris_o = AngleDeg{90.0};
    ChannelSet ch;
    ch.h_d = {cxd{1.0, 0.0}};
    ch.g = {cxd{1.0, 0.0}};
    ch.h_r = CMat(1, 1);
    ch.h_r.at(0, 0) = cxd{1.0, 0.0};
    const auto oracle = quantized_phase_oracle(s, {AngleDeg{0.0}, AngleDeg{90.0}}, ch, 4);
    CHECK(oracle.psi.values() == std::vector<double>{0.0});
    CHECK(oracle.snr.linear == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("grid axes enumerate min + k step") {
    AngleGrid g;
    g.theta_min = AngleDeg{-2.0};
    g.theta_max = AngleDeg{2.0};
    g.theta_step = AngleDeg{1.0};
    CHECK(g.theta_values() == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
    g.phi_min = AngleDeg{10.0};
    g.phi_max = AngleDeg{10.0};
    g.phi_step = AngleDeg{2.0};
    CHECK(g.phi_values() == std::vector<double>{10.0});
    CHECK(validate(g).empty());

    g.theta_step = AngleDeg{0.0};
    CHECK(!validate(g).empty());
}

TEST_CASE("grid_search returns the argmax with deterministic ties") {
    RandomStream rng(14);
    Scenario s = reference_scenario();
    s.m_antennas = 4;
    s.n_elements = 2;
    const ChannelSet ch = random_channel(4, 2, rng);

    SUBCASE("single point grid") {
        AngleGrid g;
        g.theta_min = g.theta_max = AngleDeg{-20.0};
        g.phi_min = g.phi_max = AngleDeg{10.0};
        PhaseStrategy strat;
        RandomStream st(1);
        const auto res = grid_search(s, g, ch, strat, st);
        CHECK(res.theta_star.value == -20.0);
        CHECK(res.phi_star.value == 10.0);
        RandomStream st2(2);
        const auto direct = optimize_phases(s, {res.theta_star, res.phi_star}, ch, strat, st2);
        CHECK(res.snr_linear == doctest::Approx(direct.snr.linear).epsilon(1e-9));

        // recomputing through the link module at the reported argmax agrees
        const EffectiveChannel h =
            effective_channel(s, {res.theta_star, res.phi_star}, res.psi_star, ch);
        CHECK(res.snr_linear == doctest::Approx(snr(s, h).linear).epsilon(1e-9));
    }

    SUBCASE("no_ris argmax lands on the UE direction") {
        AngleGrid g;
        g.theta_min = AngleDeg{-30.0};
        g.theta_max = AngleDeg{-10.0};
        g.theta_step = AngleDeg{2.0};
        g.phi_min = AngleDeg{6.0};
        g.phi_max = AngleDeg{14.0};
        g.phi_step = AngleDeg{2.0};
        PhaseStrategy strat;
        strat.kind = PhaseStrategy::Kind::no_ris;
        RandomStream st(3);
        const auto res = grid_search(s, g, ch, strat, st);
        CHECK(res.theta_star.value == -20.0);
        CHECK(res.phi_star.value == 10.0);
    }

    SUBCASE("symmetric objective breaks ties toward smaller theta") {
        AngleGrid g;
        g.theta_min = AngleDeg{-22.0};
        g.theta_max = AngleDeg{-18.0};
        g.theta_step = AngleDeg{4.0}; // points at -22 and -18, symmetric around the UE
        g.phi_min = g.phi_max = AngleDeg{10.0};
        PhaseStrategy strat;
        strat.kind = PhaseStrategy::Kind::no_ris;
        RandomStream st(4);
        const auto res = grid_search(s, g, ch, strat, st);
        CHECK(res.theta_star.value == -22.0);
    }

    SUBCASE("noise power scaling never changes the winner") {
        AngleGrid g;
        g.theta_min = AngleDeg{-40.0};
        g.theta_max = AngleDeg{0.0};
        g.theta_step = AngleDeg{10.0};
        g.phi_min = AngleDeg{10.0};
        g.phi_max = AngleDeg{50.0};
        g.phi_step = AngleDeg{20.0};
        PhaseStrategy strat;
        RandomStream st1(5);
        const auto res1 = grid_search(s, g, ch, strat, st1);
        Scenario scaled = s;
        scaled.noise_power = 1e6;
        RandomStream st2(5);
        const auto res2 = grid_search(scaled, g, ch, strat, st2);
        CHECK(res1.theta_star.value == res2.theta_star.value);
        CHECK(res1.phi_star.value == res2.phi_star.value);
        CHECK(res1.psi_star.values() == res2.psi_star.values());
        CHECK(res1.snr_linear == doctest::Approx(res2.snr_linear * 1e6).epsilon(1e-12));
    }

    SUBCASE("objective trace of the winner is monotone") {
        AngleGrid g;
        g.theta_min = AngleDeg{-40.0};
        g.theta_max = AngleDeg{-20.0};
        g.theta_step = AngleDeg{20.0};
        g.phi_min = g.phi_max = AngleDeg{30.0};
        PhaseStrategy strat;
        RandomStream st(6);
        const auto res = grid_search(s, g, ch, strat, st);
        check_monotone(res.objective_trace);
        CHECK(res.sweeps_used >= 1);
    }
}

TEST_CASE("grid_search rejects empty or invalid grids") {
    RandomStream rng(15);
    Scenario s = reference_scenario();
    s.m_antennas = 2;
    s.n_elements = 1;
    const ChannelSet ch = random_channel(2, 1, rng);
    AngleGrid g;
    g.theta_min = AngleDeg{10.0};
    g.theta_max = AngleDeg{-10.0};
    PhaseStrategy strat;
    RandomStream st(1);
    CHECK_THROWS_AS(grid_search(s, g, ch, strat, st), PreconditionError);
}

TEST_CASE("identical streams reproduce the optimization") {
    RandomStream rng(16);
    const ChannelSet ch = random_channel(6, 9, rng);
    PhaseStrategy strat;
    RandomStream s1 = derive_stream(55, 1);
    RandomStream s2 = derive_stream(55, 1);
    const auto r1 = optimize_phases(LinkGains{0.3, 0.9}, 0.7, 1.0, view_of(ch), strat, s1);
    const auto r2 = optimize_phases(LinkGains{0.3, 0.9}, 0.7, 1.0, view_of(ch), strat, s2);
    CHECK(r1.psi.values() == r2.psi.values());
    CHECK(r1.snr.linear == r2.snr.linear);
}

} // TEST_SUITE
