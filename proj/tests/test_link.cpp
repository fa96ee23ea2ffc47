#include <doctest.h>

#include <cmath>
#include <numbers>

#include "risbeam/errors.hpp"
#include "risbeam/link.hpp"

using namespace risbeam;

namespace {

constexpr double kPi = std::numbers::pi;

ChannelSet ones_channel(std::size_t m, std::size_t n) {
    ChannelSet ch;
    ch.h_d.assign(m, cxd{1.0, 0.0});
    ch.g.assign(n, cxd{1.0, 0.0});
    ch.h_r = CMat(n, m);
    for (cxd& x : ch.h_r.data) x = cxd{1.0, 0.0};
    return ch;
}

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

} // namespace

TEST_SUITE("link") {

TEST_CASE("link gains peak at the steered target") {
    const Scenario s = reference_scenario();
    const LinkGains toward_ris = link_gains(s, {s.theta_ris_o, s.phi_ris_o});
    CHECK(toward_ris.alpha_r == 1.0);
    const LinkGains toward_ue = link_gains(s, {s.theta_ue, s.phi_ue});
    CHECK(toward_ue.alpha_d == 1.0);
    // steering at the UE leaves the RIS path attenuated by the offsets
    CHECK(toward_ue.alpha_r == doctest::Approx(0.002583620946208798).epsilon(1e-9));
    CHECK(toward_ris.alpha_d == doctest::Approx(0.002583620946208798).epsilon(1e-9));
}

TEST_CASE("effective channel composes direct and reflected paths") {
    Scenario s = reference_scenario();
    s.m_antennas = 1;
    s.n_elements = 1;
    const ChannelSet ch = ones_channel(1, 1);
    const LinkGains unit{1.0, 1.0};

    SUBCASE("aligned phase adds constructively") {
        const EffectiveChannel h = effective_channel(unit, 1.0, PhaseVector::zeros(1), view_of(ch));
        CHECK(h.h_eff.size() == 1);
        CHECK(std::abs(h.h_eff[0] - cxd{2.0, 0.0}) < 1e-12);
        CHECK(snr_from_norm_sq(norm_sq(h.h_eff), 1.0).linear == doctest::Approx(4.0).epsilon(1e-12));
    }

    SUBCASE("opposite phase cancels") {
        const EffectiveChannel h =
            effective_channel(unit, 1.0, PhaseVector({kPi}), view_of(ch));
        CHECK(std::abs(h.h_eff[0]) < 1e-12);
    }
}

TEST_CASE("an empty RIS reduces to the scaled direct channel") {
    const ChannelSet ch = ones_channel(3, 0);
    const LinkGains gains{0.25, 0.7};
    const EffectiveChannel h = effective_channel(gains, 0.9, PhaseVector{}, view_of(ch));
    for (const cxd& x : h.h_eff) CHECK(x == cxd{0.5, 0.0});
}

TEST_CASE("scenario-level effective channel checks dimensions") {
    const Scenario s = reference_scenario();
    const ChannelSet ch = ones_channel(4, 2); // wrong sizes for M=64, N=32
    CHECK_THROWS_AS(
        effective_channel(s, {AngleDeg{0.0}, AngleDeg{50.0}}, PhaseVector::zeros(2), ch),
        DimensionError);

    const ChannelSet ok = ones_channel(2, 2);
    CHECK_THROWS_AS(
        effective_channel(LinkGains{1.0, 1.0}, 1.0, PhaseVector::zeros(3), view_of(ok)),
        DimensionError);
}

TEST_CASE("doubling g doubles the reflected term exactly") {
    RandomStream rng(21);
    ChannelSet ch = random_channel(5, 3, rng);
    const LinkGains reflected_only{0.0, 0.37};
    const PhaseVector psi({0.3, 1.7, 4.4});
    const EffectiveChannel h1 = effective_channel(reflected_only, 0.8, psi, view_of(ch));
    for (cxd& x : ch.g) x *= 2.0;
    const EffectiveChannel h2 = effective_channel(reflected_only, 0.8, psi, view_of(ch));
    for (std::size_t k = 0; k < h1.h_eff.size(); ++k) {
        CHECK(h2.h_eff[k] == 2.0 * h1.h_eff[k]);
    }
}

TEST_CASE("mrt normalizes the effective channel") {
    SUBCASE("unit basis vector is already the beamformer") {
        EffectiveChannel h;
        h.h_eff = {cxd{1.0, 0.0}, cxd{0.0, 0.0}, cxd{0.0, 0.0}};
        const Beamformer w = mrt(h);
        CHECK(w.w == h.h_eff);
    }

    SUBCASE("hand-checked norm") {
        EffectiveChannel h;
        h.h_eff = {cxd{3.0, 0.0}, cxd{0.0, 4.0}};
        const Beamformer w = mrt(h);
        CHECK(std::abs(norm_sq(w.w) - 1.0) < 1e-12);
        CHECK(snr_with_beamformer(h, w, 1.0) == doctest::Approx(25.0).epsilon(1e-9));
    }

    SUBCASE("positive scaling leaves the beamformer unchanged") {
        RandomStream rng(5);
        ChannelSet ch = random_channel(6, 0, rng);
        EffectiveChannel h;
        h.h_eff = ch.h_d;
        const Beamformer w1 = mrt(h);
        for (cxd& x : h.h_eff) x *= 4.0; // exact scaling by a power of two
        const Beamformer w2 = mrt(h);
        for (std::size_t k = 0; k < w1.w.size(); ++k) {
            CHECK(std::abs(w1.w[k] - w2.w[k]) < 1e-15);
        }
    }

    SUBCASE("zero channel is rejected") {
        EffectiveChannel h;
        h.h_eff = {cxd{0.0, 0.0}};
        CHECK_THROWS_AS(mrt(h), ZeroChannelError);
    }
}

TEST_CASE("snr handles the zero channel explicitly") {
    const Scenario s = reference_scenario();
    EffectiveChannel h;
    h.h_eff.assign(4, cxd{0.0, 0.0});
    const Snr z = snr(s, h);
    CHECK(z.linear == 0.0);
    CHECK(std::isinf(z.db));
    CHECK(z.db < 0.0);

    h.h_eff = {cxd{1.0, 0.0}};
    h.h_eff.resize(4, cxd{0.0, 0.0});
    const Snr unit = snr(s, h);
    CHECK(unit.linear == 1.0);
    CHECK(unit.db == 0.0);
}

TEST_CASE("mrt achieves the highest snr among unit-norm beamformers") {
    RandomStream rng(77);
    for (int instance = 0; instance < 100; ++instance) {
        const ChannelSet ch = random_channel(8, 8, rng);
        std::vector<double> psi(8);
        for (double& p : psi) p = rng.next_uniform(0.0, 2.0 * kPi);
        const EffectiveChannel h =
            effective_channel(LinkGains{0.6, 0.8}, 0.7, PhaseVector(psi), view_of(ch));
        const double best = snr_with_beamformer(h, mrt(h), 1.0);
        CHECK(best == doctest::Approx(norm_sq(h.h_eff)).epsilon(1e-9));
        for (int k = 0; k < 10; ++k) {
            Beamformer w;
            w.w.resize(8);
            for (cxd& x : w.w) x = rng.next_cgaussian();
            const double nrm = std::sqrt(norm_sq(w.w));
            for (cxd& x : w.w) x /= nrm;
            CHECK(snr_with_beamformer(h, w, 1.0) <= best + 1e-9);
        }
    }
}

TEST_CASE("without the reflected path the classical MISO MRT snr appears") {
    RandomStream rng(31);
    const ChannelSet ch = random_channel(16, 4, rng);
    const double alpha_d = 0.42;
    const EffectiveChannel h =
        effective_channel(LinkGains{alpha_d, 0.0}, 0.9, PhaseVector::zeros(4), view_of(ch));
    const double expected = alpha_d * norm_sq(ch.h_d) / 2.0;
    CHECK(snr_from_norm_sq(norm_sq(h.h_eff), 2.0).linear ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("snr via the explicit beamformer matches the norm form") {
    RandomStream rng(13);
    const Scenario s = reference_scenario();
    for (int instance = 0; instance < 50; ++instance) {
        ChannelSet ch = random_channel(64, 32, rng);
        std::vector<double> psi(32);
        for (double& p : psi) p = rng.next_uniform(0.0, 2.0 * kPi);
        const EffectiveChannel h = effective_channel(
            s, {AngleDeg{rng.next_uniform(-90.0, 90.0)}, AngleDeg{rng.next_uniform(0.0, 180.0)}},
            PhaseVector(psi), ch);
        const Snr via_norm = snr(s, h);
        const double via_w = snr_with_beamformer(h, mrt(h), s.noise_power);
        CHECK(via_w == doctest::Approx(via_norm.linear).epsilon(1e-9));
    }
}

} // TEST_SUITE
