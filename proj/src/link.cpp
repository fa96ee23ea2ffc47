#include "risbeam/link.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "risbeam/antenna.hpp"
#include "risbeam/errors.hpp"

namespace risbeam {

LinkGains link_gains(const Scenario& s, const SteeringAngles& a) {
    LinkGains g;
    g.alpha_d = gain_linear(s.antenna, a.theta_bs, a.phi_bs, s.theta_ue, s.phi_ue);
    g.alpha_r = gain_linear(s.antenna, a.theta_bs, a.phi_bs, s.theta_ris_o, s.phi_ris_o);
    return g;
}

EffectiveChannel effective_channel(const Scenario& s, const SteeringAngles& a,
                                   const PhaseVector& psi, const ChannelSet& ch) {
    if (ch.m() != static_cast<std::size_t>(s.m_antennas) ||
        ch.n() != static_cast<std::size_t>(s.n_elements)) {
        throw DimensionError("effective_channel: channel set is " + std::to_string(ch.n()) + "x" +
                             std::to_string(ch.m()) + ", scenario wants N=" +
                             std::to_string(s.n_elements) + ", M=" + std::to_string(s.m_antennas));
    }
    const double beta = reflection_amplitude(s.ris, a.theta_bs, a.phi_bs);
    return effective_channel(link_gains(s, a), beta, psi, view_of(ch));
}

EffectiveChannel effective_channel(const LinkGains& gains, double reflection_amplitude,
                                   const PhaseVector& psi, const ChannelView& ch) {
    const std::size_t m = ch.m();
    const std::size_t n = ch.n();
    if (psi.size() != n) {
        throw DimensionError("effective_channel: " + std::to_string(psi.size()) +
                             " phases for " + std::to_string(n) + " RIS elements");
    }
    if (n > 0 && (ch.h_r == nullptr || ch.h_r->rows < n || ch.h_r->cols != m)) {
        throw DimensionError("effective_channel: h_r block does not match h_d/g");
    }

    EffectiveChannel h;
    h.h_eff.resize(m);
    const double ad = std::sqrt(gains.alpha_d);
    for (std::size_t k = 0; k < m; ++k) h.h_eff[k] = ad * ch.h_d[k];

    // Column form of sqrt(alpha_r) g^H Omega H_r: each element contributes
    // sqrt(alpha_r) beta e^{-j psi_i} g_i conj(h_r[i, :]).
    const double ar = std::sqrt(gains.alpha_r) * reflection_amplitude;
    for (std::size_t i = 0; i < n; ++i) {
        const cxd coef = ar * ch.g[i] * std::polar(1.0, -psi[i]);
        const auto row = ch.h_r_row(i);
        for (std::size_t k = 0; k < m; ++k) h.h_eff[k] += coef * std::conj(row[k]);
    }
    return h;
}

Beamformer mrt(const EffectiveChannel& h) {
    const double nrm = std::sqrt(norm_sq(h.h_eff));
    if (nrm == 0.0) throw ZeroChannelError("mrt: effective channel is zero");
    Beamformer b;
    b.w.resize(h.h_eff.size());
    for (std::size_t k = 0; k < h.h_eff.size(); ++k) b.w[k] = h.h_eff[k] / nrm;
    return b;
}

double snr_db_from_linear(double linear) {
    if (linear <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(linear);
}

Snr snr_from_norm_sq(double h_norm_sq, double noise_power) {
    Snr out;
    out.linear = h_norm_sq / noise_power;
    out.db = snr_db_from_linear(out.linear);
    return out;
}

Snr snr(const Scenario& s, const EffectiveChannel& h) {
    return snr_from_norm_sq(norm_sq(h.h_eff), s.noise_power);
}

double snr_with_beamformer(const EffectiveChannel& h, const Beamformer& w, double noise_power) {
    if (w.w.size() != h.h_eff.size()) {
        throw DimensionError("snr_with_beamformer: beamformer length mismatch");
    }
    return std::norm(hdot(h.h_eff, w.w)) / noise_power;
}

} // namespace risbeam
