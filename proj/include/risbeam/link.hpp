#pragma once

#include "risbeam/channel.hpp"
#include "risbeam/ris.hpp"
#include "risbeam/scenario.hpp"

namespace risbeam {

// BS main-beam steering direction.
struct SteeringAngles {
    AngleDeg theta_bs;
    AngleDeg phi_bs;
};

// Linear BS gains: alpha_d toward the UE (direct path), alpha_r toward the
// RIS (reflected path). Both are gain_linear evaluated at the steering
// offsets, so both peak at alpha_max.
struct LinkGains {
    double alpha_d = 0.0;
    double alpha_r = 0.0;
};

// Combined direct-plus-reflected channel seen by the UE, stored as the
// column vector h_eff whose conjugate transpose multiplies the beamformer:
//   h_eff^H = sqrt(alpha_d) h_d^H + sqrt(alpha_r) g^H Omega H_r.
struct EffectiveChannel {
    CVec h_eff; // length M
};

// Unit-norm transmit beamformer.
struct Beamformer {
    CVec w;
};

struct Snr {
    double linear = 0.0;
    double db = 0.0; // -inf when linear == 0
};

LinkGains link_gains(const Scenario& s, const SteeringAngles& a);

EffectiveChannel effective_channel(const Scenario& s, const SteeringAngles& a,
                                   const PhaseVector& psi, const ChannelSet& ch);

// Gain-explicit form; lets tests and diagnostics force either path off.
// Throws DimensionError when psi or the channel blocks disagree in size.
EffectiveChannel effective_channel(const LinkGains& gains, double reflection_amplitude,
                                   const PhaseVector& psi, const ChannelView& ch);

// Maximum ratio transmission: w = h_eff / ||h_eff||. Throws ZeroChannelError
// on a zero channel (callers at the experiment level map that to SNR 0).
Beamformer mrt(const EffectiveChannel& h);

// ||h_eff||^2 / sigma^2, the SNR achieved by the MRT beamformer. Zero
// channel yields linear 0 and db = -inf.
Snr snr(const Scenario& s, const EffectiveChannel& h);
Snr snr_from_norm_sq(double h_norm_sq, double noise_power);
double snr_db_from_linear(double linear);

// |h_eff^H w|^2 / sigma^2 for an arbitrary beamformer.
double snr_with_beamformer(const EffectiveChannel& h, const Beamformer& w, double noise_power);

} // namespace risbeam
