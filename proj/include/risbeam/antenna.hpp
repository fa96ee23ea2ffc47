#pragma once

#include <limits>

#include "risbeam/angles.hpp"

namespace risbeam {

// Sidelobe floors default to "no floor".
inline constexpr double kNoFloor = std::numeric_limits<double>::infinity();

// Parametric BS array pattern: parabolic attenuation in each plane, clamped
// by optional sidelobe floors, combined into one directional gain.
struct AntennaPattern {
    AngleDeg theta_3db{15.0};    // vertical 3dB beamwidth, > 0
    AngleDeg phi_3db{65.0};      // horizontal 3dB beamwidth, > 0
    double a_max_db = 0.0;       // peak directional gain, dB
    double a_m_v_db = kNoFloor;  // vertical sidelobe floor, dB
    double a_m_h_db = kNoFloor;  // horizontal sidelobe floor, dB
    double a_m_db = kNoFloor;    // combined sidelobe floor, dB
};

// min[12 ((theta_bs - theta_o) / theta_3db)^2, A_m^V], in dB.
double attenuation_vertical_db(const AntennaPattern& p, AngleDeg theta_bs, AngleDeg theta_o);

// min[12 ((phi_bs - phi_o) / phi_3db)^2, A_m^H], in dB.
double attenuation_horizontal_db(const AntennaPattern& p, AngleDeg phi_bs, AngleDeg phi_o);

// A_max - min(A_V + A_H, A_m), in dB.
double gain_db(const AntennaPattern& p, AngleDeg theta_bs, AngleDeg phi_bs, AngleDeg theta_o,
               AngleDeg phi_o);

// 10^(gain_db / 10); equals alpha_max at zero offsets.
double gain_linear(const AntennaPattern& p, AngleDeg theta_bs, AngleDeg phi_bs, AngleDeg theta_o,
                   AngleDeg phi_o);

} // namespace risbeam
