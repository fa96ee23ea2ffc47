#include "risbeam/antenna.hpp"

#include <algorithm>
#include <cmath>

namespace risbeam {

double attenuation_vertical_db(const AntennaPattern& p, AngleDeg theta_bs, AngleDeg theta_o) {
    const double off = (theta_bs.value - theta_o.value) / p.theta_3db.value;
    return std::min(12.0 * off * off, p.a_m_v_db);
}

double attenuation_horizontal_db(const AntennaPattern& p, AngleDeg phi_bs, AngleDeg phi_o) {
    const double off = (phi_bs.value - phi_o.value) / p.phi_3db.value;
    return std::min(12.0 * off * off, p.a_m_h_db);
}

double gain_db(const AntennaPattern& p, AngleDeg theta_bs, AngleDeg phi_bs, AngleDeg theta_o,
               AngleDeg phi_o) {
    const double av = attenuation_vertical_db(p, theta_bs, theta_o);
    const double ah = attenuation_horizontal_db(p, phi_bs, phi_o);
    return p.a_max_db - std::min(av + ah, p.a_m_db);
}

double gain_linear(const AntennaPattern& p, AngleDeg theta_bs, AngleDeg phi_bs, AngleDeg theta_o,
                   AngleDeg phi_o) {
    return std::pow(10.0, gain_db(p, theta_bs, phi_bs, theta_o, phi_o) / 10.0);
}

} // namespace risbeam
