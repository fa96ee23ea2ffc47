#include "risbeam/scenario.hpp"

#include <cmath>
#include <sstream>

#include "kvconfig.hpp"
#include "risbeam/errors.hpp"

namespace risbeam {

Scenario reference_scenario() { return Scenario{}; }

namespace {

bool angle_ok(AngleDeg a, double lo, double hi) {
    return std::isfinite(a.value) && a.value >= lo && a.value <= hi;
}

void check_angle(std::vector<std::string>& errs, AngleDeg a, double lo, double hi,
                 const char* range_code) {
    if (!std::isfinite(a.value)) {
        errs.emplace_back("angle_not_finite");
    } else if (!angle_ok(a, lo, hi)) {
        errs.emplace_back(range_code);
    }
}

} // namespace

std::vector<std::string> validate(const Scenario& s) {
    std::vector<std::string> errs;
    if (s.m_antennas < 1) errs.emplace_back("m_antennas_nonpositive");
    if (s.n_elements < 0) errs.emplace_back("n_elements_negative");

    check_angle(errs, s.theta_ris_o, -90.0, 90.0, "theta_out_of_range");
    check_angle(errs, s.theta_ue, -90.0, 90.0, "theta_out_of_range");
    check_angle(errs, s.phi_ris_o, 0.0, 180.0, "phi_out_of_range");
    check_angle(errs, s.phi_ue, 0.0, 180.0, "phi_out_of_range");

    const AntennaPattern& p = s.antenna;
    if (!(std::isfinite(p.theta_3db.value) && p.theta_3db.value > 0.0)) {
        errs.emplace_back("theta_3db_nonpositive");
    }
    if (!(std::isfinite(p.phi_3db.value) && p.phi_3db.value > 0.0)) {
        errs.emplace_back("phi_3db_nonpositive");
    }
    if (std::isnan(p.a_max_db) || std::isinf(p.a_max_db)) errs.emplace_back("a_max_not_finite");
    // Floors are >= 0 dB or the distinguished infinity.
    for (double floor_db : {p.a_m_v_db, p.a_m_h_db, p.a_m_db}) {
        if (std::isnan(floor_db) || floor_db < 0.0) {
            errs.emplace_back("sidelobe_floor_negative");
            break;
        }
    }

    if (!(std::isfinite(s.ris.k1) && s.ris.k1 >= 0.0 && s.ris.k1 <= 1.0)) {
        errs.emplace_back("k1_out_of_range");
    }
    if (!(std::isfinite(s.ris.k2) && s.ris.k2 >= 0.0 && s.ris.k2 <= 1.0)) {
        errs.emplace_back("k2_out_of_range");
    }
    if (std::isfinite(s.ris.k1) && std::isfinite(s.ris.k2) &&
        std::abs(s.ris.k1 + s.ris.k2 - 1.0) > 1e-9) {
        errs.emplace_back("k_sum_not_one");
    }

    if (!(std::isfinite(s.noise_power) && s.noise_power > 0.0)) {
        errs.emplace_back("noise_power_nonpositive");
    }
    return errs;
}

void require_valid(const Scenario& s) {
    auto errs = validate(s);
    if (!errs.empty()) throw ValidationError(std::move(errs));
}

std::string serialize_config(const Scenario& s) {
    using kv::format_double;
    std::ostringstream out;
    out << "m_antennas = " << s.m_antennas << "\n";
    out << "n_elements = " << s.n_elements << "\n";
    out << "theta_ris_deg = " << format_double(s.theta_ris_o.value) << "\n";
    out << "phi_ris_deg = " << format_double(s.phi_ris_o.value) << "\n";
    out << "theta_ue_deg = " << format_double(s.theta_ue.value) << "\n";
    out << "phi_ue_deg = " << format_double(s.phi_ue.value) << "\n";
    out << "theta_3db_deg = " << format_double(s.antenna.theta_3db.value) << "\n";
    out << "phi_3db_deg = " << format_double(s.antenna.phi_3db.value) << "\n";
    out << "a_max_db = " << format_double(s.antenna.a_max_db) << "\n";
    out << "a_m_v_db = " << format_double(s.antenna.a_m_v_db) << "\n";
    out << "a_m_h_db = " << format_double(s.antenna.a_m_h_db) << "\n";
    out << "a_m_db = " << format_double(s.antenna.a_m_db) << "\n";
    out << "k1 = " << format_double(s.ris.k1) << "\n";
    out << "k2 = " << format_double(s.ris.k2) << "\n";
    out << "noise_power = " << format_double(s.noise_power) << "\n";
    out << "seed = " << s.seed << "\n";
    return out.str();
}

Scenario scenario_from_kv(const kv::KvFile& f) {
    Scenario s;
    s.m_antennas = f.get_int("m_antennas", s.m_antennas);
    s.n_elements = f.get_int("n_elements", s.n_elements);
    s.theta_ris_o.value = f.get_double("theta_ris_deg", s.theta_ris_o.value);
    s.phi_ris_o.value = f.get_double("phi_ris_deg", s.phi_ris_o.value);
    s.theta_ue.value = f.get_double("theta_ue_deg", s.theta_ue.value);
    s.phi_ue.value = f.get_double("phi_ue_deg", s.phi_ue.value);
    s.antenna.theta_3db.value = f.get_double("theta_3db_deg", s.antenna.theta_3db.value);
    s.antenna.phi_3db.value = f.get_double("phi_3db_deg", s.antenna.phi_3db.value);
    s.antenna.a_max_db = f.get_double("a_max_db", s.antenna.a_max_db);
    s.antenna.a_m_v_db = f.get_double("a_m_v_db", s.antenna.a_m_v_db);
    s.antenna.a_m_h_db = f.get_double("a_m_h_db", s.antenna.a_m_h_db);
    s.antenna.a_m_db = f.get_double("a_m_db", s.antenna.a_m_db);
    s.ris.k1 = f.get_double("k1", s.ris.k1);
    s.ris.k2 = f.get_double("k2", s.ris.k2);
    s.noise_power = f.get_double("noise_power", s.noise_power);
    s.seed = f.get_u64("seed", s.seed);
    return s;
}

Scenario parse_scenario_config(const std::string& text) {
    return scenario_from_kv(kv::KvFile::parse(text));
}

} // namespace risbeam
