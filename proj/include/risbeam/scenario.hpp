#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "risbeam/angles.hpp"
#include "risbeam/antenna.hpp"
#include "risbeam/ris.hpp"

namespace risbeam {

// Every fixed parameter of one experiment: geometry angles, antenna pattern,
// RIS constants, noise power and the randomness seed. Immutable by convention
// after construction; all other modules read from it.
//
// The defaults are the reference setup: M=64 antennas, a 15x65 degree
// pattern at 0 dB peak gain, RIS at (-40, 50) degrees, UE at (-20, 10)
// degrees, K1/K2 = 0.9/0.1, unit noise power. Vertical angles live in
// [-90, 90] degrees; horizontal angles in the steering domain [0, 180].
struct Scenario {
    int m_antennas = 64;         // BS array size M, >= 1
    int n_elements = 32;         // RIS element count N; 0 = no-RIS baseline
    AngleDeg theta_ris_o{-40.0}; // RIS direction from the BS, vertical
    AngleDeg phi_ris_o{50.0};    // RIS direction from the BS, horizontal
    AngleDeg theta_ue{-20.0};    // UE direction from the BS, vertical
    AngleDeg phi_ue{10.0};       // UE direction from the BS, horizontal
    AntennaPattern antenna;
    RisConfig ris;
    double noise_power = 1.0;    // sigma^2, linear scale, > 0
    std::uint64_t seed = 0;      // channel generation seed
};

// The reference simulation setup (equal to a default-constructed Scenario).
Scenario reference_scenario();

// Full list of violated invariants as machine-readable codes; empty = valid.
// Never mutates.
std::vector<std::string> validate(const Scenario& s);

// Throws ValidationError carrying the codes if validate(s) is non-empty.
void require_valid(const Scenario& s);

// Flat key = value form; doubles are written in shortest round-trip decimal,
// so parse(serialize(s)) == s field for field.
std::string serialize_config(const Scenario& s);

// Reads the scenario keys from config text; unknown keys are ignored (the
// sweep schema layers on the same file). Missing keys keep their defaults.
Scenario parse_scenario_config(const std::string& text);

} // namespace risbeam
