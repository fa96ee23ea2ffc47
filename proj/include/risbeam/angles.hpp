#pragma once

#include <numbers>

namespace risbeam {

// Signed angle in degrees. Degrees are the external unit everywhere (configs,
// CSV, grids); conversion to radians happens exactly once, where trigonometry
// needs it.
struct AngleDeg {
    double value = 0.0;

    constexpr double radians() const { return value * (std::numbers::pi / 180.0); }

    friend constexpr bool operator==(AngleDeg a, AngleDeg b) { return a.value == b.value; }
};

} // namespace risbeam
