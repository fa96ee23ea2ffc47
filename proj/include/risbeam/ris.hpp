#pragma once

#include <cstddef>
#include <vector>

#include "risbeam/angles.hpp"
#include "risbeam/cmatrix.hpp"

namespace risbeam {

// Reflection-gain constants of the surface. Passive panel: k1 + k2 = 1, so
// the amplitude never exceeds one.
struct RisConfig {
    double k1 = 0.9;
    double k2 = 0.1;
};

// Reduce into [0, 2*pi).
double wrap_phase(double psi);

// Per-element phase shifts, kept wrapped to [0, 2*pi).
class PhaseVector {
  public:
    PhaseVector() = default;
    explicit PhaseVector(std::vector<double> psi);
    static PhaseVector zeros(std::size_t n);

    std::size_t size() const { return psi_.size(); }
    double operator[](std::size_t i) const { return psi_[i]; }
    void set(std::size_t i, double value);
    const std::vector<double>& values() const { return psi_; }

  private:
    std::vector<double> psi_;
};

// Diagonal of the reflection matrix plus the shared amplitude; the full
// matrix is diagonal, so only its diagonal is stored.
struct ReflectionMatrix {
    CVec diag;          // entry i = beta * e^{j psi_i}
    double beta = 0.0;  // incidence-dependent amplitude shared by all elements
};

// k1 * cos(theta) * sin(phi) + k2, evaluated at the BS steering angles
// (the incidence angles at the surface track the steering direction).
// Floating noise just outside [0, 1] is clamped back in.
double reflection_amplitude(const RisConfig& cfg, AngleDeg theta, AngleDeg phi);

// Throws DimensionError unless psi.size() == n_elements.
ReflectionMatrix reflection_matrix(const RisConfig& cfg, const PhaseVector& psi,
                                   std::size_t n_elements, AngleDeg theta, AngleDeg phi);

} // namespace risbeam
