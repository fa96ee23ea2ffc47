#include "risbeam/ris.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "risbeam/errors.hpp"

namespace risbeam {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_phase(double psi) {
    double r = psi - kTwoPi * std::floor(psi / kTwoPi);
    if (r >= kTwoPi) r -= kTwoPi; // floor can land exactly on the period
    if (r < 0.0) r = 0.0;
    return r;
}

PhaseVector::PhaseVector(std::vector<double> psi) : psi_(std::move(psi)) {
    for (double& p : psi_) p = wrap_phase(p);
}

PhaseVector PhaseVector::zeros(std::size_t n) {
    PhaseVector v;
    v.psi_.assign(n, 0.0);
    return v;
}

void PhaseVector::set(std::size_t i, double value) { psi_[i] = wrap_phase(value); }

double reflection_amplitude(const RisConfig& cfg, AngleDeg theta, AngleDeg phi) {
    double b = cfg.k1 * std::cos(theta.radians()) * std::sin(phi.radians()) + cfg.k2;
    if (b < 0.0 && b > -1e-12) b = 0.0;
    if (b > 1.0 && b < 1.0 + 1e-12) b = 1.0;
    return b;
}

ReflectionMatrix reflection_matrix(const RisConfig& cfg, const PhaseVector& psi,
                                   std::size_t n_elements, AngleDeg theta, AngleDeg phi) {
    if (psi.size() != n_elements) {
        throw DimensionError("reflection_matrix: phase vector has " + std::to_string(psi.size()) +
                             " entries, expected " + std::to_string(n_elements));
    }
    ReflectionMatrix omega;
    omega.beta = reflection_amplitude(cfg, theta, phi);
    omega.diag.reserve(n_elements);
    for (std::size_t i = 0; i < n_elements; ++i) {
        omega.diag.push_back(std::polar(omega.beta, psi[i]));
    }
    return omega;
}

} // namespace risbeam
