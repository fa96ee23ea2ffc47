#include "risbeam/random.hpp"

#include <cmath>
#include <numbers>

namespace risbeam {

std::uint64_t mix_key(std::uint64_t key, std::uint64_t tag) {
    std::uint64_t z = key + 0x9e3779b97f4a7c15ull * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double RandomStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_uniform();
}

double RandomStream::next_gaussian() {
    const double u1 = 1.0 - next_uniform(); // (0, 1], keeps log finite
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> RandomStream::next_cgaussian() {
    const double u1 = 1.0 - next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-std::log(u1)); // |z|^2 ~ Exp(1)
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

RandomStream derive_stream(std::uint64_t seed, std::uint64_t trial_index) {
    return RandomStream(mix_key(seed, trial_index));
}

} // namespace risbeam
