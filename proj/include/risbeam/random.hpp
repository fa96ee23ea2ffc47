#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace risbeam {

// SplitMix64 finalizer over (key, tag); used for all stream derivation.
std::uint64_t mix_key(std::uint64_t key, std::uint64_t tag);

// Key-derived random stream. The 64-bit key alone determines the whole
// sequence, so streams can be re-derived in any order and handed to any
// thread without coordination.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t key) : key_(key), engine_(key) {}

    // Independent child stream; depends only on (key, tag), not on how much
    // of this stream has been consumed.
    RandomStream fork(std::uint64_t tag) const { return RandomStream(mix_key(key_, tag)); }

    std::uint64_t key() const { return key_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_uniform();
    double next_uniform(double lo, double hi);

    // Standard normal via Box-Muller (explicit, so sequences do not depend
    // on the standard library's distribution internals).
    double next_gaussian();

    // Circularly-symmetric complex Gaussian, zero mean, unit variance:
    // real and imaginary parts independent N(0, 1/2).
    std::complex<double> next_cgaussian();

  private:
    std::uint64_t key_;
    std::mt19937_64 engine_;
};

// Stream for one Monte Carlo trial: same (seed, trial_index) always yields
// the same stream, independent of execution order.
RandomStream derive_stream(std::uint64_t seed, std::uint64_t trial_index);

} // namespace risbeam
