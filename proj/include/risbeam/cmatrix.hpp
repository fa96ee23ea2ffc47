#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace risbeam {

using cxd = std::complex<double>;
using CVec = std::vector<cxd>;

// Dense row-major complex matrix; just enough for the N x M channel blocks.
struct CMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    CVec data;

    CMat() = default;
    CMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    std::span<const cxd> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
    std::span<cxd> row(std::size_t i) { return {data.data() + i * cols, cols}; }

    cxd& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const cxd& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

inline double norm_sq(std::span<const cxd> v) {
    double s = 0.0;
    for (const cxd& x : v) s += std::norm(x);
    return s;
}

// a^H b = sum_i conj(a_i) * b_i
inline cxd hdot(std::span<const cxd> a, std::span<const cxd> b) {
    cxd s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

} // namespace risbeam
