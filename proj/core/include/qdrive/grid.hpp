#pragma once

#include <cstdint>
#include <vector>

namespace qdrive {

/**
 * Uniform spatial grid of 2^n points on [-L, L], symmetric about zero:
 * dx = 2L/(2^n - 1), x_j = -L + j*dx. Momentum spacing dk = 2*pi/(2^n * dx)
 * with frequencies in standard FFT ordering.
 */
struct SpatialGrid {
    int n = 6;           // qubits / log2(points)
    double half_width = 10.0;  // L, in oscillator lengths

    std::uint64_t size() const { return std::uint64_t{1} << n; }
    double dx() const { return 2.0 * half_width / static_cast<double>(size() - 1); }
    double dk() const;

    /// Position of grid point j.
    double x(std::uint64_t j) const { return -half_width + static_cast<double>(j) * dx(); }

    /// Momentum of FFT-ordered index m (m < 2^{n-1}: m*dk, else (m - 2^n)*dk).
    double k_fft(std::uint64_t m) const;

    std::vector<double> x_values() const;
    std::vector<double> k_fft_values() const;
};

}  // namespace qdrive
