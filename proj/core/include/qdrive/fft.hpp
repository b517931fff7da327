#pragma once

#include <complex>
#include <vector>

namespace qdrive {

/**
 * In-place iterative radix-2 FFT for power-of-two lengths.
 *
 * Forward: X_k = sum_j x_j e^{-2*pi*i*j*k/N} (unnormalized).
 * Inverse: x_j = (1/N) sum_k X_k e^{+2*pi*i*j*k/N}.
 *
 * Power-of-two lengths are the only case this project needs (2^n grid
 * points); keeping the transform in-tree keeps the classical oracle
 * dependency-free and thread-safe.
 */
void fft_forward(std::vector<std::complex<double>>& data);
void fft_inverse(std::vector<std::complex<double>>& data);

}  // namespace qdrive
