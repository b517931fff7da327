#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qdrive/errors.hpp"

namespace qdrive {

using cplx = std::complex<double>;

/// Dense statevector limit; experiments need n <= 10.
inline constexpr int kMaxQubits = 14;

/**
 * Dense n-qubit register state: 2^n complex amplitudes.
 *
 * Basis index i encodes |q_{n-1}> ⊗ ... ⊗ |q_0> with q_0 the least
 * significant bit of i.
 */
class QubitState {
  public:
    /// Single qubit in |0>.
    QubitState() : QubitState(1, 0) {}

    /// All amplitudes zero except |index> = 1.
    QubitState(int n, std::uint64_t basis_index = 0);

    /// Takes ownership of an amplitude vector; size must be a power of two.
    QubitState(int n, std::vector<cplx> amps);

    int num_qubits() const { return n_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_; }

    std::vector<cplx>& amps() { return amps_; }
    const std::vector<cplx>& amps() const { return amps_; }

    cplx& operator[](std::uint64_t i) { return amps_[i]; }
    const cplx& operator[](std::uint64_t i) const { return amps_[i]; }

    /// Sum of |amplitude|^2.
    double norm_sq() const;

    /// Rescale to unit norm; throws if the state is numerically zero.
    void normalize();

    /// Probability vector |amps_i|^2.
    std::vector<double> probabilities() const;

  private:
    int n_;
    std::vector<cplx> amps_;
};

/// <a|b> = sum_i conj(a_i) b_i. Throws DimensionMismatchError if a.n != b.n.
cplx overlap(const QubitState& a, const QubitState& b);

}  // namespace qdrive
