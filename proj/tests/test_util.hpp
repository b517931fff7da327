#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qdrive/rng.hpp"
#include "qdrive/state.hpp"

namespace qdrive::test {

/// Random normalized state, deterministic per seed.
inline QubitState random_state(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> amps(std::uint64_t{1} << n);
    for (auto& a : amps) {
        a = cplx{rng.normal(), rng.normal()};
    }
    QubitState state(n, std::move(amps));
    state.normalize();
    return state;
}

/// Unitary DFT oracle with e^{sign * 2 pi i j k / N} entries (brute force).
inline std::vector<cplx> dense_dft(const std::vector<cplx>& in, double sign) {
    const std::size_t n = in.size();
    std::vector<cplx> out(n, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * M_PI * static_cast<double>(j * k) /
                               static_cast<double>(n);
            out[k] += in[j] * std::polar(1.0, ang);
        }
        out[k] /= std::sqrt(static_cast<double>(n));
    }
    return out;
}

/// Largest |a_i - b_i|.
inline double max_amp_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

/// Applies a dense matrix (row-major, dim x dim) to a state vector.
inline std::vector<cplx> dense_apply(const std::vector<cplx>& matrix,
                                     const std::vector<cplx>& v) {
    const std::size_t dim = v.size();
    std::vector<cplx> out(dim, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out[r] += matrix[r * dim + c] * v[c];
        }
    }
    return out;
}

/// dim x dim identity.
inline std::vector<cplx> dense_identity(std::size_t dim) {
    std::vector<cplx> m(dim * dim, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) {
        m[i * dim + i] = 1.0;
    }
    return m;
}

/// Left-multiplies `m` by the single-qubit gate g on qubit q (n qubits).
inline void dense_mul_single(std::vector<cplx>& m, int n, int q, const cplx g[2][2]) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t bit = std::size_t{1} << q;
    std::vector<cplx> out(m.size());
    for (std::size_t r = 0; r < dim; ++r) {
        const std::size_t base = r & ~bit;
        const int rb = (r & bit) ? 1 : 0;
        for (std::size_t c = 0; c < dim; ++c) {
            out[r * dim + c] =
                g[rb][0] * m[base * dim + c] + g[rb][1] * m[(base | bit) * dim + c];
        }
    }
    m = std::move(out);
}

}  // namespace qdrive::test
