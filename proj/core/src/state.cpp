#include "qdrive/state.hpp"

#include <cmath>

namespace qdrive {

namespace {

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw Error("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                    "], got " + std::to_string(n));
    }
}

}  // namespace

QubitState::QubitState(int n, std::uint64_t basis_index) : n_(n) {
    check_qubit_count(n);
    amps_.assign(std::uint64_t{1} << n, cplx{0.0, 0.0});
    if (basis_index >= amps_.size()) {
        throw Error("basis index out of range");
    }
    amps_[basis_index] = cplx{1.0, 0.0};
}

QubitState::QubitState(int n, std::vector<cplx> amps) : n_(n), amps_(std::move(amps)) {
    check_qubit_count(n);
    if (amps_.size() != (std::uint64_t{1} << n)) {
        throw Error("amplitude vector size does not match qubit count");
    }
}

double QubitState::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return s;
}

void QubitState::normalize() {
    const double n2 = norm_sq();
    if (n2 <= 0.0) {
        throw Error("cannot normalize a zero state");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps_) {
        a *= inv;
    }
}

std::vector<double> QubitState::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

cplx overlap(const QubitState& a, const QubitState& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionMismatchError("overlap: states have different qubit counts");
    }
    cplx s{0.0, 0.0};
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

}  // namespace qdrive
