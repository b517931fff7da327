#include "qdrive/encode.hpp"

#include <cmath>

namespace qdrive {

QubitState to_register(const GridWavefunction& psi) {
    const double root_dx = std::sqrt(psi.grid.dx());
    std::vector<cplx> amps(psi.amps.size());
    for (std::size_t j = 0; j < amps.size(); ++j) {
        amps[j] = psi.amps[j] * root_dx;
    }
    QubitState state(psi.grid.n, std::move(amps));
    state.normalize();
    return state;
}

GridWavefunction to_grid(const QubitState& state, const SpatialGrid& grid) {
    if (state.num_qubits() != grid.n) {
        throw DimensionMismatchError("to_grid: register size does not match grid");
    }
    GridWavefunction psi;
    psi.grid = grid;
    psi.amps.resize(state.dim());
    const double inv_root_dx = 1.0 / std::sqrt(grid.dx());
    for (std::uint64_t j = 0; j < state.dim(); ++j) {
        psi.amps[j] = state[j] * inv_root_dx;
    }
    return psi;
}

}  // namespace qdrive
