#pragma once

#include "qdrive/oracle.hpp"
#include "qdrive/state.hpp"

namespace qdrive {

/// Amplitude encoding: register amplitude i = psi(x_i) sqrt(dx), renormalized
/// so the register norm is exactly 1.
QubitState to_register(const GridWavefunction& psi);

/// Inverse map: grid amplitude j = register amplitude j / sqrt(dx).
GridWavefunction to_grid(const QubitState& state, const SpatialGrid& grid);

}  // namespace qdrive
