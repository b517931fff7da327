#pragma once

#include <stdexcept>
#include <string>

namespace qdrive {

/// Base class for all qdrive errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gate references a qubit outside the register, or repeats a target.
struct InvalidGateError : Error {
    using Error::Error;
};

/// Two states (or a state and a distribution) have different dimensions.
struct DimensionMismatchError : Error {
    using Error::Error;
};

/// Bang-bang synthesis parameters admit no feasible protocol.
struct InfeasibleBoundsError : Error {
    using Error::Error;
};

/// Constraint set admits no protocol (e.g. endpoint pins too far apart).
struct InfeasibleError : Error {
    using Error::Error;
};

/// Ermakov integration hit b <= 0 (inverted-trap blowup).
struct ErmakovSingularityError : Error {
    using Error::Error;
};

/// Quantum-speed-limit bound undefined because the mean dispersion vanishes.
struct UndefinedBoundError : Error {
    using Error::Error;
};

/// Optimizer produced a non-finite cost.
struct DivergenceError : Error {
    using Error::Error;
};

/// A gate parameterization violates the linear-dependence precondition
/// of the parameter-shift rule.
struct UnsupportedParameterizationError : Error {
    using Error::Error;
};

/// Experiment configuration failed validation; message carries the field path.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qdrive
