#pragma once

#include <stdexcept>
#include <string>

namespace mcflab {

/// Invalid argument to an operation (bad n, radii out of range, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A run configuration that cannot be executed (bad key, violated precondition,
/// refused CFL, series start not resolving the tolerance).
struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Geometric impossibility while integrating (h reached zero before the
/// coordinate switch).
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two redundant computations of the same quantity disagree beyond tolerance
/// (chart handoff mismatch).
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Asymptotic tail estimate unstable under range doubling.
struct TailError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A time step failed (Newton did not converge); carries the last residual.
struct StepError : std::runtime_error {
    double residual;
    StepError(const std::string& msg, double resid)
        : std::runtime_error(msg), residual(resid) {}
};

/// Integration produced a non-finite value. Must not happen for the soliton
/// equation with increasing r; indicates a stepper bug or misconfiguration.
struct BlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "Cannot happen" branches (triangular solve not solvable, ...).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace mcflab
