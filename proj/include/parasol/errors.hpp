#pragma once

#include <stdexcept>
#include <string>

namespace parasol {

/// Invalid argument to an interval operation (division by an interval
/// containing zero, sqrt of a negative domain, zero denominator, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Assembly requested on a space with no degrees of freedom.
struct EmptySpaceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A norm/eigenvalue certificate could not be established even by the
/// fallback method.  Never produces a wrong bound; it propagates as a
/// verification failure.
struct BoundFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The approximate inverse could not be certified (residual norm >= 1).
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The contraction constant kappa is not verifiably below 1 at this
/// discretization; the step cannot be verified.
struct ContractionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Newton iteration for the approximate solution did not converge.
struct ReferenceSolveFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration; the message lists every violated constraint.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operation was called in a state that does not admit it.
struct StateError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Mesh nodes whose element widths are not exactly representable.
struct MeshError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace parasol
