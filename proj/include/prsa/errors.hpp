#ifndef PRSA_ERRORS_HPP
#define PRSA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prsa {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid model or argument values. CLI maps this to exit code 2.
struct ModelError : Error {
    using Error::Error;
};

/// No admissible hinge point for the requested threshold/window. Exit code 3.
struct NoHingeError : Error {
    using Error::Error;
};

/// A hypothesis of the asymptotic theory does not hold for the inputs.
/// Exit code 4.
struct HypothesisError : Error {
    using Error::Error;
};

/// The selection probability (or its integral counterpart) is numerically zero.
struct DegenerateThresholdError : HypothesisError {
    using HypothesisError::HypothesisError;
};

/// Covariance tail at the lag horizon too large for the rapid-decay proxy.
struct DecayError : HypothesisError {
    using HypothesisError::HypothesisError;
};

/// Lag horizon of a covariance table too short for the request.
struct HorizonError : Error {
    using Error::Error;
};

/// Window reads fall outside the stored series.
struct OverhangError : Error {
    using Error::Error;
};

/// Quadrature did not converge; carries the last two refinement iterates.
struct QuadratureError : Error {
    QuadratureError(const std::string& msg, double prev, double last)
        : Error(msg), previous_iterate(prev), last_iterate(last) {}
    double previous_iterate;
    double last_iterate;
};

/// Covariance factorization failed beyond the jitter tolerance.
struct DecompositionError : Error {
    using Error::Error;
};

/// Circulant embedding has negative eigenvalues beyond tolerance.
struct EmbeddingError : Error {
    using Error::Error;
};

}  // namespace prsa

#endif
