#pragma once

#include <stdexcept>
#include <string>

namespace lmicenter {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimension or shape mismatch between operands.
struct ShapeError : Error {
  using Error::Error;
};

/// Matrix required to be positive (semi)definite is not.
struct NotPositiveDefiniteError : Error {
  using Error::Error;
};

/// The R0 block of the LMI is numerically singular; the Schur
/// factorization (F, P) is unavailable.
struct R0SingularError : Error {
  using Error::Error;
};

/// Evaluation point is not strictly inside the LMI solution set.
struct BoundaryError : Error {
  BoundaryError(const std::string& msg, double lambda_min)
      : Error(msg), lambda_min_w(lambda_min) {}
  double lambda_min_w;
};

/// Dense operator on the Hermitian space is numerically singular.
struct SingularOperatorError : Error {
  SingularOperatorError(const std::string& msg, double rcond_estimate)
      : Error(msg), rcond(rcond_estimate) {}
  double rcond;
};

/// Hamiltonian / symplectic spectrum too close to the stability boundary;
/// the system is not strictly passive.
struct BoundarySpectrumError : Error {
  using Error::Error;
};

/// Invariant subspace basis is too ill-conditioned to extract X.
struct SubspaceError : Error {
  using Error::Error;
};

/// Shift parameter xi destroys strict passivity of the modified model.
struct XiTooLargeError : Error {
  using Error::Error;
};

/// Line-search direction with vanishing curvature.
struct DegenerateDirectionError : Error {
  using Error::Error;
};

/// Resolvent evaluated at (or too close to) a pole of the model.
struct PoleError : Error {
  using Error::Error;
};

/// Scalar model violates the closed-form strict-passivity conditions.
struct InvalidScalarModelError : Error {
  using Error::Error;
};

/// Model is not strictly passive; no interior point exists / was found.
struct NotStrictlyPassiveError : Error {
  using Error::Error;
};

/// Model/result file does not match the documented schema.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace lmicenter
