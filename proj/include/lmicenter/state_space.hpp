#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "lmicenter/hermitian.hpp"

namespace lmicenter {

enum class TimeDomain { continuous, discrete };

/// State-space model {A, B, C, D} with equal input/output dimension m.
/// B and C are required to have full rank m.
struct StateSpaceModel {
  MatrixXcd A;  // n x n
  MatrixXcd B;  // n x m
  MatrixXcd C;  // m x n
  MatrixXcd D;  // m x m
  TimeDomain time_domain = TimeDomain::continuous;

  StateSpaceModel() = default;
  StateSpaceModel(MatrixXcd a, MatrixXcd b, MatrixXcd c, MatrixXcd d,
                  TimeDomain domain);

  Eigen::Index n() const { return A.rows(); }
  Eigen::Index m() const { return D.rows(); }

  bool is_real() const {
    return A.imag().isZero(0.0) && B.imag().isZero(0.0) &&
           C.imag().isZero(0.0) && D.imag().isZero(0.0);
  }

  /// R = D + D^H.
  MatrixXcd R() const { return D + D.adjoint(); }
};

/// Constant [Q, Cw^H; Cw, R] block replacing the model-derived constant part
/// of the LMI. Needed to represent bilinear-transformed problems; the plain
/// model corresponds to Q = 0, Cw = C, R = D + D^H.
struct GeneralizedWeight {
  HermitianMatrix Q;   // n x n
  MatrixXcd Cw;        // m x n
  HermitianMatrix R;   // m x m

  static GeneralizedWeight from_model(const StateSpaceModel& model);

  bool is_real() const {
    return Q.is_real() && Cw.imag().isZero(0.0) && R.is_real();
  }
};

struct MinimalityReport {
  bool controllable = false;
  bool reconstructable = false;
  bool minimal() const { return controllable && reconstructable; }
};

/// Controllability/reconstructability test via an orthogonal staircase
/// reduction (numerically stable for moderate n, unlike the raw Krylov
/// controllability matrix).
MinimalityReport is_minimal(const StateSpaceModel& model);

/// Popov function sample: Phi_c(i*omega) or Phi_d(e^{i*omega}).
HermitianMatrix popov_eval(const StateSpaceModel& model, double omega);

/// Continuous-time limit Phi_c(inf) = D + D^H.
HermitianMatrix popov_at_infinity(const StateSpaceModel& model);

/// System pencil S_c(s) / S_d(z) evaluated at a point (invariant-test helper).
MatrixXcd system_pencil_eval(const StateSpaceModel& model,
                             std::complex<double> point);

/// Minimal, strictly passive random model with X = I as interior certificate
/// (C = B^H, D = delta*I). Deterministic in the seed.
StateSpaceModel random_passive_model(int n, int m, std::uint64_t seed,
                                     TimeDomain domain);

}  // namespace lmicenter
