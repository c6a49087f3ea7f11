#pragma once

#include <optional>

#include "lmicenter/state_space.hpp"

namespace lmicenter {

/// W(X) with its Schur factorization
///   W = [I, F^H; 0, I] diag(P, R0) [I, 0; F, I].
/// P is the Riccati residual; strict feasibility means P > 0 and R0 > 0.
struct LmiEvaluation {
  HermitianMatrix W;    // (n+m) x (n+m)
  HermitianMatrix R0;   // m x m (continuous: R; discrete: R - B^H X B)
  MatrixXcd F;          // m x n feedback from Schur elimination
  HermitianMatrix P;    // n x n Schur complement
  bool feasible_strict = false;
  double min_eig_P = 0.0;
  double min_eig_R0 = 0.0;

  MatrixXcd closed_loop(const StateSpaceModel& model) const {
    return model.A - model.B * F;
  }

  /// det W = det P * det R0.
  double det() const {
    return (P.mat().determinant() * R0.mat().determinant()).real();
  }
};

/// Evaluates the passivity LMI matrix at X. When weight is omitted the
/// model-derived blocks Q = 0, Cw = C, R = D + D^H are used.
LmiEvaluation eval_W(const StateSpaceModel& model, const HermitianMatrix& x,
                     const std::optional<GeneralizedWeight>& weight = {});

/// Barrier value -ln det W(X), computed from the factorization as
/// -(ln det P + ln det R0). Throws BoundaryError off the interior.
double barrier(const StateSpaceModel& model, const HermitianMatrix& x,
               const std::optional<GeneralizedWeight>& weight = {});

/// Frechet gradient G of ln det W(X):
///   d/dt ln det W(X + t*Delta)|_0 = <G, Delta>.
HermitianMatrix gradient_log_det(
    const StateSpaceModel& model, const HermitianMatrix& x,
    const std::optional<GeneralizedWeight>& weight = {});

/// Same, reusing an existing evaluation at x.
HermitianMatrix gradient_log_det(const StateSpaceModel& model,
                                 const LmiEvaluation& eval);

/// ||gradient_log_det||_F; vanishes exactly at the analytic center.
double stationarity_residual(const StateSpaceModel& model,
                             const HermitianMatrix& x,
                             const std::optional<GeneralizedWeight>& weight = {});

}  // namespace lmicenter
