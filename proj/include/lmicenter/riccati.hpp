#pragma once

#include <vector>

#include "lmicenter/lmi.hpp"

namespace lmicenter {

/// Extremal Riccati solutions X- <= X+ bounding the LMI solution set, with
/// the closed-loop spectra of the two solutions.
struct ExtremalPair {
  HermitianMatrix x_min;
  HermitianMatrix x_max;
  std::vector<std::complex<double>> spectrum_min;
  std::vector<std::complex<double>> spectrum_max;
};

/// Ricc_c(X) (continuous) or Ricc_d(X) (discrete); equals the P block of
/// eval_W with the model-derived weight.
HermitianMatrix riccati_residual(const StateSpaceModel& model,
                                 const HermitianMatrix& x);

/// Extremal CARE solutions via an ordered Schur decomposition of the
/// Hamiltonian matrix.
ExtremalPair solve_care_extremal(const StateSpaceModel& model);

/// Extremal DARE solutions via an ordered generalized Schur (QZ)
/// decomposition of the symplectic pencil.
ExtremalPair solve_dare_extremal(const StateSpaceModel& model);

/// Dispatches on the model's time domain.
ExtremalPair solve_extremal(const StateSpaceModel& model);

struct SubspaceReport {
  double invariance_residual = 0.0;   // ||H U - U A_F|| (or pencil analogue)
  double extended_residual = 0.0;     // extended-pencil relation residual
  double scale = 0.0;
};

/// Frobenius residuals of the (extended) invariant-subspace relations for a
/// candidate ARE/DARE solution X. Diagnostic only.
SubspaceReport verify_invariant_subspace(const StateSpaceModel& model,
                                         const HermitianMatrix& x);

}  // namespace lmicenter
