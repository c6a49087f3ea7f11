#pragma once

#include <optional>

#include "lmicenter/lmi.hpp"

namespace lmicenter {

/// Result of a Cayley transform, carrying the generalized weight induced by
/// the congruence W_other(X) = t_factor^H W(X) t_factor and the constant
/// determinant ratio it produces.
struct TransformedModel {
  StateSpaceModel model;
  GeneralizedWeight weight;
  MatrixXcd t_factor;       // (n+m) x (n+m), upper block triangular
  double det_ratio = 0.0;   // |det t_factor|^2
};

/// Continuous -> discrete: A_d = (A_c - I)^{-1}(I + A_c),
/// B_d = sqrt(2) (A_c - I)^{-1} B_c, weight transformed by
/// T_c = [sqrt(2)(I - A_c)^{-1}, (I - A_c)^{-1} B_c; 0, I].
/// Requires 1 not an eigenvalue of A_c.
TransformedModel cayley_c2d(const StateSpaceModel& model,
                            const std::optional<GeneralizedWeight>& weight = {});

/// Discrete -> continuous; the transform is an involution, so the same
/// formulas apply with the roles swapped. Requires 1 not an eigenvalue
/// of A_d.
TransformedModel cayley_d2c(const StateSpaceModel& model,
                            const std::optional<GeneralizedWeight>& weight = {});

struct BarrierEquivalenceReport {
  double ratio = 0.0;       // det W_d(X) / det W_c(X) at the given X
  double det_ratio = 0.0;   // |det T_c|^2, the X-independent prediction
  double rel_error = 0.0;
  bool pass = false;        // rel_error <= 1e-10
};

/// Checks det W_d(X) = |det T_c|^2 det W_c(X) at a feasible X (same X on
/// both sides).
BarrierEquivalenceReport verify_barrier_equivalence(
    const StateSpaceModel& model_c, const std::optional<GeneralizedWeight>& weight_c,
    const HermitianMatrix& x);

struct ResidualRelationReport {
  double residual = 0.0;    // Frobenius norm of the relation defect
  double relative = 0.0;
  bool pass = false;        // relative <= 1e-8
};

/// Checks the block relation between the Schur factors of the continuous LMI
/// at X and its transformed discrete counterpart:
///   diag(P_d, R0_d) = T_P^H diag(P_c, R_c) T_P,
///   T_P = [I, 0; F_c, I] T [I, 0; -F_d, I],
/// where T is the congruence factor of the bilinear transform.
ResidualRelationReport verify_residual_relation(const StateSpaceModel& model_c,
                                                const HermitianMatrix& x);

}  // namespace lmicenter
