#include "lmicenter/bilinear.hpp"

#include <cmath>

namespace lmicenter {

namespace {

TransformedModel cayley(const StateSpaceModel& model,
                        const std::optional<GeneralizedWeight>& weight,
                        TimeDomain target) {
  const Eigen::Index n = model.n();
  const Eigen::Index m = model.m();

  const MatrixXcd shifted = model.A - MatrixXcd::Identity(n, n);
  Eigen::FullPivLU<MatrixXcd> lu(shifted);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw PoleError("cayley transform: 1 is an eigenvalue of A");
  }

  const MatrixXcd a_t = lu.solve(MatrixXcd::Identity(n, n) + model.A);
  const MatrixXcd b_t = std::sqrt(2.0) * lu.solve(model.B);

  // T = [sqrt(2)(I - A)^{-1}, (I - A)^{-1} B; 0, I]
  MatrixXcd t = MatrixXcd::Zero(n + m, n + m);
  t.topLeftCorner(n, n) = -std::sqrt(2.0) * lu.inverse();
  t.topRightCorner(n, m) = -lu.solve(model.B);
  t.bottomRightCorner(m, m) = MatrixXcd::Identity(m, m);

  const GeneralizedWeight w =
      weight ? *weight : GeneralizedWeight::from_model(model);
  MatrixXcd w_const(n + m, n + m);
  w_const.topLeftCorner(n, n) = w.Q.mat();
  w_const.topRightCorner(n, m) = w.Cw.adjoint();
  w_const.bottomLeftCorner(m, n) = w.Cw;
  w_const.bottomRightCorner(m, m) = w.R.mat();
  const MatrixXcd w_t = t.adjoint() * w_const * t;

  TransformedModel out;
  out.weight.Q = project_hermitian(w_t.topLeftCorner(n, n));
  out.weight.Cw = w_t.bottomLeftCorner(m, n);
  out.weight.R = project_hermitian(w_t.bottomRightCorner(m, m));
  // D is only determined up to its skew part (the LMI sees D + D^H);
  // carrying over the original skew part makes the round trip exact.
  const MatrixXcd d_t =
      0.5 * out.weight.R.mat() + 0.5 * (model.D - model.D.adjoint());
  out.model = StateSpaceModel(a_t, b_t, out.weight.Cw, d_t, target);
  out.t_factor = t;
  out.det_ratio = std::norm(t.determinant());
  return out;
}

}  // namespace

TransformedModel cayley_c2d(const StateSpaceModel& model,
                            const std::optional<GeneralizedWeight>& weight) {
  if (model.time_domain != TimeDomain::continuous) {
    throw ShapeError("cayley_c2d: model must be continuous-time");
  }
  return cayley(model, weight, TimeDomain::discrete);
}

TransformedModel cayley_d2c(const StateSpaceModel& model,
                            const std::optional<GeneralizedWeight>& weight) {
  if (model.time_domain != TimeDomain::discrete) {
    throw ShapeError("cayley_d2c: model must be discrete-time");
  }
  return cayley(model, weight, TimeDomain::continuous);
}

BarrierEquivalenceReport verify_barrier_equivalence(
    const StateSpaceModel& model_c,
    const std::optional<GeneralizedWeight>& weight_c,
    const HermitianMatrix& x) {
  const TransformedModel td = cayley_c2d(model_c, weight_c);
  const double det_c = eval_W(model_c, x, weight_c).det();
  const double det_d = eval_W(td.model, x, td.weight).det();

  BarrierEquivalenceReport report;
  report.det_ratio = td.det_ratio;
  report.ratio = det_d / det_c;
  report.rel_error =
      std::abs(report.ratio - report.det_ratio) / report.det_ratio;
  report.pass = report.rel_error <= 1e-10;
  return report;
}

ResidualRelationReport verify_residual_relation(const StateSpaceModel& model_c,
                                                const HermitianMatrix& x) {
  if (model_c.time_domain != TimeDomain::continuous) {
    throw ShapeError("verify_residual_relation: model must be continuous");
  }
  const LmiEvaluation ev_c = eval_W(model_c, x);
  if (!ev_c.feasible_strict) {
    throw BoundaryError("verify_residual_relation: X infeasible",
                        min_eigenvalue(ev_c.W));
  }
  const TransformedModel td = cayley_c2d(model_c);
  const LmiEvaluation ev_d = eval_W(td.model, x, td.weight);

  // Block relation between the Schur factors of both sides of the
  // congruence W_d = T^H W_c T:
  //   diag(P_d, R0_d) = T_P^H diag(P_c, R_c) T_P,
  //   T_P = [I, 0; F_c, I] T [I, 0; -F_d, I].
  const Eigen::Index n = model_c.n();
  const Eigen::Index m = model_c.m();
  MatrixXcd lower_c = MatrixXcd::Identity(n + m, n + m);
  lower_c.bottomLeftCorner(m, n) = ev_c.F;
  MatrixXcd lower_d_inv = MatrixXcd::Identity(n + m, n + m);
  lower_d_inv.bottomLeftCorner(m, n) = -ev_d.F;
  const MatrixXcd t_p = lower_c * td.t_factor * lower_d_inv;

  MatrixXcd diag_c = MatrixXcd::Zero(n + m, n + m);
  diag_c.topLeftCorner(n, n) = ev_c.P.mat();
  diag_c.bottomRightCorner(m, m) = ev_c.R0.mat();
  MatrixXcd diag_d = MatrixXcd::Zero(n + m, n + m);
  diag_d.topLeftCorner(n, n) = ev_d.P.mat();
  diag_d.bottomRightCorner(m, m) = ev_d.R0.mat();

  const MatrixXcd predicted = t_p.adjoint() * diag_c * t_p;

  ResidualRelationReport report;
  report.residual = (diag_d - predicted).norm();
  report.relative = report.residual / std::max(predicted.norm(), 1e-300);
  report.pass = report.relative <= 1e-8;
  return report;
}

}  // namespace lmicenter
