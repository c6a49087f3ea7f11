#include "lmicenter/lmi.hpp"

#include <cmath>

namespace lmicenter {

LmiEvaluation eval_W(const StateSpaceModel& model, const HermitianMatrix& x,
                     const std::optional<GeneralizedWeight>& weight) {
  const Eigen::Index n = model.n();
  const Eigen::Index m = model.m();
  if (x.dim() != n) {
    throw ShapeError("eval_W: X must be n x n");
  }
  const GeneralizedWeight w =
      weight ? *weight : GeneralizedWeight::from_model(model);

  MatrixXcd q0, c0, r0;
  if (model.time_domain == TimeDomain::continuous) {
    q0 = w.Q.mat() - x.mat() * model.A - model.A.adjoint() * x.mat();
    c0 = w.Cw - model.B.adjoint() * x.mat();
    r0 = w.R.mat();
  } else {
    q0 = w.Q.mat() + x.mat() - model.A.adjoint() * x.mat() * model.A;
    c0 = w.Cw - model.B.adjoint() * x.mat() * model.A;
    r0 = w.R.mat() - model.B.adjoint() * x.mat() * model.B;
  }

  LmiEvaluation out;
  MatrixXcd wfull(n + m, n + m);
  wfull.topLeftCorner(n, n) = q0;
  wfull.topRightCorner(n, m) = c0.adjoint();
  wfull.bottomLeftCorner(m, n) = c0;
  wfull.bottomRightCorner(m, m) = r0;
  out.W = HermitianMatrix(wfull);
  out.R0 = project_hermitian(r0);

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es_r0(out.R0.mat(),
                                                 Eigen::EigenvaluesOnly);
  out.min_eig_R0 = es_r0.eigenvalues().minCoeff();
  const double r0_scale = es_r0.eigenvalues().cwiseAbs().maxCoeff();
  if (es_r0.eigenvalues().cwiseAbs().minCoeff() <
      1e-14 * std::max(1.0, r0_scale)) {
    throw R0SingularError("eval_W: R0 block is numerically singular");
  }

  out.F = out.R0.mat().fullPivLu().solve(c0);
  out.P = project_hermitian(q0 - out.F.adjoint() * out.R0.mat() * out.F);
  out.min_eig_P = min_eigenvalue(out.P);
  out.feasible_strict = out.min_eig_P > 0.0 && out.min_eig_R0 > 0.0;
  return out;
}

namespace {

// -(ln det P + ln det R0) for a strictly feasible evaluation.
double barrier_from_eval(const LmiEvaluation& eval) {
  auto logdet_pd = [](const MatrixXcd& h) {
    Eigen::LLT<MatrixXcd> llt(h);
    double s = 0.0;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      s += std::log(llt.matrixL()(i, i).real());
    }
    return 2.0 * s;
  };
  return -(logdet_pd(eval.P.mat()) + logdet_pd(eval.R0.mat()));
}

}  // namespace

double barrier(const StateSpaceModel& model, const HermitianMatrix& x,
               const std::optional<GeneralizedWeight>& weight) {
  const LmiEvaluation eval = eval_W(model, x, weight);
  if (!eval.feasible_strict) {
    throw BoundaryError("barrier: X is not strictly feasible",
                        min_eigenvalue(eval.W));
  }
  return barrier_from_eval(eval);
}

HermitianMatrix gradient_log_det(const StateSpaceModel& model,
                                 const LmiEvaluation& eval) {
  if (!eval.feasible_strict) {
    throw BoundaryError("gradient_log_det: X is not strictly feasible",
                        min_eigenvalue(eval.W));
  }
  const MatrixXcd a_f = eval.closed_loop(model);
  const MatrixXcd p_inv = eval.P.mat().llt().solve(
      MatrixXcd::Identity(eval.P.dim(), eval.P.dim()));
  if (model.time_domain == TimeDomain::continuous) {
    return project_hermitian(-(a_f * p_inv + p_inv * a_f.adjoint()));
  }
  const MatrixXcd r0_inv = eval.R0.mat().llt().solve(
      MatrixXcd::Identity(eval.R0.dim(), eval.R0.dim()));
  return project_hermitian(-(a_f * p_inv * a_f.adjoint() - p_inv +
                             model.B * r0_inv * model.B.adjoint()));
}

HermitianMatrix gradient_log_det(const StateSpaceModel& model,
                                 const HermitianMatrix& x,
                                 const std::optional<GeneralizedWeight>& weight) {
  return gradient_log_det(model, eval_W(model, x, weight));
}

double stationarity_residual(const StateSpaceModel& model,
                             const HermitianMatrix& x,
                             const std::optional<GeneralizedWeight>& weight) {
  return gradient_log_det(model, x, weight).mat().norm();
}

}  // namespace lmicenter
