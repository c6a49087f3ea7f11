#include "lmicenter/riccati.hpp"

#include <cmath>
#include <complex>

#include <lapacke.h>

namespace lmicenter {

namespace {

lapack_logical select_left_half_plane(const std::complex<double>* w) {
  return w->real() < 0.0 ? 1 : 0;
}

lapack_logical select_right_half_plane(const std::complex<double>* w) {
  return w->real() > 0.0 ? 1 : 0;
}

lapack_logical select_inside_unit_circle(const std::complex<double>* alpha,
                                         const std::complex<double>* beta) {
  return std::abs(*alpha) < std::abs(*beta) ? 1 : 0;
}

lapack_logical select_outside_unit_circle(const std::complex<double>* alpha,
                                          const std::complex<double>* beta) {
  return std::abs(*alpha) > std::abs(*beta) ? 1 : 0;
}

// Ordered Schur: returns the orthonormal basis of the invariant subspace
// belonging to the selected spectrum half.
MatrixXcd stable_invariant_subspace(const MatrixXcd& h, bool left_half) {
  const lapack_int nn = static_cast<lapack_int>(h.rows());
  MatrixXcd t = h;
  MatrixXcd vs(nn, nn);
  Eigen::VectorXcd w(nn);
  lapack_int sdim = 0;
  const lapack_int info = LAPACKE_zgees(
      LAPACK_COL_MAJOR, 'V', 'S',
      left_half ? select_left_half_plane : select_right_half_plane, nn,
      t.data(), nn, &sdim, w.data(), vs.data(), nn);
  if (info != 0) {
    throw Error("zgees failed, info = " + std::to_string(info));
  }
  const double axis_tol = 1e-8 * std::max(1.0, h.norm());
  for (lapack_int i = 0; i < nn; ++i) {
    if (std::abs(w(i).real()) < axis_tol) {
      throw BoundarySpectrumError(
          "Hamiltonian eigenvalue too close to the imaginary axis");
    }
  }
  if (2 * sdim != nn) {
    throw BoundarySpectrumError(
        "Hamiltonian spectrum does not split evenly across the axis");
  }
  return vs.leftCols(sdim);
}

// Right deflating subspace of the pencil lambda*L - M for the eigenvalues
// inside (or outside) the unit circle, via ordered QZ.
MatrixXcd deflating_subspace(const MatrixXcd& m_mat, const MatrixXcd& l_mat,
                             bool inside) {
  const lapack_int nn = static_cast<lapack_int>(m_mat.rows());
  MatrixXcd s = m_mat;
  MatrixXcd t = l_mat;
  MatrixXcd vsr(nn, nn);
  Eigen::VectorXcd alpha(nn), beta(nn);
  lapack_int sdim = 0;
  const lapack_int info = LAPACKE_zgges(
      LAPACK_COL_MAJOR, 'N', 'V', 'S',
      inside ? select_inside_unit_circle : select_outside_unit_circle, nn,
      s.data(), nn, t.data(), nn, &sdim, alpha.data(), beta.data(), nullptr, 1,
      vsr.data(), nn);
  if (info != 0) {
    throw Error("zgges failed, info = " + std::to_string(info));
  }
  for (lapack_int i = 0; i < nn; ++i) {
    const double a = std::abs(alpha(i));
    const double b = std::abs(beta(i));
    if (std::abs(a - b) < 1e-8 * (a + b)) {
      throw BoundarySpectrumError(
          "symplectic pencil eigenvalue too close to the unit circle");
    }
  }
  if (2 * sdim != nn) {
    throw BoundarySpectrumError(
        "symplectic spectrum does not split evenly across the circle");
  }
  return vsr.leftCols(sdim);
}

// X = -U2 U1^{-1}, Hermitian-projected (Schur vectors carry rounding
// asymmetry).
HermitianMatrix solution_from_subspace(const MatrixXcd& u) {
  const Eigen::Index n = u.rows() / 2;
  const MatrixXcd u1 = u.topRows(n);
  const MatrixXcd u2 = u.bottomRows(n);
  Eigen::JacobiSVD<MatrixXcd> svd(u1);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-12 * sv(0)) {
    throw SubspaceError("invariant subspace basis is ill-conditioned");
  }
  const MatrixXcd x =
      -(u1.transpose().fullPivLu().solve(u2.transpose())).transpose();
  return project_hermitian(x);
}

std::vector<std::complex<double>> closed_loop_spectrum(
    const StateSpaceModel& model, const HermitianMatrix& x) {
  const LmiEvaluation eval = eval_W(model, x);
  Eigen::ComplexEigenSolver<MatrixXcd> es(eval.closed_loop(model), false);
  return {es.eigenvalues().data(),
          es.eigenvalues().data() + es.eigenvalues().size()};
}

ExtremalPair label_and_check(const StateSpaceModel& model,
                             const HermitianMatrix& x1,
                             const HermitianMatrix& x2) {
  for (const auto* x : {&x1, &x2}) {
    const double res = riccati_residual(model, *x).mat().norm();
    if (res > 1e-6 * (1.0 + x->mat().norm())) {
      throw Error("extremal Riccati solution failed its residual check");
    }
  }
  const double order = min_eigenvalue(project_hermitian(x2.mat() - x1.mat()));
  ExtremalPair pair;
  if (order >= -1e-8 * std::max(1.0, x2.mat().norm())) {
    pair.x_min = x1;
    pair.x_max = x2;
  } else {
    pair.x_min = x2;
    pair.x_max = x1;
  }
  pair.spectrum_min = closed_loop_spectrum(model, pair.x_min);
  pair.spectrum_max = closed_loop_spectrum(model, pair.x_max);
  return pair;
}

}  // namespace

HermitianMatrix riccati_residual(const StateSpaceModel& model,
                                 const HermitianMatrix& x) {
  return eval_W(model, x).P;
}

ExtremalPair solve_care_extremal(const StateSpaceModel& model) {
  const Eigen::Index n = model.n();
  const MatrixXcd r = model.R();
  if (min_eigenvalue(project_hermitian(r)) <= 0.0) {
    throw NotStrictlyPassiveError("solve_care_extremal: R = D + D^H not PD");
  }
  const Eigen::LLT<MatrixXcd> r_llt(r);
  const MatrixXcd ri_c = r_llt.solve(model.C);
  const MatrixXcd ri_bh = r_llt.solve(model.B.adjoint());
  const MatrixXcd a0 = model.A - model.B * ri_c;

  MatrixXcd ham(2 * n, 2 * n);
  ham.topLeftCorner(n, n) = a0;
  ham.topRightCorner(n, n) = -model.B * ri_bh;
  ham.bottomLeftCorner(n, n) = model.C.adjoint() * ri_c;
  ham.bottomRightCorner(n, n) = -a0.adjoint();

  const HermitianMatrix x_stable =
      solution_from_subspace(stable_invariant_subspace(ham, true));
  const HermitianMatrix x_antistable =
      solution_from_subspace(stable_invariant_subspace(ham, false));
  return label_and_check(model, x_stable, x_antistable);
}

ExtremalPair solve_dare_extremal(const StateSpaceModel& model) {
  const Eigen::Index n = model.n();
  const MatrixXcd r = model.R();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es_r(r, Eigen::EigenvaluesOnly);
  if (es_r.eigenvalues().cwiseAbs().minCoeff() <
      1e-14 * std::max(1.0, es_r.eigenvalues().cwiseAbs().maxCoeff())) {
    throw R0SingularError("solve_dare_extremal: R = D + D^H singular");
  }
  const Eigen::FullPivLU<MatrixXcd> r_lu(r);
  const MatrixXcd ri_c = r_lu.solve(model.C);
  const MatrixXcd ri_bh = r_lu.solve(model.B.adjoint());

  MatrixXcd m_mat = MatrixXcd::Zero(2 * n, 2 * n);
  m_mat.topLeftCorner(n, n) = model.A - model.B * ri_c;
  m_mat.bottomLeftCorner(n, n) = model.C.adjoint() * ri_c;
  m_mat.bottomRightCorner(n, n) = MatrixXcd::Identity(n, n);

  MatrixXcd l_mat = MatrixXcd::Zero(2 * n, 2 * n);
  l_mat.topLeftCorner(n, n) = MatrixXcd::Identity(n, n);
  l_mat.topRightCorner(n, n) = model.B * ri_bh;
  l_mat.bottomRightCorner(n, n) =
      model.A.adjoint() - model.C.adjoint() * ri_bh;

  const HermitianMatrix x_inside =
      solution_from_subspace(deflating_subspace(m_mat, l_mat, true));
  const HermitianMatrix x_outside =
      solution_from_subspace(deflating_subspace(m_mat, l_mat, false));
  return label_and_check(model, x_inside, x_outside);
}

ExtremalPair solve_extremal(const StateSpaceModel& model) {
  return model.time_domain == TimeDomain::continuous
             ? solve_care_extremal(model)
             : solve_dare_extremal(model);
}

SubspaceReport verify_invariant_subspace(const StateSpaceModel& model,
                                         const HermitianMatrix& x) {
  const Eigen::Index n = model.n();
  const Eigen::Index m = model.m();
  const MatrixXcd r = model.R();
  const MatrixXcd c0 = model.time_domain == TimeDomain::continuous
                           ? MatrixXcd(model.C - model.B.adjoint() * x.mat())
                           : MatrixXcd(model.C -
                                       model.B.adjoint() * x.mat() * model.A);
  const MatrixXcd r0 =
      model.time_domain == TimeDomain::continuous
          ? r
          : MatrixXcd(r - model.B.adjoint() * x.mat() * model.B);
  const MatrixXcd f = r0.fullPivLu().solve(c0);
  const MatrixXcd a_f = model.A - model.B * f;

  MatrixXcd u(2 * n, n);
  u.topRows(n) = MatrixXcd::Identity(n, n);
  u.bottomRows(n) = -x.mat();

  MatrixXcd u_ext(2 * n + m, n);
  u_ext.topRows(n) = -x.mat();
  u_ext.middleRows(n, n) = MatrixXcd::Identity(n, n);
  u_ext.bottomRows(m) = -f;

  SubspaceReport report;
  if (model.time_domain == TimeDomain::continuous) {
    const Eigen::LLT<MatrixXcd> r_llt(r);
    const MatrixXcd ri_c = r_llt.solve(model.C);
    const MatrixXcd a0 = model.A - model.B * ri_c;
    MatrixXcd ham(2 * n, 2 * n);
    ham.topLeftCorner(n, n) = a0;
    ham.topRightCorner(n, n) = -model.B * r_llt.solve(model.B.adjoint());
    ham.bottomLeftCorner(n, n) = model.C.adjoint() * ri_c;
    ham.bottomRightCorner(n, n) = -a0.adjoint();
    report.invariance_residual = (ham * u - u * a_f).norm();
    report.scale = ham.norm() * u.norm();

    MatrixXcd e = MatrixXcd::Zero(2 * n + m, 2 * n + m);
    e.block(0, n, n, n) = model.A;
    e.block(n, 0, n, n) = model.A.adjoint();
    e.block(0, 2 * n, n, m) = model.B;
    e.block(n, 2 * n, n, m) = model.C.adjoint();
    e.block(2 * n, 0, m, n) = model.B.adjoint();
    e.block(2 * n, n, m, n) = model.C;
    e.block(2 * n, 2 * n, m, m) = r;
    MatrixXcd j = MatrixXcd::Zero(2 * n + m, 2 * n + m);
    j.block(0, n, n, n) = MatrixXcd::Identity(n, n);
    j.block(n, 0, n, n) = -MatrixXcd::Identity(n, n);
    report.extended_residual = (e * u_ext - j * u_ext * a_f).norm();
  } else {
    const Eigen::FullPivLU<MatrixXcd> r_lu(r);
    const MatrixXcd ri_c = r_lu.solve(model.C);
    const MatrixXcd ri_bh = r_lu.solve(model.B.adjoint());
    MatrixXcd m_mat = MatrixXcd::Zero(2 * n, 2 * n);
    m_mat.topLeftCorner(n, n) = model.A - model.B * ri_c;
    m_mat.bottomLeftCorner(n, n) = model.C.adjoint() * ri_c;
    m_mat.bottomRightCorner(n, n) = MatrixXcd::Identity(n, n);
    MatrixXcd l_mat = MatrixXcd::Zero(2 * n, 2 * n);
    l_mat.topLeftCorner(n, n) = MatrixXcd::Identity(n, n);
    l_mat.topRightCorner(n, n) = model.B * ri_bh;
    l_mat.bottomRightCorner(n, n) =
        model.A.adjoint() - model.C.adjoint() * ri_bh;
    report.invariance_residual = (m_mat * u - l_mat * u * a_f).norm();
    report.scale = (m_mat.norm() + l_mat.norm()) * u.norm();

    MatrixXcd e = MatrixXcd::Zero(2 * n + m, 2 * n + m);
    e.block(0, n, n, n) = model.A;
    e.block(n, 0, n, n) = MatrixXcd::Identity(n, n);
    e.block(0, 2 * n, n, m) = model.B;
    e.block(n, 2 * n, n, m) = -model.C.adjoint();
    e.block(2 * n, n, m, n) = model.C;
    e.block(2 * n, 2 * n, m, m) = r;
    MatrixXcd j = MatrixXcd::Zero(2 * n + m, 2 * n + m);
    j.block(0, n, n, n) = MatrixXcd::Identity(n, n);
    j.block(n, 0, n, n) = model.A.adjoint();
    j.block(2 * n, 0, m, n) = -model.B.adjoint();
    report.extended_residual = (e * u_ext - j * u_ext * a_f).norm();
  }
  return report;
}

}  // namespace lmicenter
