#pragma once

#include <cstdint>
#include <random>

#include "lmicenter/lmi.hpp"

namespace lmicenter::testutil {

inline MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols,
                               std::mt19937_64& rng, bool complex = true) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      m(i, j) = std::complex<double>(gauss(rng), complex ? gauss(rng) : 0.0);
    }
  }
  return m;
}

inline HermitianMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng,
                                        bool complex = true) {
  return project_hermitian(random_matrix(n, n, rng, complex));
}

/// Random strictly feasible point: X = I plus a shrinking Hermitian
/// perturbation (X = I is interior for random_passive_model outputs).
inline HermitianMatrix random_feasible_x(const StateSpaceModel& model,
                                         std::mt19937_64& rng,
                                         double spread = 0.5) {
  const HermitianMatrix dir = random_hermitian(model.n(), rng, !model.is_real());
  const HermitianMatrix id = HermitianMatrix::Identity(model.n());
  const double margin = 0.25 * min_eigenvalue(eval_W(model, id).W);
  double t = spread / std::max(dir.mat().norm(), 1e-12);
  for (int k = 0; k < 60; ++k) {
    const HermitianMatrix x =
        project_hermitian(MatrixXcd::Identity(model.n(), model.n()) +
                          t * dir.mat());
    const LmiEvaluation ev = eval_W(model, x);
    // keep a uniform interior margin so finite differences stay accurate
    if (ev.feasible_strict && min_eigenvalue(ev.W) >= margin) return x;
    t *= 0.5;
  }
  return id;
}

/// Central finite difference of t -> ln det W(X + t Delta) at t = 0.
inline double fd_log_det_derivative(const StateSpaceModel& model,
                                    const HermitianMatrix& x,
                                    const HermitianMatrix& delta,
                                    double h = 1e-5) {
  auto value = [&](double t) {
    return -barrier(model,
                    project_hermitian(x.mat() + t * delta.mat()));
  };
  return (value(h) - value(-h)) / (2.0 * h);
}

}  // namespace lmicenter::testutil
