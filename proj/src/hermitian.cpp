#include "lmicenter/hermitian.hpp"

#include <cmath>

namespace lmicenter {

double frobenius_real_inner(const MatrixXcd& x, const MatrixXcd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw ShapeError("frobenius_real_inner: shape mismatch");
  }
  return x.conjugate().cwiseProduct(y).sum().real();
}

HermitianMatrix project_hermitian(const MatrixXcd& m) {
  return HermitianMatrix(m);
}

HermitianSqrt hermitian_sqrt(const HermitianMatrix& p, bool require_pd) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(p.mat());
  const VectorXd& ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1.0e-300);
  const double cutoff = 1e-10 * scale;
  if (ev.minCoeff() < -cutoff) {
    throw NotPositiveDefiniteError("hermitian_sqrt: matrix is not PSD");
  }
  if (require_pd && ev.minCoeff() < cutoff) {
    throw NotPositiveDefiniteError("hermitian_sqrt: matrix is not PD");
  }
  VectorXd root = ev.cwiseMax(0.0).cwiseSqrt();
  HermitianSqrt out;
  out.root = HermitianMatrix(es.eigenvectors() * root.asDiagonal() *
                             es.eigenvectors().adjoint());
  if (require_pd) {
    out.inverse = es.eigenvectors() * root.cwiseInverse().asDiagonal() *
                  es.eigenvectors().adjoint();
  }
  return out;
}

double min_eigenvalue(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h.mat(),
                                              Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

EigPair min_eigenpair(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h.mat());
  Eigen::Index idx = 0;
  es.eigenvalues().minCoeff(&idx);
  return {es.eigenvalues()(idx), es.eigenvectors().col(idx)};
}

HermitianBasis::HermitianBasis(Eigen::Index n, bool real_only) : n_(n) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  basis_.reserve(static_cast<size_t>(real_only ? n * (n + 1) / 2 : n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    MatrixXcd e = MatrixXcd::Zero(n, n);
    e(i, i) = 1.0;
    basis_.push_back(e);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      MatrixXcd e = MatrixXcd::Zero(n, n);
      e(i, j) = inv_sqrt2;
      e(j, i) = inv_sqrt2;
      basis_.push_back(e);
      if (!real_only) {
        MatrixXcd f = MatrixXcd::Zero(n, n);
        f(i, j) = std::complex<double>(0.0, inv_sqrt2);
        f(j, i) = std::complex<double>(0.0, -inv_sqrt2);
        basis_.push_back(f);
      }
    }
  }
}

VectorXd HermitianBasis::coordinates(const MatrixXcd& m) const {
  if (m.rows() != n_ || m.cols() != n_) {
    throw ShapeError("HermitianBasis::coordinates: shape mismatch");
  }
  const bool real_only = size() == n_ * (n_ + 1) / 2;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  VectorXd c(size());
  // Mirrors the construction order: diagonal, then (i, j) pairs.
  for (Eigen::Index i = 0; i < n_; ++i) c(i) = m(i, i).real();
  Eigen::Index k = n_;
  for (Eigen::Index i = 0; i < n_; ++i) {
    for (Eigen::Index j = i + 1; j < n_; ++j) {
      c(k++) = inv_sqrt2 * (m(i, j).real() + m(j, i).real());
      if (!real_only) {
        c(k++) = inv_sqrt2 * (m(i, j).imag() - m(j, i).imag());
      }
    }
  }
  return c;
}

HermitianMatrix HermitianBasis::reconstruct(const VectorXd& coords) const {
  if (coords.size() != size()) {
    throw ShapeError("HermitianBasis::reconstruct: coordinate count mismatch");
  }
  const bool real_only = size() == n_ * (n_ + 1) / 2;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  MatrixXcd m = MatrixXcd::Zero(n_, n_);
  for (Eigen::Index i = 0; i < n_; ++i) m(i, i) = coords(i);
  Eigen::Index k = n_;
  for (Eigen::Index i = 0; i < n_; ++i) {
    for (Eigen::Index j = i + 1; j < n_; ++j) {
      std::complex<double> z(inv_sqrt2 * coords(k++), 0.0);
      if (!real_only) {
        z.imag(inv_sqrt2 * coords(k++));
      }
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return HermitianMatrix(m);
}

HermitianOperator::HermitianOperator(Eigen::Index n, bool real_only,
                                     const Map& apply)
    : basis_(n, real_only), dense_(basis_.size(), basis_.size()) {
  for (Eigen::Index k = 0; k < basis_.size(); ++k) {
    dense_.col(k) = basis_.coordinates(apply(basis_.element(k)));
  }
}

HermitianMatrix HermitianOperator::apply(const HermitianMatrix& delta) const {
  return basis_.reconstruct(dense_ * basis_.coordinates(delta.mat()));
}

HermitianMatrix HermitianOperator::solve(const HermitianMatrix& rhs,
                                         double rcond_cutoff) const {
  if (rhs.dim() != basis_.space_dim()) {
    throw ShapeError("HermitianOperator::solve: dimension mismatch");
  }
  Eigen::PartialPivLU<MatrixXd> lu(dense_);
  const double rcond = lu.rcond();
  if (!(rcond > rcond_cutoff)) {
    throw SingularOperatorError("HermitianOperator::solve: singular operator",
                                rcond);
  }
  return basis_.reconstruct(lu.solve(basis_.coordinates(rhs.mat())));
}

}  // namespace lmicenter
