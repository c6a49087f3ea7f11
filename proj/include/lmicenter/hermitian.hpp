#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "lmicenter/errors.hpp"

namespace lmicenter {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Square complex matrix kept exactly Hermitian: the constructor averages
/// with the conjugate transpose, so entries(i,j) == conj(entries(j,i)) holds
/// exactly and diagonal imaginary parts are zero.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const MatrixXcd& m) {
    if (m.rows() != m.cols()) {
      throw ShapeError("HermitianMatrix: input must be square");
    }
    mat_ = 0.5 * (m + m.adjoint());
    for (Eigen::Index i = 0; i < mat_.rows(); ++i) {
      mat_(i, i) = std::complex<double>(mat_(i, i).real(), 0.0);
    }
  }

  Eigen::Index dim() const { return mat_.rows(); }
  const MatrixXcd& mat() const { return mat_; }
  operator const MatrixXcd&() const { return mat_; }

  bool is_real() const { return mat_.imag().isZero(0.0); }

  static HermitianMatrix Zero(Eigen::Index n) {
    return HermitianMatrix(MatrixXcd::Zero(n, n));
  }
  static HermitianMatrix Identity(Eigen::Index n) {
    return HermitianMatrix(MatrixXcd::Identity(n, n));
  }

 private:
  MatrixXcd mat_;
};

/// Re(tr(X^H Y)), the real Frobenius inner product. Defined for general
/// complex matrices of equal shape.
double frobenius_real_inner(const MatrixXcd& x, const MatrixXcd& y);

/// (M + M^H)/2.
HermitianMatrix project_hermitian(const MatrixXcd& m);

struct HermitianSqrt {
  HermitianMatrix root;               // T with T*T = P
  std::optional<MatrixXcd> inverse;   // T^{-1}, available when require_pd
};

/// Hermitian PSD square root via eigendecomposition. With require_pd the
/// inverse root is exposed as well.
HermitianSqrt hermitian_sqrt(const HermitianMatrix& p, bool require_pd = false);

double min_eigenvalue(const HermitianMatrix& h);

struct EigPair {
  double value;
  Eigen::VectorXcd vector;
};
EigPair min_eigenpair(const HermitianMatrix& h);

/// Orthonormal basis (under frobenius_real_inner) of the real vector space
/// of n x n Hermitian matrices: e_ii, (e_ij+e_ji)/sqrt2 and, unless
/// real_only, i(e_ij-e_ji)/sqrt2. real_only restricts to the symmetric
/// subspace of dimension n(n+1)/2.
class HermitianBasis {
 public:
  HermitianBasis(Eigen::Index n, bool real_only);

  Eigen::Index space_dim() const { return n_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(basis_.size()); }
  const MatrixXcd& element(Eigen::Index k) const { return basis_[k]; }

  VectorXd coordinates(const MatrixXcd& m) const;
  HermitianMatrix reconstruct(const VectorXd& coords) const;

 private:
  Eigen::Index n_;
  std::vector<MatrixXcd> basis_;
};

/// Real-linear map on the Hermitian space, stored densely in an orthonormal
/// basis. Used for the Newton systems, where the map is self-adjoint and the
/// stored matrix symmetric.
class HermitianOperator {
 public:
  using Map = std::function<MatrixXcd(const MatrixXcd&)>;

  /// Builds the dense representation column by column from the map.
  HermitianOperator(Eigen::Index n, bool real_only, const Map& apply);

  Eigen::Index space_dim() const { return basis_.space_dim(); }
  const MatrixXd& dense() const { return dense_; }

  HermitianMatrix apply(const HermitianMatrix& delta) const;

  /// Solves L(delta) = rhs. Throws SingularOperatorError (carrying the
  /// reciprocal condition estimate) when the dense matrix is numerically
  /// singular.
  HermitianMatrix solve(const HermitianMatrix& rhs,
                        double rcond_cutoff = 1e-14) const;

 private:
  HermitianBasis basis_;
  MatrixXd dense_;
};

}  // namespace lmicenter
