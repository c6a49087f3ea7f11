#include "lmicenter/state_space.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace lmicenter {

namespace {

Eigen::Index numerical_rank(const MatrixXcd& m) {
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                     std::numeric_limits<double>::epsilon() * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > tol) ++r;
  return r;
}

double spectral_norm(const MatrixXcd& m) {
  return Eigen::JacobiSVD<MatrixXcd>(m).singularValues()(0);
}

}  // namespace

StateSpaceModel::StateSpaceModel(MatrixXcd a, MatrixXcd b, MatrixXcd c,
                                 MatrixXcd d, TimeDomain domain)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)),
      time_domain(domain) {
  const Eigen::Index nn = A.rows();
  const Eigen::Index mm = D.rows();
  if (nn < 1 || mm < 1 || A.cols() != nn || B.rows() != nn || B.cols() != mm ||
      C.rows() != mm || C.cols() != nn || D.cols() != mm) {
    throw ShapeError("StateSpaceModel: inconsistent dimensions");
  }
  if (numerical_rank(B) != mm || numerical_rank(C) != mm) {
    throw Error("StateSpaceModel: B and C must have full rank m");
  }
}

GeneralizedWeight GeneralizedWeight::from_model(const StateSpaceModel& model) {
  GeneralizedWeight w;
  w.Q = HermitianMatrix::Zero(model.n());
  w.Cw = model.C;
  w.R = HermitianMatrix(model.R());
  return w;
}

MinimalityReport is_minimal(const StateSpaceModel& model) {
  const Eigen::Index n = model.n();
  if (n > 100) {
    throw Error("is_minimal: Krylov test limited to n <= 100");
  }
  // Orthogonal staircase reduction; the raw Krylov matrix overflows the
  // rank tolerance already for moderate n.
  auto controllability_rank = [](MatrixXcd a, MatrixXcd b) {
    Eigen::Index total = 0;
    while (a.rows() > 0) {
      const Eigen::Index nrem = a.rows();
      Eigen::JacobiSVD<MatrixXcd> svd(b, Eigen::ComputeFullU);
      const Eigen::Index r = numerical_rank(b);
      if (r == 0) break;
      total += r;
      if (r == nrem) break;
      const MatrixXcd a_t = svd.matrixU().adjoint() * a * svd.matrixU();
      b = a_t.bottomLeftCorner(nrem - r, r);
      a = a_t.bottomRightCorner(nrem - r, nrem - r).eval();
    }
    return total;
  };
  MinimalityReport report;
  report.controllable = controllability_rank(model.A, model.B) == n;
  report.reconstructable =
      controllability_rank(model.A.adjoint(), model.C.adjoint()) == n;
  return report;
}

HermitianMatrix popov_eval(const StateSpaceModel& model, double omega) {
  const std::complex<double> point =
      model.time_domain == TimeDomain::continuous
          ? std::complex<double>(0.0, omega)
          : std::exp(std::complex<double>(0.0, omega));
  Eigen::ComplexEigenSolver<MatrixXcd> es(model.A, false);
  const double gap = (es.eigenvalues().array() - point).abs().minCoeff();
  if (gap < 1e-12 * std::max(1.0, model.A.norm())) {
    throw PoleError("popov_eval: sample point is a pole of the resolvent");
  }
  const MatrixXcd resolvent =
      (point * MatrixXcd::Identity(model.n(), model.n()) - model.A)
          .partialPivLu()
          .solve(model.B);
  const MatrixXcd t = model.D + model.C * resolvent;
  return project_hermitian(t + t.adjoint());
}

HermitianMatrix popov_at_infinity(const StateSpaceModel& model) {
  return HermitianMatrix(model.R());
}

MatrixXcd system_pencil_eval(const StateSpaceModel& model,
                             std::complex<double> point) {
  const Eigen::Index n = model.n();
  const Eigen::Index m = model.m();
  MatrixXcd s = MatrixXcd::Zero(2 * n + m, 2 * n + m);
  const MatrixXcd id = MatrixXcd::Identity(n, n);
  if (model.time_domain == TimeDomain::continuous) {
    s.block(0, n, n, n) = model.A - point * id;
    s.block(n, 0, n, n) = model.A.adjoint() + point * id;
    s.block(0, 2 * n, n, m) = model.B;
    s.block(n, 2 * n, n, m) = model.C.adjoint();
    s.block(2 * n, 0, m, n) = model.B.adjoint();
    s.block(2 * n, n, m, n) = model.C;
  } else {
    s.block(0, n, n, n) = model.A - point * id;
    s.block(n, 0, n, n) = point * model.A.adjoint() - id;
    s.block(0, 2 * n, n, m) = model.B;
    s.block(n, 2 * n, n, m) = model.C.adjoint();
    s.block(2 * n, 0, m, n) = point * model.B.adjoint();
    s.block(2 * n, n, m, n) = model.C;
  }
  s.block(2 * n, 2 * n, m, m) = model.R();
  return s;
}

StateSpaceModel random_passive_model(int n, int m, std::uint64_t seed,
                                     TimeDomain domain) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&](Eigen::Index rows, Eigen::Index cols) {
    MatrixXcd g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) {
        g(i, j) = gauss(rng);
      }
    }
    return g;
  };

  for (int attempt = 0; attempt < 50; ++attempt) {
    const MatrixXcd g = draw(n, n);
    const MatrixXcd b = draw(n, m);
    MatrixXcd a;
    MatrixXcd d = MatrixXcd::Identity(m, m);
    if (domain == TimeDomain::continuous) {
      const double shift = 0.5 * spectral_norm(g + g.adjoint()) + 1.0;
      a = g - shift * MatrixXcd::Identity(n, n);
    } else {
      // sigma_max(A) < 1, so I - A^H A > 0 and X = I certifies the state
      // block; delta is doubled until the Schur complement is PD too.
      a = g / (spectral_norm(g) + 1.0);
      const MatrixXcd c0 = b.adjoint() - b.adjoint() * a;
      const HermitianMatrix q0 =
          project_hermitian(MatrixXcd::Identity(n, n) - a.adjoint() * a);
      double delta = 1.0;
      for (int k = 0; k < 80; ++k) {
        const MatrixXcd r0 =
            2.0 * delta * MatrixXcd::Identity(m, m) - b.adjoint() * b;
        if (min_eigenvalue(project_hermitian(r0)) > 0.0) {
          const MatrixXcd p = q0.mat() - c0.adjoint() * r0.inverse() * c0;
          if (min_eigenvalue(project_hermitian(p)) > 0.0) break;
        }
        delta *= 2.0;
      }
      d = delta * MatrixXcd::Identity(m, m);
    }
    try {
      StateSpaceModel model(a, b, b.adjoint(), d, domain);
      if (is_minimal(model).minimal()) return model;
    } catch (const Error&) {
      // rank-deficient draw, retry
    }
  }
  throw Error("random_passive_model: failed to draw a minimal model");
}

}  // namespace lmicenter
