#include "lmicenter/radius.hpp"

#include <limits>
#include <random>

namespace lmicenter {

namespace {

RadiusBound bound_from_scaling(const StateSpaceModel& model,
                               const HermitianMatrix& x,
                               const HermitianMatrix& y, bool approximate) {
  const LmiEvaluation eval = eval_W(model, x);
  if (!eval.feasible_strict) {
    throw BoundaryError("x_passivity_bound: X is not strictly feasible",
                        min_eigenvalue(eval.W));
  }
  RadiusBound bound;
  bound.scaling_Y = y;
  bound.x_used = x;
  bound.domain = model.time_domain;
  bound.approximate = approximate;
  bound.value = min_eigenvalue(
      project_hermitian(y.mat() * eval.W.mat() * y.mat()));
  return bound;
}

}  // namespace

RadiusBound x_passivity_bound_continuous(const StateSpaceModel& model,
                                         const HermitianMatrix& x) {
  if (model.time_domain != TimeDomain::continuous) {
    throw ShapeError("x_passivity_bound_continuous: model is discrete");
  }
  const Eigen::Index n = model.n();
  const Eigen::Index m = model.m();
  MatrixXcd d2 = MatrixXcd::Identity(n + m, n + m);
  d2.topLeftCorner(n, n) += x.mat() * x.mat();
  const HermitianMatrix y(
      *hermitian_sqrt(project_hermitian(d2), true).inverse);
  return bound_from_scaling(model, x, y, false);
}

RadiusBound x_passivity_bound_discrete(const StateSpaceModel& model,
                                       const HermitianMatrix& x) {
  if (model.time_domain != TimeDomain::discrete) {
    throw ShapeError("x_passivity_bound_discrete: model is continuous");
  }
  const Eigen::Index n = model.n();
  const Eigen::Index m = model.m();
  MatrixXcd z(n, n + m);
  z.leftCols(n) = -0.5 * x.mat() * (model.A - MatrixXcd::Identity(n, n));
  z.rightCols(m) = -0.5 * x.mat() * model.B;
  const HermitianMatrix gram = project_hermitian(
      MatrixXcd::Identity(n + m, n + m) + z.adjoint() * z);
  const HermitianMatrix y(*hermitian_sqrt(gram, true).inverse);
  return bound_from_scaling(model, x, y, true);
}

double perturbation_norm(const StateSpaceModel& model,
                         const ModelPerturbation& delta) {
  const Eigen::Index n = model.n();
  const Eigen::Index m = model.m();
  if (delta.dA.rows() != n || delta.dA.cols() != n || delta.dB.rows() != n ||
      delta.dB.cols() != m || delta.dC.rows() != m || delta.dC.cols() != n ||
      delta.dD.rows() != m || delta.dD.cols() != m) {
    throw ShapeError("perturbation_norm: block shapes do not match model");
  }
  MatrixXcd block = MatrixXcd::Zero(2 * n + m, 2 * n + m);
  block.block(0, n, n, n) = delta.dA;
  block.block(0, 2 * n, n, m) = delta.dB;
  block.block(n, 0, n, n) = delta.dA.adjoint();
  block.block(n, 2 * n, n, m) = delta.dC.adjoint();
  block.block(2 * n, 0, m, n) = delta.dB.adjoint();
  block.block(2 * n, n, m, n) = delta.dC;
  block.block(2 * n, 2 * n, m, m) = delta.dD + delta.dD.adjoint();
  return Eigen::JacobiSVD<MatrixXcd>(block).singularValues()(0);
}

StateSpaceModel perturb_model(const StateSpaceModel& model,
                              const ModelPerturbation& delta) {
  return StateSpaceModel(model.A + delta.dA, model.B + delta.dB,
                         model.C + delta.dC, model.D + delta.dD,
                         model.time_domain);
}

ProbeReport probe_perturbations(const StateSpaceModel& model,
                                const HermitianMatrix& x,
                                const RadiusBound& bound, int samples,
                                double margin, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const bool complex_model = !model.is_real();
  auto draw = [&](Eigen::Index r, Eigen::Index c) {
    MatrixXcd m(r, c);
    for (Eigen::Index j = 0; j < c; ++j) {
      for (Eigen::Index i = 0; i < r; ++i) {
        const double re = gauss(rng);
        const double im = complex_model ? gauss(rng) : 0.0;
        m(i, j) = std::complex<double>(re, im);
      }
    }
    return m;
  };

  ProbeReport report;
  report.samples = samples;
  report.margin = margin;
  report.worst_min_eig = std::numeric_limits<double>::infinity();
  const double target = margin * bound.value;

  const Eigen::Index n = model.n();
  const Eigen::Index m = model.m();
  for (int k = 0; k < samples; ++k) {
    ModelPerturbation delta{draw(n, n), draw(n, m), draw(m, n), draw(m, m)};
    const double raw = perturbation_norm(model, delta);
    const double scale = raw > 0.0 ? target / raw : 0.0;
    delta.dA *= scale;
    delta.dB *= scale;
    delta.dC *= scale;
    delta.dD *= scale;

    ProbeSample sample;
    sample.norm = target;
    // The perturbed realization may lose full rank in B or C; evaluate the
    // LMI blocks directly instead of going through the validating ctor.
    StateSpaceModel perturbed = model;
    perturbed.A = model.A + delta.dA;
    perturbed.B = model.B + delta.dB;
    perturbed.C = model.C + delta.dC;
    perturbed.D = model.D + delta.dD;
    try {
      sample.min_eig_w = min_eigenvalue(eval_W(perturbed, x).W);
    } catch (const R0SingularError&) {
      sample.min_eig_w = 0.0;
    }
    if (sample.min_eig_w > 0.0) ++report.remained_positive;
    report.worst_min_eig = std::min(report.worst_min_eig, sample.min_eig_w);
    report.records.push_back(sample);
  }
  if (samples == 0) report.worst_min_eig = 0.0;
  return report;
}

}  // namespace lmicenter
