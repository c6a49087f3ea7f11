#include "lmicenter/center.hpp"

#include <chrono>
#include <cmath>

namespace lmicenter {

namespace {

// Quantities in the transformed coordinates at a strictly feasible X:
// T = P0^{1/2}, A_hat = T A_F T^{-1}, Q = T B R0^{-1} B^H T.
struct HattedData {
  LmiEvaluation eval;
  HermitianMatrix t;
  MatrixXcd t_inv;
  MatrixXcd a_hat;
  MatrixXcd q_hat;
  bool real_only = false;
};

HattedData hatted_data(const StateSpaceModel& model, const HermitianMatrix& x,
                       const std::optional<GeneralizedWeight>& weight) {
  HattedData h;
  h.eval = eval_W(model, x, weight);
  if (!h.eval.feasible_strict) {
    throw BoundaryError("X is not strictly feasible",
                        min_eigenvalue(h.eval.W));
  }
  HermitianSqrt root = hermitian_sqrt(h.eval.P, true);
  h.t = root.root;
  h.t_inv = *root.inverse;
  h.a_hat = h.t.mat() * h.eval.closed_loop(model) * h.t_inv;
  const MatrixXcd b_hat = h.t.mat() * model.B;
  h.q_hat =
      b_hat * h.eval.R0.mat().fullPivLu().solve(b_hat.adjoint());
  h.q_hat = 0.5 * (h.q_hat + h.q_hat.adjoint());
  h.real_only = model.is_real() && x.is_real() &&
                (!weight || weight->is_real());
  return h;
}

// Barrier gradient in the hatted coordinates.
MatrixXcd hatted_gradient(const StateSpaceModel& model, const HattedData& h) {
  const Eigen::Index n = model.n();
  if (model.time_domain == TimeDomain::continuous) {
    return h.a_hat + h.a_hat.adjoint();
  }
  return -(MatrixXcd::Identity(n, n) - h.q_hat -
           h.a_hat * h.a_hat.adjoint());
}

// Self-adjoint Hessian operator in the hatted coordinates.
HermitianOperator::Map hessian_map(const StateSpaceModel& model,
                                   const HattedData& h) {
  const MatrixXcd m = h.a_hat * h.a_hat.adjoint();
  if (model.time_domain == TimeDomain::continuous) {
    return [a = h.a_hat, q = h.q_hat, m](const MatrixXcd& d) -> MatrixXcd {
      return a * d * a + m * d + a.adjoint() * d * a.adjoint() + d * m +
             q * d + d * q;
    };
  }
  return [a = h.a_hat, q = h.q_hat, m](const MatrixXcd& d) -> MatrixXcd {
    return q * d * q + m * d * q + q * d * m + m * d * m -
           a * d * a.adjoint() - a.adjoint() * d * a +
           d;
  };
}

double hessian_quadratic_form(const StateSpaceModel& model,
                              const HattedData& h, const MatrixXcd& delta) {
  return frobenius_real_inner(hessian_map(model, h)(delta), delta);
}

bool is_feasible(const StateSpaceModel& model, const HermitianMatrix& x,
                 const std::optional<GeneralizedWeight>& weight) {
  try {
    return eval_W(model, x, weight).feasible_strict;
  } catch (const R0SingularError&) {
    return false;
  }
}

double backtrack_alpha(const StateSpaceModel& model, const HermitianMatrix& x,
                       const HermitianMatrix& delta_x, double alpha,
                       const std::optional<GeneralizedWeight>& weight) {
  for (int k = 0; k < 60; ++k) {
    const HermitianMatrix trial =
        project_hermitian(x.mat() + alpha * delta_x.mat());
    if (is_feasible(model, trial, weight)) return alpha;
    alpha *= 0.5;
  }
  throw DegenerateDirectionError(
      "line search failed to restore feasibility after 60 halvings");
}

}  // namespace

HermitianMatrix init_geometric_mean(const HermitianMatrix& x_min,
                                    const HermitianMatrix& x_max) {
  HermitianSqrt lo = hermitian_sqrt(x_min, true);
  hermitian_sqrt(x_max, true);  // PD validation of the other argument
  const HermitianMatrix inner = project_hermitian(
      *lo.inverse * x_max.mat() * *lo.inverse);
  const HermitianMatrix inner_root = hermitian_sqrt(inner, true).root;
  return project_hermitian(lo.root.mat() * inner_root.mat() * lo.root.mat());
}

HermitianMatrix init_shifted_riccati(const StateSpaceModel& model, double xi) {
  if (!(xi > 0.0)) {
    throw XiTooLargeError("init_shifted_riccati: xi must be positive");
  }
  try {
    StateSpaceModel shifted = model;
    const Eigen::Index n = model.n();
    const Eigen::Index m = model.m();
    if (model.time_domain == TimeDomain::continuous) {
      shifted.A = model.A + xi * MatrixXcd::Identity(n, n);
      shifted.D = model.D - xi * MatrixXcd::Identity(m, m);
    } else {
      if (xi >= 0.5) {
        throw XiTooLargeError("init_shifted_riccati: xi must be < 1/2");
      }
      const double s = 1.0 - 2.0 * xi;
      shifted.A = model.A / std::sqrt(s);
      shifted.B = model.B / std::sqrt(s);
      shifted.C = model.C / s;
      shifted.D = (model.D - xi * MatrixXcd::Identity(m, m)) / s;
    }
    const ExtremalPair pair = solve_extremal(shifted);
    return project_hermitian(0.5 * (pair.x_min.mat() + pair.x_max.mat()));
  } catch (const BoundarySpectrumError& e) {
    throw XiTooLargeError(std::string("shifted model not strictly passive: ") +
                          e.what());
  } catch (const NotStrictlyPassiveError& e) {
    throw XiTooLargeError(std::string("shifted model not strictly passive: ") +
                          e.what());
  }
}

NewtonSystem newton_system(const StateSpaceModel& model,
                           const HermitianMatrix& x,
                           const std::optional<GeneralizedWeight>& weight) {
  const HattedData h = hatted_data(model, x, weight);
  HermitianOperator op(model.n(), h.real_only, hessian_map(model, h));
  return NewtonSystem{std::move(op),
                      project_hermitian(-hatted_gradient(model, h)), h.t,
                      h.t_inv};
}

NewtonStep newton_direction(const StateSpaceModel& model,
                            const HermitianMatrix& x,
                            const std::optional<GeneralizedWeight>& weight) {
  const NewtonSystem sys = newton_system(model, x, weight);
  NewtonStep step;
  step.delta_hat = sys.hessian.solve(sys.rhs);
  step.delta_x =
      project_hermitian(sys.t.mat() * step.delta_hat.mat() * sys.t.mat());
  step.decrement = frobenius_real_inner(step.delta_hat.mat(), sys.rhs.mat());
  return step;
}

double line_search_newton_alpha(const StateSpaceModel& model,
                                const HermitianMatrix& x,
                                const HermitianMatrix& delta_hat,
                                const std::optional<GeneralizedWeight>& weight) {
  const HattedData h = hatted_data(model, x, weight);
  const double g1 =
      frobenius_real_inner(hatted_gradient(model, h), delta_hat.mat());
  const double h1 = hessian_quadratic_form(model, h, delta_hat.mat());
  const double scale = delta_hat.mat().squaredNorm();
  if (!(h1 > 1e-300) || h1 < 1e-14 * scale) {
    throw DegenerateDirectionError(
        "line_search_newton_alpha: vanishing curvature along direction");
  }
  const double alpha = -g1 / h1;
  if (alpha == 0.0) return 0.0;
  const HermitianMatrix delta_x =
      project_hermitian(h.t.mat() * delta_hat.mat() * h.t.mat());
  return backtrack_alpha(model, x, delta_x, alpha, weight);
}

AscentStep steepest_ascent_step(const StateSpaceModel& model,
                                const HermitianMatrix& x,
                                const std::optional<GeneralizedWeight>& weight) {
  const HattedData h = hatted_data(model, x, weight);
  // Ascent direction measured in the scaled (hatted) coordinates; this is the
  // gradient with respect to the local metric induced by P and keeps the
  // first-order method usable on ill-conditioned solution sets.
  const MatrixXcd ghat = hatted_gradient(model, h);
  const double norm = ghat.norm();
  AscentStep step;
  if (norm == 0.0) {
    step.delta_x = HermitianMatrix::Zero(model.n());
    step.alpha = 0.0;
    return step;
  }
  const HermitianMatrix delta_hat = project_hermitian(-ghat / norm);
  step.delta_x =
      project_hermitian(h.t.mat() * delta_hat.mat() * h.t.mat());
  step.alpha = line_search_newton_alpha(model, x, delta_hat, weight);
  return step;
}

namespace {

std::optional<HermitianMatrix> try_identity_init(
    const StateSpaceModel& model,
    const std::optional<GeneralizedWeight>& weight) {
  const Eigen::Index n = model.n();
  double t = 1.0;
  for (int k = 0; k < 60; ++k) {
    // 1, 2, 1/2, 4, 1/4, ...
    for (const double scale : {t, 1.0 / t}) {
      const HermitianMatrix cand(scale * MatrixXcd::Identity(n, n));
      if (is_feasible(model, cand, weight)) return cand;
      if (t == 1.0) break;
    }
    t *= 2.0;
  }
  return std::nullopt;
}

HermitianMatrix initial_point(const StateSpaceModel& model,
                              const CenterOptions& options,
                              const std::optional<GeneralizedWeight>& weight) {
  auto feasibility_checked = [&](const HermitianMatrix& cand)
      -> std::optional<HermitianMatrix> {
    if (is_feasible(model, cand, weight)) return cand;
    return std::nullopt;
  };

  auto shifted_init = [&]() -> std::optional<HermitianMatrix> {
    double xi;
    if (options.xi) {
      xi = *options.xi;
    } else if (auto ref = try_identity_init(model, weight)) {
      // half the admissible bound 2*xi <= lambda_min(W)/max(||X0||,1)
      const double alpha = min_eigenvalue(eval_W(model, *ref, weight).W);
      const double beta =
          std::max(Eigen::JacobiSVD<MatrixXcd>(ref->mat()).singularValues()(0),
                   1.0);
      xi = alpha / (4.0 * beta);
    } else {
      xi = 0.25 / std::max(1.0, model.A.norm());
    }
    for (int k = 0; k < 30; ++k) {
      try {
        if (auto cand = feasibility_checked(init_shifted_riccati(model, xi))) {
          return cand;
        }
      } catch (const XiTooLargeError&) {
        if (options.xi) throw;
      }
      if (options.xi) break;
      xi *= 0.5;
    }
    return std::nullopt;
  };

  switch (options.init) {
    case CenterInit::given: {
      if (!options.x0) {
        throw Error("compute_analytic_center: init=given requires x0");
      }
      if (auto cand = feasibility_checked(*options.x0)) return *cand;
      throw BoundaryError("compute_analytic_center: given x0 infeasible",
                          min_eigenvalue(eval_W(model, *options.x0, weight).W));
    }
    case CenterInit::identity: {
      if (auto cand = try_identity_init(model, weight)) return *cand;
      break;
    }
    case CenterInit::shifted_riccati: {
      if (auto cand = shifted_init()) return *cand;
      break;
    }
    case CenterInit::geometric_mean: {
      try {
        const ExtremalPair pair = solve_extremal(model);
        if (auto cand = feasibility_checked(
                init_geometric_mean(pair.x_min, pair.x_max))) {
          return *cand;
        }
      } catch (const Error&) {
        // fall through to the shifted/identity chain
      }
      if (auto cand = shifted_init()) return *cand;
      if (auto cand = try_identity_init(model, weight)) return *cand;
      break;
    }
  }
  throw NotStrictlyPassiveError(
      "compute_analytic_center: no strictly feasible starting point found");
}

}  // namespace

CenterResult compute_analytic_center(
    const StateSpaceModel& model, const CenterOptions& options,
    const std::optional<GeneralizedWeight>& weight) {
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&t_start]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start)
        .count();
  };

  HermitianMatrix x = initial_point(model, options, weight);
  CenterResult result;
  double barrier_val = barrier(model, x, weight);

  for (int iter = 0; iter < options.max_iter; ++iter) {
    const double residual = stationarity_residual(model, x, weight);

    IterationRecord rec;
    rec.iter = iter;
    rec.barrier = barrier_val;
    rec.residual = residual;

    double decrement;
    HermitianMatrix delta_x;
    double alpha;
    if (options.method == CenterMethod::newton) {
      const NewtonStep step = newton_direction(model, x, weight);
      decrement = step.decrement;
      delta_x = step.delta_x;
      // The recorded decrement is the squared-type quantity; the classical
      // damping rule uses its square root as the step-size control.
      alpha = decrement >= options.damping_threshold
                  ? 1.0 / (1.0 + std::sqrt(std::max(decrement, 0.0)))
                  : 1.0;
    } else {
      const HattedData h = hatted_data(model, x, weight);
      const MatrixXcd ghat = hatted_gradient(model, h);
      const double gnorm = ghat.norm();
      if (gnorm > 0.0) {
        const MatrixXcd delta_hat = -ghat / gnorm;
        delta_x = project_hermitian(h.t.mat() * delta_hat * h.t.mat());
        const double g1 =
            frobenius_real_inner(hatted_gradient(model, h), delta_hat);
        const double h1 = hessian_quadratic_form(model, h, delta_hat);
        decrement = h1 > 0.0 ? g1 * g1 / h1 : 0.0;
        alpha = h1 > 0.0 ? -g1 / h1 : 0.0;
      } else {
        delta_x = HermitianMatrix::Zero(model.n());
        decrement = 0.0;
        alpha = 0.0;
      }
    }
    rec.decrement = decrement;

    const bool converged =
        residual <= options.tol_residual * (1.0 + x.mat().norm()) &&
        decrement <= options.tol_decrement;
    if (converged) {
      rec.alpha = 0.0;
      rec.wallclock_seconds = elapsed();
      result.iterations.push_back(rec);
      result.converged = true;
      break;
    }

    alpha = backtrack_alpha(model, x, delta_x, alpha, weight);
    // monotonicity safeguard on top of feasibility
    for (int k = 0; k < 60; ++k) {
      const HermitianMatrix trial =
          project_hermitian(x.mat() + alpha * delta_x.mat());
      const double trial_barrier = barrier(model, trial, weight);
      if (trial_barrier <= barrier_val + 1e-12) {
        x = trial;
        barrier_val = trial_barrier;
        break;
      }
      alpha *= 0.5;
    }

    rec.alpha = alpha;
    rec.wallclock_seconds = elapsed();
    result.iterations.push_back(rec);
  }

  result.x_center = x;
  result.barrier_value = barrier_val;
  const LmiEvaluation final_eval = eval_W(model, x, weight);
  Eigen::ComplexEigenSolver<MatrixXcd> es(final_eval.closed_loop(model),
                                          false);
  result.closed_loop_eigs.assign(
      es.eigenvalues().data(),
      es.eigenvalues().data() + es.eigenvalues().size());
  return result;
}

CenterSpectrumReport verify_center_spectrum(
    const StateSpaceModel& model, const HermitianMatrix& x,
    const std::optional<GeneralizedWeight>& weight) {
  const LmiEvaluation eval = eval_W(model, x, weight);
  const MatrixXcd a_f = eval.closed_loop(model);
  Eigen::ComplexEigenSolver<MatrixXcd> es(a_f, false);

  CenterSpectrumReport report;
  report.closed_loop_eigs.assign(
      es.eigenvalues().data(),
      es.eigenvalues().data() + es.eigenvalues().size());

  const MatrixXcd p_inv = eval.P.mat().llt().solve(
      MatrixXcd::Identity(eval.P.dim(), eval.P.dim()));
  if (model.time_domain == TimeDomain::continuous) {
    report.spectrum_measure = es.eigenvalues().real().cwiseAbs().maxCoeff();
    const double a_norm = Eigen::JacobiSVD<MatrixXcd>(a_f).singularValues()(0);
    report.spectrum_pass = report.spectrum_measure <= 1e-6 * a_norm;
    report.pc_residual =
        (eval.P.mat() * a_f + a_f.adjoint() * eval.P.mat()).norm();
  } else {
    report.spectrum_measure = es.eigenvalues().cwiseAbs().maxCoeff();
    report.spectrum_pass = report.spectrum_measure < 1.0 - 1e-10;
    const MatrixXcd r0_inv = eval.R0.mat().llt().solve(
        MatrixXcd::Identity(eval.R0.dim(), eval.R0.dim()));
    report.pc_residual = (a_f * p_inv * a_f.adjoint() - p_inv +
                          model.B * r0_inv * model.B.adjoint())
                             .norm();
  }
  return report;
}

ScalarCenter scalar_center_reference(double a, double b, double c, double d,
                                     TimeDomain domain) {
  ScalarCenter out;
  if (b == 0.0) {
    throw InvalidScalarModelError("scalar model requires b != 0");
  }
  if (domain == TimeDomain::continuous) {
    if (!(a < 0.0) || !(d > 0.0) || !((d * a - c * b) / a > 0.0)) {
      throw InvalidScalarModelError(
          "scalar continuous model is not strictly passive");
    }
    out.x_a = c / b - 2.0 * a * d / (b * b);
    out.det_at_center = 4.0 * (a * d / (b * b)) * (a * d - b * c);
  } else {
    if (!(a * a < 1.0) || !(d > 0.0) ||
        !(2.0 * d + 2.0 * b * c / (1.0 - a) > 0.0) ||
        !(2.0 * d - 2.0 * b * c / (1.0 + a) > 0.0)) {
      throw InvalidScalarModelError(
          "scalar discrete model is not strictly passive");
    }
    out.x_a = (d - a * a * d + a * b * c) / (b * b);
    out.det_at_center =
        (a * a - 1.0) * (b * c - (a - 1.0) * d) * (b * c - (a + 1.0) * d) /
        (b * b);
  }
  return out;
}

}  // namespace lmicenter
