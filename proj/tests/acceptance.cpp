// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "lmicenter/bilinear.hpp"
#include "lmicenter/center.hpp"
#include "lmicenter/radius.hpp"
#include "lmicenter/riccati.hpp"
#include "../tests/test_util.hpp"

using namespace lmicenter;

namespace {

int g_failures = 0;

void report(int number, const char* name, bool pass) {
  std::printf("%s  criterion %2d: %s\n", pass ? "PASS" : "FAIL", number, name);
  if (!pass) ++g_failures;
}

StateSpaceModel scalar_model(double a, double b, double c, double d,
                             TimeDomain domain) {
  auto m1 = [](double v) { return v * MatrixXcd::Ones(1, 1); };
  return StateSpaceModel(m1(a), m1(b), m1(c), m1(d), domain);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double spectral_norm(const MatrixXcd& m) {
  return Eigen::JacobiSVD<MatrixXcd>(m).singularValues()(0);
}

// Residuals of the defining systems (Fc)/(Xc)/(Pc) and (Fd)/(Xd)/(Pd),
// computed from scratch at a candidate center X.
double defining_system_residual(const StateSpaceModel& model,
                                const HermitianMatrix& x) {
  const MatrixXcd r = model.R();
  const Eigen::Index n = model.n();
  double worst = 0.0;
  if (model.time_domain == TimeDomain::continuous) {
    const MatrixXcd f =
        r.fullPivLu().solve(model.C - model.B.adjoint() * x.mat());
    const MatrixXcd p = -model.A.adjoint() * x.mat() - x.mat() * model.A -
                        f.adjoint() * r * f;
    const MatrixXcd a_f = model.A - model.B * f;
    worst = std::max(worst, (r * f - (model.C - model.B.adjoint() * x.mat()))
                                .norm());                           // (Fc)
    worst = std::max(worst, (p - eval_W(model, x).P.mat()).norm());  // (Xc)
    worst = std::max(worst, (p * a_f + a_f.adjoint() * p).norm());   // (Pc)
  } else {
    const MatrixXcd r0 =
        r - model.B.adjoint() * x.mat() * model.B;
    const MatrixXcd f =
        r0.fullPivLu().solve(model.C - model.B.adjoint() * x.mat() * model.A);
    const MatrixXcd p = x.mat() - model.A.adjoint() * x.mat() * model.A -
                        f.adjoint() * r0 * f;
    const MatrixXcd a_f = model.A - model.B * f;
    const MatrixXcd p_inv = p.fullPivLu().inverse();
    worst = std::max(worst,
                     (r0 * f - (model.C - model.B.adjoint() * x.mat() *
                                              model.A))
                         .norm());                                   // (Fd)
    worst = std::max(worst, (p - eval_W(model, x).P.mat()).norm());  // (Xd)
    worst = std::max(
        worst, (a_f * p_inv * a_f.adjoint() - p_inv +
                model.B * r0.fullPivLu().inverse() * model.B.adjoint())
                   .norm());                                         // (Pd)
  }
  return worst;
}

void criterion_1_2() {
  {
    const auto t0 = std::chrono::steady_clock::now();
    const StateSpaceModel m = scalar_model(-1, 1, 1, 2,
                                           TimeDomain::continuous);
    const CenterResult r = compute_analytic_center(m);
    const double x = r.x_center.mat()(0, 0).real();
    const double det = eval_W(m, r.x_center).det();
    report(1, "scalar continuous center x = 5, det = 24, < 1 s",
           r.converged && std::abs(x - 5.0) <= 1e-8 &&
               std::abs(det - 24.0) <= 1e-8 * 24.0 && seconds_since(t0) < 1.0);
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const StateSpaceModel m = scalar_model(0.5, 1, 0.25, 1,
                                           TimeDomain::discrete);
    const CenterResult r = compute_analytic_center(m);
    const double x = r.x_center.mat()(0, 0).real();
    const double det = eval_W(m, r.x_center).det();
    report(2, "scalar discrete center x = 0.875, det = 0.703125, < 1 s",
           r.converged && std::abs(x - 0.875) <= 1e-8 &&
               std::abs(det - 0.703125) <= 1e-8 * 0.703125 &&
               seconds_since(t0) < 1.0);
  }
}

void criterion_3() {
  std::mt19937_64 rng(3);
  bool pass = true;
  for (const TimeDomain domain : {TimeDomain::continuous,
                                  TimeDomain::discrete}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 7);
      const StateSpaceModel model =
          random_passive_model(n, 1 + static_cast<int>(rng() % 2),
                               3000 + trial, domain);
      const HermitianMatrix x = testutil::random_feasible_x(model, rng);
      HermitianMatrix delta = testutil::random_hermitian(n, rng, false);
      delta = project_hermitian(delta.mat() / delta.mat().norm());
      const double analytic =
          frobenius_real_inner(gradient_log_det(model, x), delta.mat());
      const double numeric = testutil::fd_log_det_derivative(model, x, delta);
      pass = pass && std::abs(analytic - numeric) <=
                         1e-5 * std::max(1.0, std::abs(analytic));
    }
  }
  report(3, "gradient matches finite differences (20 triples per domain)",
         pass);
}

void criterion_4() {
  std::mt19937_64 rng(4);
  bool pass = true;
  for (const TimeDomain domain : {TimeDomain::continuous,
                                  TimeDomain::discrete}) {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 4);
      const StateSpaceModel model =
          random_passive_model(n, 2, 4000 + trial, domain);
      const HermitianMatrix x = testutil::random_feasible_x(model, rng);
      const NewtonSystem sys = newton_system(model, x);
      const NewtonStep step = newton_direction(model, x);
      const double resid =
          (sys.hessian.apply(step.delta_hat).mat() - sys.rhs.mat()).norm();
      pass = pass && resid <= 1e-10 * std::max(1.0, sys.rhs.mat().norm());
    }
  }
  report(4, "Newton system solve reproduces the rhs to 1e-10", pass);
}

void criterion_5_6() {
  bool pass5 = true;
  bool pass6 = true;
  for (const TimeDomain domain : {TimeDomain::continuous,
                                  TimeDomain::discrete}) {
    for (int seed = 1; seed <= 5; ++seed) {
      const int n = 4 + seed;  // up to n = 9
      const StateSpaceModel model =
          random_passive_model(n, 3, 5000 + seed, domain);
      const CenterResult r = compute_analytic_center(model);
      if (!r.converged) {
        pass5 = pass6 = false;
        continue;
      }
      const CenterSpectrumReport spec =
          verify_center_spectrum(model, r.x_center);
      pass5 = pass5 && spec.spectrum_pass;
      pass6 = pass6 && defining_system_residual(model, r.x_center) <=
                           1e-8 * (1.0 + r.x_center.mat().norm());
    }
  }
  report(5, "central closed-loop spectrum placement (5 models per domain)",
         pass5);
  report(6, "defining systems (Fc)/(Xc)/(Pc), (Fd)/(Xd)/(Pd) hold", pass6);
}

void criterion_7() {
  bool pass = true;
  for (const TimeDomain domain : {TimeDomain::continuous,
                                  TimeDomain::discrete}) {
    for (int seed = 1; seed <= 5; ++seed) {
      const StateSpaceModel model =
          random_passive_model(5, 2, 7000 + seed, domain);
      const CenterResult r = compute_analytic_center(model);
      pass = pass && r.converged;
      for (size_t k = 0; k + 1 < r.iterations.size(); ++k) {
        const double lk = r.iterations[k].decrement;
        const double ln = r.iterations[k + 1].decrement;
        if (lk < 0.25 && lk > 1e-14) {
          pass = pass && ln <= 2.0 * lk * lk + 1e-13;
        }
      }
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const StateSpaceModel big =
      random_passive_model(30, 10, 7, TimeDomain::continuous);
  const CenterResult r = compute_analytic_center(big);
  const double elapsed = seconds_since(t0);
  pass = pass && r.converged && r.iterations.size() <= 50 && elapsed < 60.0;
  report(7, "quadratic tail; n=30, m=10 run converges (<= 50 iters, < 60 s)",
         pass);
}

void criterion_8() {
  bool pass = true;
  for (const TimeDomain domain : {TimeDomain::continuous,
                                  TimeDomain::discrete}) {
    for (int seed = 1; seed <= 3; ++seed) {
      const StateSpaceModel model =
          random_passive_model(5, 2, 8000 + seed, domain);
      const ExtremalPair pair = solve_extremal(model);
      const CenterResult r = compute_analytic_center(model);
      if (!r.converged) {
        pass = false;
        continue;
      }
      const double scale = 1.0 + r.x_center.mat().norm();
      pass = pass &&
             riccati_residual(model, pair.x_min).mat().norm() <=
                 1e-8 * (1.0 + pair.x_min.mat().norm()) &&
             riccati_residual(model, pair.x_max).mat().norm() <=
                 1e-8 * (1.0 + pair.x_max.mat().norm());
      pass = pass &&
             min_eigenvalue(project_hermitian(
                 r.x_center.mat() - pair.x_min.mat())) >= -1e-8 * scale &&
             min_eigenvalue(project_hermitian(
                 pair.x_max.mat() - r.x_center.mat())) >= -1e-8 * scale;
      for (const HermitianMatrix* x : {&pair.x_min, &pair.x_max}) {
        const LmiEvaluation ev = eval_W(model, *x);
        pass = pass && std::abs(min_eigenvalue(ev.W)) <=
                           1e-6 * spectral_norm(ev.W.mat());
      }
    }
  }
  report(8, "Riccati extremality: residuals, bracketing, boundary", pass);
}

void criterion_9() {
  const StateSpaceModel model =
      random_passive_model(4, 2, 9001, TimeDomain::continuous);
  const CenterResult r = compute_analytic_center(model);
  bool pass = r.converged;
  if (pass) {
    const RadiusBound bound =
        x_passivity_bound_continuous(model, r.x_center);
    const ProbeReport probe =
        probe_perturbations(model, r.x_center, bound, 100, 0.99, 9);
    pass = probe.remained_positive == probe.samples;
  }
  // scalar destructive perturbations of the worked example
  const StateSpaceModel scalar = scalar_model(-1, 1, 1, 2,
                                              TimeDomain::continuous);
  const double value =
      x_passivity_bound_continuous(scalar,
                                   HermitianMatrix(5.0 * MatrixXcd::Ones(1, 1)))
          .value;
  auto pert = [&](double da, double dd) {
    return perturbation_norm(
        scalar, ModelPerturbation{da * MatrixXcd::Ones(1, 1),
                                  MatrixXcd::Zero(1, 1), MatrixXcd::Zero(1, 1),
                                  dd * MatrixXcd::Ones(1, 1)});
  };
  pass = pass && pert(0, -2) >= value && pert(1, 0) >= value &&
         pert(1.5, 0) >= value;
  report(9, "radius safety: 100 perturbations at 0.99x bound stay passive",
         pass);
}

void criterion_10() {
  std::mt19937_64 rng(10);
  const StateSpaceModel model =
      random_passive_model(4, 2, 10001, TimeDomain::continuous);
  const TransformedModel t = cayley_c2d(model);
  const TransformedModel back = cayley_d2c(t.model, t.weight);
  bool pass = (back.model.A - model.A).norm() <= 1e-10 * model.A.norm() &&
              (back.model.B - model.B).norm() <= 1e-10 * model.B.norm();
  std::vector<double> ratios;
  for (int k = 0; k < 5; ++k) {
    const HermitianMatrix x = testutil::random_feasible_x(model, rng);
    const BarrierEquivalenceReport rep =
        verify_barrier_equivalence(model, {}, x);
    pass = pass && rep.rel_error <= 1e-8;
    ratios.push_back(rep.ratio);
    pass = pass && verify_residual_relation(model, x).relative <= 1e-8;
  }
  for (double v : ratios) {
    pass = pass && std::abs(v - ratios[0]) <= 1e-8 * std::abs(ratios[0]);
  }
  report(10, "bilinear equivalence: det ratio, round trip, P relation", pass);
}

void criterion_11() {
  bool pass = true;
  for (const TimeDomain domain : {TimeDomain::continuous,
                                  TimeDomain::discrete}) {
    const StateSpaceModel model = random_passive_model(4, 2, 11000, domain);
    CenterOptions ascent;
    ascent.method = CenterMethod::ascent;
    ascent.max_iter = 5000;
    const CenterResult ra = compute_analytic_center(model, ascent);
    const CenterResult rn = compute_analytic_center(model);
    pass = pass && ra.converged && rn.converged;
    for (size_t k = 1; k < ra.iterations.size(); ++k) {
      pass = pass &&
             ra.iterations[k].barrier <= ra.iterations[k - 1].barrier + 1e-12;
    }
    if (ra.converged && rn.converged) {
      pass = pass && (ra.x_center.mat() - rn.x_center.mat()).norm() <=
                         1e-6 * rn.x_center.mat().norm();
    }
  }
  report(11, "steepest ascent: monotone barrier, agrees with Newton", pass);
}

}  // namespace

int main() {
  criterion_1_2();
  criterion_3();
  criterion_4();
  criterion_5_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
