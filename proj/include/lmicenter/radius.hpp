#pragma once

#include <cstdint>
#include <vector>

#include "lmicenter/lmi.hpp"

namespace lmicenter {

/// Lower bound on the X-passivity radius at a fixed feasible X:
/// value = lambda_min(Y W(X) Y) for the domain's scaling Y.
struct RadiusBound {
  double value = 0.0;
  HermitianMatrix scaling_Y;   // (n+m) x (n+m), PD
  HermitianMatrix x_used;
  TimeDomain domain = TimeDomain::continuous;
  bool approximate = false;    // true for the discrete (Delta = 0) form
};

/// Continuous bound with Y_c = (diag(I + X^2, I))^{-1/2}. Exact.
RadiusBound x_passivity_bound_continuous(const StateSpaceModel& model,
                                         const HermitianMatrix& x);

/// Discrete bound evaluated in its Delta = 0 form:
/// Z_d = -[X(A - I)/2, X B/2], Y_d = (I + Z_d^H Z_d)^{-1/2}.
RadiusBound x_passivity_bound_discrete(const StateSpaceModel& model,
                                       const HermitianMatrix& x);

/// Structured perturbation of the model realization.
struct ModelPerturbation {
  MatrixXcd dA;  // n x n
  MatrixXcd dB;  // n x m
  MatrixXcd dC;  // m x n
  MatrixXcd dD;  // m x m
};

/// Spectral norm of [0, dA, dB; dA^H, 0, dC^H; dB^H, dC, dD + dD^H].
double perturbation_norm(const StateSpaceModel& model,
                         const ModelPerturbation& delta);

/// Applies the perturbation to the realization (same time domain).
StateSpaceModel perturb_model(const StateSpaceModel& model,
                              const ModelPerturbation& delta);

struct ProbeSample {
  double norm = 0.0;        // perturbation_norm after scaling
  double min_eig_w = 0.0;   // lambda_min(W(X, M + Delta))
};

struct ProbeReport {
  int samples = 0;
  int remained_positive = 0;
  double margin = 0.0;
  double worst_min_eig = 0.0;
  std::vector<ProbeSample> records;
};

/// Draws `samples` Gaussian structured directions, scales each so that
/// perturbation_norm = margin * bound.value, and evaluates
/// lambda_min(W(X, M + Delta)). Diagnostic; deterministic in the seed.
ProbeReport probe_perturbations(const StateSpaceModel& model,
                                const HermitianMatrix& x,
                                const RadiusBound& bound, int samples,
                                double margin, std::uint64_t seed = 1);

}  // namespace lmicenter
