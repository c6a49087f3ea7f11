#pragma once

#include <optional>
#include <vector>

#include "lmicenter/riccati.hpp"

namespace lmicenter {

enum class CenterMethod { ascent, newton };
enum class CenterInit { identity, geometric_mean, shifted_riccati, given };

struct CenterOptions {
  CenterMethod method = CenterMethod::newton;
  double tol_residual = 1e-10;
  double tol_decrement = 1e-18;
  int max_iter = 200;
  CenterInit init = CenterInit::geometric_mean;
  double damping_threshold = 0.25;
  std::optional<double> xi;              // shift parameter for shifted init
  std::optional<HermitianMatrix> x0;     // starting point for init = given
};

struct IterationRecord {
  int iter = 0;
  double barrier = 0.0;
  double decrement = 0.0;
  double residual = 0.0;
  double alpha = 0.0;
  double wallclock_seconds = 0.0;
};

struct CenterResult {
  HermitianMatrix x_center;
  double barrier_value = 0.0;
  std::vector<IterationRecord> iterations;
  std::vector<std::complex<double>> closed_loop_eigs;
  bool converged = false;
};

/// Matrix geometric mean X-(X-^{-1} X+)^{1/2} of two PD matrices; an
/// initialization heuristic, not guaranteed interior.
HermitianMatrix init_geometric_mean(const HermitianMatrix& x_min,
                                    const HermitianMatrix& x_max);

/// Interior point from the extremal Riccati pair of the shifted (continuous)
/// or scaled (discrete) model; returns (X-(xi) + X+(xi))/2.
HermitianMatrix init_shifted_riccati(const StateSpaceModel& model, double xi);

/// A Newton direction in the transformed (hatted) coordinates at X, together
/// with the mapped-back step and the Newton decrement.
struct NewtonStep {
  HermitianMatrix delta_x;     // step in original coordinates
  HermitianMatrix delta_hat;   // step in hatted coordinates
  double decrement = 0.0;      // squared Newton decrement lambda(X)
};

/// Hessian operator and right-hand side of the Newton system in the hatted
/// coordinates at X. Exposed for solve verification.
struct NewtonSystem {
  HermitianOperator hessian;
  HermitianMatrix rhs;            // -gradient of the barrier in hatted coords
  HermitianMatrix t;              // P0^{1/2}
  MatrixXcd t_inv;
};

NewtonSystem newton_system(const StateSpaceModel& model,
                           const HermitianMatrix& x,
                           const std::optional<GeneralizedWeight>& weight = {});

NewtonStep newton_direction(const StateSpaceModel& model,
                            const HermitianMatrix& x,
                            const std::optional<GeneralizedWeight>& weight = {});

/// Newton correction in the scalar alpha along direction delta_hat (hatted
/// coordinates), backtracked by halving until X + alpha*Delta stays strictly
/// feasible.
double line_search_newton_alpha(const StateSpaceModel& model,
                                const HermitianMatrix& x,
                                const HermitianMatrix& delta_hat,
                                const std::optional<GeneralizedWeight>& weight = {});

/// One steepest-ascent step: unit-norm gradient direction and its
/// line-searched step length.
struct AscentStep {
  HermitianMatrix delta_x;
  double alpha = 0.0;
};
AscentStep steepest_ascent_step(const StateSpaceModel& model,
                                const HermitianMatrix& x,
                                const std::optional<GeneralizedWeight>& weight = {});

/// Outer driver: initialization (with feasibility fallback chain), damped
/// Newton or steepest ascent, Hermitian projection each iterate.
CenterResult compute_analytic_center(
    const StateSpaceModel& model, const CenterOptions& options = {},
    const std::optional<GeneralizedWeight>& weight = {});

struct CenterSpectrumReport {
  double spectrum_measure = 0.0;   // max |Re eig(A_F)| or spectral radius
  bool spectrum_pass = false;
  double pc_residual = 0.0;        // stationarity-system residual at X
  std::vector<std::complex<double>> closed_loop_eigs;
};

/// Checks the closed-loop spectrum placement and the stationarity residual
/// of a candidate center. Diagnostic only.
CenterSpectrumReport verify_center_spectrum(
    const StateSpaceModel& model, const HermitianMatrix& x,
    const std::optional<GeneralizedWeight>& weight = {});

struct ScalarCenter {
  double x_a = 0.0;
  double det_at_center = 0.0;
};

/// Closed-form analytic center of the scalar (n = m = 1, real) model.
ScalarCenter scalar_center_reference(double a, double b, double c, double d,
                                     TimeDomain domain);

}  // namespace lmicenter
