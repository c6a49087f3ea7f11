#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lmicenter/bilinear.hpp"
#include "lmicenter/center.hpp"
#include "test_util.hpp"

using namespace lmicenter;

namespace {

StateSpaceModel scalar_model(double a, double b, double c, double d,
                             TimeDomain domain) {
  auto m1 = [](double v) { return v * MatrixXcd::Ones(1, 1); };
  return StateSpaceModel(m1(a), m1(b), m1(c), m1(d), domain);
}

HermitianMatrix scalar_x(double v) {
  return HermitianMatrix(v * MatrixXcd::Ones(1, 1));
}

}  // namespace

TEST_CASE("scalar substitution values") {
  const StateSpaceModel m = scalar_model(0, 2, 1, 3, TimeDomain::continuous);
  const TransformedModel t = cayley_c2d(m);
  CHECK(t.model.A(0, 0).real() == doctest::Approx(-1.0));
  CHECK(t.model.B(0, 0).real() == doctest::Approx(-std::sqrt(2.0) * 2.0));
  CHECK(t.det_ratio > 0.0);

  const StateSpaceModel md = scalar_model(0, 1, 1, 3, TimeDomain::discrete);
  CHECK(cayley_d2c(md).model.A(0, 0).real() == doctest::Approx(-1.0));
}

TEST_CASE("spectrum maps between stability regions") {
  const StateSpaceModel m = random_passive_model(5, 2, 1200,
                                                 TimeDomain::continuous);
  const TransformedModel t = cayley_c2d(m);
  Eigen::ComplexEigenSolver<MatrixXcd> es(t.model.A, false);
  CHECK(es.eigenvalues().cwiseAbs().maxCoeff() < 1.0);

  const TransformedModel back = cayley_d2c(t.model, t.weight);
  Eigen::ComplexEigenSolver<MatrixXcd> es_back(back.model.A, false);
  CHECK(es_back.eigenvalues().real().maxCoeff() < 0.0);

  // (I - A_d) = 2 (I - A_c)^{-1}
  const Eigen::Index n = m.n();
  const MatrixXcd lhs = MatrixXcd::Identity(n, n) - t.model.A;
  const MatrixXcd rhs =
      2.0 * (MatrixXcd::Identity(n, n) - m.A).partialPivLu().inverse();
  CHECK((lhs - rhs).norm() < 1e-10 * rhs.norm());
}

TEST_CASE("round trip reproduces the model and the weight") {
  const StateSpaceModel m = random_passive_model(4, 2, 1300,
                                                 TimeDomain::continuous);
  const TransformedModel t = cayley_c2d(m);
  const TransformedModel back = cayley_d2c(t.model, t.weight);
  CHECK((back.model.A - m.A).norm() <= 1e-12 * m.A.norm());
  CHECK((back.model.B - m.B).norm() <= 1e-12 * m.B.norm());

  const GeneralizedWeight original = GeneralizedWeight::from_model(m);
  CHECK((back.weight.Q.mat() - original.Q.mat()).norm() <=
        1e-10 * (1.0 + original.Q.mat().norm()));
  CHECK((back.weight.Cw - original.Cw).norm() <= 1e-10 * original.Cw.norm());
  CHECK((back.weight.R.mat() - original.R.mat()).norm() <=
        1e-10 * original.R.mat().norm());
  // D round trips exactly because the skew part travels with the model
  CHECK((back.model.D - m.D).norm() <= 1e-10 * m.D.norm());
}

TEST_CASE("pole detection") {
  // continuous A with eigenvalue exactly 1
  const StateSpaceModel m(MatrixXcd::Identity(2, 2),
                          MatrixXcd::Identity(2, 2),
                          MatrixXcd::Identity(2, 2),
                          2.0 * MatrixXcd::Identity(2, 2),
                          TimeDomain::continuous);
  CHECK_THROWS_AS(cayley_c2d(m), PoleError);
}

TEST_CASE("barrier equivalence: constant determinant ratio") {
  const StateSpaceModel m = scalar_model(-1, 1, 1, 2, TimeDomain::continuous);
  double first = 0.0;
  for (const double x : {2.0, 5.0, 8.0}) {
    const BarrierEquivalenceReport rep =
        verify_barrier_equivalence(m, {}, scalar_x(x));
    CHECK(rep.pass);
    CHECK(rep.rel_error <= 1e-10);
    if (first == 0.0) {
      first = rep.ratio;
    } else {
      CHECK(rep.ratio == doctest::Approx(first).epsilon(1e-10));
    }
  }

  std::mt19937_64 rng(71);
  const StateSpaceModel r = random_passive_model(4, 2, 1400,
                                                 TimeDomain::continuous);
  std::vector<double> ratios;
  for (int k = 0; k < 5; ++k) {
    const HermitianMatrix x = testutil::random_feasible_x(r, rng);
    const BarrierEquivalenceReport rep = verify_barrier_equivalence(r, {}, x);
    CHECK(rep.pass);
    ratios.push_back(rep.ratio);
  }
  double mean = 0.0;
  for (double v : ratios) mean += v / ratios.size();
  double sd = 0.0;
  for (double v : ratios) sd += (v - mean) * (v - mean) / ratios.size();
  CHECK(std::sqrt(sd) / mean <= 1e-8);
}

TEST_CASE("analytic center transports as a stationary point") {
  const StateSpaceModel m = random_passive_model(4, 2, 1500,
                                                 TimeDomain::continuous);
  const CenterResult center = compute_analytic_center(m);
  REQUIRE(center.converged);
  const TransformedModel t = cayley_c2d(m);
  const double resid =
      stationarity_residual(t.model, center.x_center, t.weight);
  CHECK(resid <= 1e-6 * (1.0 + center.x_center.mat().norm()));
}

TEST_CASE("residual relation between P_c and P_d") {
  const StateSpaceModel m = scalar_model(-1, 1, 1, 2, TimeDomain::continuous);
  const ResidualRelationReport at_center =
      verify_residual_relation(m, scalar_x(5.0));
  CHECK(at_center.relative <= 1e-10);

  std::mt19937_64 rng(72);
  const StateSpaceModel r = random_passive_model(4, 2, 1600,
                                                 TimeDomain::continuous);
  for (int k = 0; k < 3; ++k) {
    const HermitianMatrix x = testutil::random_feasible_x(r, rng);
    const ResidualRelationReport rep = verify_residual_relation(r, x);
    CHECK(rep.pass);
    CHECK(rep.relative <= 1e-8);
  }
}
