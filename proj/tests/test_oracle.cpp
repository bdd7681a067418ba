// Copyright 2026 The chiralwg Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "chiralwg/closed_form.hpp"
#include "chiralwg/oracle.hpp"

namespace {

using namespace chiralwg;
constexpr double pi = std::numbers::pi;
const complex I{0.0, 1.0};

GiantAtomParams chiral(double phi_1_0, double phi_2_0, double tau) {
  return GiantAtomParams({1.0, 1.0, 0.0, 0.0}, phi_1_0, phi_2_0, tau);
}

struct Sampler {
  std::mt19937_64 rng{99};
  double rate() { return std::exp(std::uniform_real_distribution<double>(std::log(0.01), std::log(10.0))(rng)); }
  double phase() { return std::uniform_real_distribution<double>(-2 * pi, 2 * pi)(rng); }
  double tau() { return std::uniform_real_distribution<double>(0.0, 10.0)(rng) < 1.0 ? 0.0 : std::uniform_real_distribution<double>(0.01, 10.0)(rng); }
  double detuning() { return std::uniform_real_distribution<double>(-20.0, 20.0)(rng); }
};

// Hand-written left-incidence system for a point Lambda atom at x = 0:
// unknowns (t1, r1, t2, r2, u), v = 1.
Eigen::VectorXcd reference_small_atom(double gr, double gl, double delta) {
  const double a = std::sqrt(gr);
  const double b = std::sqrt(gl);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(5, 5);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(5);
  // -i (t1 - 1) + a u = 0
  m(0, 0) = -I; m(0, 4) = a; rhs(0) = -I;
  // +i (0 - r1) + b u = 0
  m(1, 1) = -I; m(1, 4) = b;
  // -i t2 + a u = 0
  m(2, 2) = -I; m(2, 4) = a;
  // -i r2 + b u = 0
  m(3, 3) = -I; m(3, 4) = b;
  // delta u = a (1 + t1)/2 + b r1/2 + a t2/2 + b r2/2
  m(4, 4) = delta; m(4, 0) = -a / 2.0; m(4, 1) = -b / 2.0; m(4, 2) = -a / 2.0; m(4, 3) = -b / 2.0;
  rhs(4) = a / 2.0;
  return m.partialPivLu().solve(rhs);
}

TEST(OracleSmallLambda, MatchesHandAssembledSystem) {
  Sampler s;
  for (int n = 0; n < 200; ++n) {
    const double gr = s.rate();
    const double gl = s.rate();
    const double delta = s.detuning();
    const Eigen::VectorXcd ref = reference_small_atom(gr, gl, delta);
    const OracleSolution sol = solve_small_lambda(SmallAtomParams(gr, gl), delta, Incidence::left);
    EXPECT_LT(std::abs(sol.t1 - ref(0)), 1e-12);
    EXPECT_LT(std::abs(sol.r1 - ref(1)), 1e-12);
    EXPECT_LT(std::abs(sol.t2 - ref(2)), 1e-12);
    EXPECT_LT(std::abs(sol.r2 - ref(3)), 1e-12);
    EXPECT_LT(std::abs(sol.u_e - ref(4)), 1e-12);
  }
}

TEST(OracleSmallLambda, Examples) {
  OracleSolution sol = solve_small_lambda(SmallAtomParams(1.0, 0.0), 0.0, Incidence::left);
  EXPECT_LT(std::abs(sol.t1), 1e-14);
  EXPECT_NEAR(std::abs(sol.t2), 1.0, 1e-14);
  EXPECT_LT(std::abs(sol.r1), 1e-14);
  EXPECT_LT(std::abs(sol.r2), 1e-14);
  EXPECT_LT(std::abs(sol.t2 - complex(-1.0, 0.0)), 1e-14);

  sol = solve_small_lambda(SmallAtomParams(1.0, 1.0), 0.0, Incidence::left);
  EXPECT_NEAR(sol.outgoing_flux(), 1.0, 1e-14);

  sol = solve_small_lambda(SmallAtomParams(1.0, 2.0), 1.0, Incidence::right);
  EXPECT_NEAR(std::norm(sol.t1), 0.2, 1e-12);
  EXPECT_NEAR(std::norm(sol.t2), 0.4, 1e-12);
  EXPECT_EQ(sol.direction, Incidence::right);
}

TEST(OracleGiantLambda, DecoupledTransitionTransmitsElastically) {
  const OracleSolution sol = solve_giant_lambda(chiral(pi, 0, 0), 2.7, Incidence::left);
  EXPECT_NEAR(std::abs(sol.t1), 1.0, 1e-14);
  EXPECT_LT(std::abs(sol.t2), 1e-14);
  EXPECT_LT(std::abs(sol.r1), 1e-14);
  EXPECT_LT(std::abs(sol.r2), 1e-14);
}

TEST(OracleGiantLambda, ChiralAtomIgnoresRightIncidence) {
  Sampler s;
  for (int n = 0; n < 100; ++n) {
    const GiantAtomParams p({s.rate(), s.rate(), 0, 0}, s.phase(), s.phase(), s.tau());
    const OracleSolution sol = solve_giant_lambda(p, s.detuning(), Incidence::right);
    EXPECT_LT(std::abs(sol.t1 - complex(1.0, 0.0)), 1e-14);
    EXPECT_EQ(std::abs(sol.r1), 0.0);
    EXPECT_EQ(std::abs(sol.r2), 0.0);
    EXPECT_EQ(std::abs(sol.t2), 0.0);
    EXPECT_EQ(std::abs(sol.u_e), 0.0);
  }
}

TEST(OracleGiantLambda, AntisymmetricUnitConversion) {
  const OracleSolution sol = solve_giant_lambda(chiral(0.9 * pi, -0.9 * pi, 3.0), 0.0, Incidence::left);
  EXPECT_NEAR(std::norm(sol.t2), 1.0, 1e-9);
}

TEST(OracleGiantLambda, EquivalenceAndConservation) {
  Sampler s;
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const GiantAtomParams p({s.rate(), s.rate(), s.rate(), s.rate()}, s.phase(), s.phase(), s.tau());
    const double delta = s.detuning();
    const auto c = giant_lambda_coefficients(p, delta);
    const OracleSolution left = solve_giant_lambda(p, delta, Incidence::left);
    const OracleSolution right = solve_giant_lambda(p, delta, Incidence::right);
    worst = std::max({worst, std::abs(c.t1 - left.t1), std::abs(c.t2 - left.t2),
                      std::abs(c.t1_rev - right.t1), std::abs(c.t2_rev - right.t2)});
    EXPECT_LT(left.residual, kOracleResidualTolerance);
    EXPECT_LT(right.residual, kOracleResidualTolerance);
    EXPECT_NEAR(left.outgoing_flux(), 1.0, 1e-10);
    EXPECT_NEAR(right.outgoing_flux(), 1.0, 1e-10);
    ASSERT_TRUE(left.interior.has_value());
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(OracleGiantLambda, DirectionSymmetry) {
  Sampler s;
  for (int n = 0; n < 500; ++n) {
    const GiantAtomRates r{s.rate(), s.rate(), s.rate(), s.rate()};
    const double p1 = s.phase(), p2 = s.phase(), tau = s.tau(), delta = s.detuning();
    const GiantAtomParams p(r, p1, p2, tau);
    const GiantAtomParams swapped({r.gamma_1l, r.gamma_2l, r.gamma_1r, r.gamma_2r}, p1, p2, tau);
    const OracleSolution a = solve_giant_lambda(p, delta, Incidence::left);
    const OracleSolution b = solve_giant_lambda(swapped, delta, Incidence::right);
    EXPECT_NEAR(std::abs(a.t1), std::abs(b.t1), 1e-10);
    EXPECT_NEAR(std::abs(a.t2), std::abs(b.t2), 1e-10);
    EXPECT_NEAR(std::abs(a.r1), std::abs(b.r1), 1e-10);
    EXPECT_NEAR(std::abs(a.r2), std::abs(b.r2), 1e-10);
  }
  for (int n = 0; n < 500; ++n) {
    const double gr = s.rate(), gl = s.rate(), delta = s.detuning();
    const OracleSolution a = solve_small_lambda(SmallAtomParams(gr, gl), delta, Incidence::left);
    const OracleSolution b = solve_small_lambda(SmallAtomParams(gl, gr), delta, Incidence::right);
    EXPECT_NEAR(std::abs(a.t1), std::abs(b.t1), 1e-12);
    EXPECT_NEAR(std::abs(a.t2), std::abs(b.t2), 1e-12);
  }
}

TEST(OracleGiantLambda, UnitsRescaleCouplingsOnly) {
  const GiantAtomParams p({0.7, 1.3, 0.2, 0.4}, 0.3, -1.1, 2.0);
  const OracleSolution a = solve_giant_lambda(p, 0.8, Incidence::left);
  const OracleSolution b = solve_giant_lambda(p, 0.8, Incidence::left, RateUnits(1.0, 3.5));
  EXPECT_LT(std::abs(a.t1 - b.t1), 1e-13);
  EXPECT_LT(std::abs(a.t2 - b.t2), 1e-13);
}

TEST(OracleGiantLambda, LossHookDrainsFlux) {
  const GiantAtomParams p({1.0, 0.5, 0.3, 0.2}, 0.4, 1.2, 1.5);
  double previous = INFINITY;
  for (double kappa : {1.0, 0.1, 0.01, 1e-4, 0.0}) {
    const OracleSolution sol = solve_giant_lambda(p, 0.3, Incidence::left, {}, kappa);
    const double deficit = sol.absorbed_flux();
    EXPECT_GE(deficit, -1e-14);
    EXPECT_NEAR(deficit, 2.0 * kappa * std::norm(sol.u_e), 1e-12);
    EXPECT_LT(deficit, previous);
    previous = deficit;
  }
  EXPECT_LT(std::abs(previous), 1e-14);
}

TEST(OracleTwoLevel, Examples) {
  OracleSolution sol = solve_two_level(TwoLevelParams(1.0, 0.0), 0.0, Incidence::left);
  EXPECT_NEAR(std::abs(sol.t1), 1.0, 1e-14);
  EXPECT_LT(std::abs(sol.r1), 1e-14);
  EXPECT_LT(std::abs(sol.t1 - complex(-1.0, 0.0)), 1e-14);
  EXPECT_FALSE(sol.interior.has_value());

  sol = solve_two_level(TwoLevelParams(1.0, 1.0), 0.0, Incidence::left);
  EXPECT_LT(std::abs(sol.t1), 1e-14);
  EXPECT_NEAR(std::abs(sol.r1), 1.0, 1e-14);

  const TwoLevelParams lossy(1.0, 0.0, 0.5);
  sol = solve_two_level(lossy, 0.0, Incidence::left);
  EXPECT_LT(std::abs(sol.t1), 1e-14);
  EXPECT_NEAR(sol.absorbed_flux(), 1.0, 1e-14);
  EXPECT_LT(sol.outgoing_flux(), 1.0);
  sol = solve_two_level(lossy, 0.0, Incidence::right);
  EXPECT_NEAR(std::abs(sol.t1), 1.0, 1e-14);
}

TEST(OracleTwoLevel, MatchesClosedFormWithLoss) {
  Sampler s;
  for (int n = 0; n < 1000; ++n) {
    const TwoLevelParams p(s.rate(), s.rate(), n % 2 ? s.rate() : 0.0);
    const double delta = s.detuning();
    const auto c = two_level_coefficients(p, delta);
    const OracleSolution left = solve_two_level(p, delta, Incidence::left);
    const OracleSolution right = solve_two_level(p, delta, Incidence::right);
    EXPECT_LT(std::abs(c.t - left.t1), 1e-10);
    EXPECT_LT(std::abs(c.t_rev - right.t1), 1e-10);
    EXPECT_GE(left.absorbed_flux(), -1e-12);
    EXPECT_NEAR(left.absorbed_flux(), 2.0 * p.kappa() * std::norm(left.u_e), 1e-10);
  }
}

TEST(OracleDualVelocity, ValidatesReduction) {
  Sampler s;
  for (int n = 0; n < 300; ++n) {
    DualVelocityParams dv;
    dv.v1 = std::uniform_real_distribution<double>(0.5, 2.0)(s.rng);
    dv.v2 = std::uniform_real_distribution<double>(0.5, 2.0)(s.rng);
    dv.d = std::uniform_real_distribution<double>(0.1, 5.0)(s.rng);
    dv.omega_1 = s.phase();
    dv.omega_2 = s.phase();
    dv.omega_e = s.phase();
    dv.omega_f = s.phase();
    const double r[] = {s.rate(), s.rate(), s.rate(), s.rate()};
    dv.g_1r = std::sqrt(r[0] * dv.v1); dv.xi_1r = std::sqrt(r[0] * dv.v2);
    dv.g_2r = std::sqrt(r[1] * dv.v1); dv.xi_2r = std::sqrt(r[1] * dv.v2);
    dv.g_1l = std::sqrt(r[2] * dv.v1); dv.xi_1l = std::sqrt(r[2] * dv.v2);
    dv.g_2l = std::sqrt(r[3] * dv.v1); dv.xi_2l = std::sqrt(r[3] * dv.v2);
    const double k = s.detuning() / dv.v1;
    const DualVelocityReduction red = dual_velocity_reduction(dv, k);
    const auto c = giant_lambda_coefficients(red.params, red.delta_prime);
    const OracleSolution left = solve_dual_velocity(dv, k, Incidence::left);
    const OracleSolution right = solve_dual_velocity(dv, k, Incidence::right);
    EXPECT_LT(std::abs(c.t1 - left.t1), 1e-10);
    EXPECT_LT(std::abs(c.t2 - left.t2), 1e-10);
    EXPECT_LT(std::abs(c.t1_rev - right.t1), 1e-10);
    EXPECT_LT(std::abs(c.t2_rev - right.t2), 1e-10);
    EXPECT_NEAR(left.outgoing_flux(), 1.0, 1e-10);
    EXPECT_LT(left.residual, kOracleResidualTolerance);
  }
}

TEST(Oracle, RejectsBadInput) {
  EXPECT_THROW(solve_small_lambda(SmallAtomParams(1, 0), NAN, Incidence::left), error);
  EXPECT_THROW(solve_giant_lambda(chiral(0, 0, 1), 0.0, Incidence::left, {}, -1.0), error);
}

}  // namespace
