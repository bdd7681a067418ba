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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "chiralwg/closed_form.hpp"
#include "chiralwg/oracle.hpp"

/**
 * @file verification.hpp
 * Seeded random comparison of every closed form against the oracle.
 *
 * Draws: rates log-uniform in [0.01, 10], static phases uniform in
 * [-2 pi, 2 pi], tau = 0 with probability 1/10 and otherwise uniform in
 * [0.01, 10], detuning uniform in [-20, 20].
 */

namespace chiralwg {

struct VerifyThresholds {
  double deviation = 1e-10;
  double residual = 1e-12;
  double flux = 1e-10;
  double reciprocity = 1e-12;
};

struct ModelVerification {
  std::string model;
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double max_residual = 0.0;
  double max_flux_violation = 0.0;
  // Two-level only: max ||t| - |t_rev|| over the lossless draws.
  std::optional<double> max_reciprocity;
  bool pass = false;
};

/// Bit-reproducible sampler: mt19937_64 with explicit 53-bit conversion.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t stream) : engine_(mix(seed, stream)) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

namespace detail {

inline double draw_rate(SampleStream& s) { return s.log_uniform(0.01, 10.0); }
inline double draw_phase(SampleStream& s) {
  return s.uniform(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
}
inline double draw_tau(SampleStream& s) {
  return s.uniform01() < 0.1 ? 0.0 : s.uniform(0.01, 10.0);
}
inline double draw_detuning(SampleStream& s) { return s.uniform(-20.0, 20.0); }

inline void track(double& slot, double value) {
  slot = std::isnan(value) ? value : std::max(slot, value);
}

inline ModelVerification start(const char* model, std::size_t samples) {
  ModelVerification v;
  v.model = model;
  v.samples = samples;
  return v;
}

inline bool below(double value, double threshold) { return value < threshold; }

inline void finish(ModelVerification& v, const VerifyThresholds& th) {
  v.pass = below(v.max_deviation, th.deviation) && below(v.max_residual, th.residual) &&
           below(v.max_flux_violation, th.flux) &&
           (!v.max_reciprocity || below(*v.max_reciprocity, th.reciprocity));
}

inline void compare_lambda(ModelVerification& v, const ScatteringCoefficients& c,
                           const OracleSolution& left, const OracleSolution& right) {
  track(v.max_deviation, std::abs(c.t1 - left.t1));
  track(v.max_deviation, std::abs(c.t2 - left.t2));
  track(v.max_deviation, std::abs(c.t1_rev - right.t1));
  track(v.max_deviation, std::abs(c.t2_rev - right.t2));
  track(v.max_residual, left.residual);
  track(v.max_residual, right.residual);
  track(v.max_flux_violation, std::abs(left.absorbed_flux()));
  track(v.max_flux_violation, std::abs(right.absorbed_flux()));
}

}  // namespace detail

inline ModelVerification verify_small_lambda(std::size_t samples, std::uint64_t seed,
                                             const VerifyThresholds& th = {}) {
  SampleStream s(seed, 0);
  ModelVerification v = detail::start("small_lambda", samples);
  for (std::size_t n = 0; n < samples; ++n) {
    const SmallAtomParams p(detail::draw_rate(s), detail::draw_rate(s));
    const double delta = detail::draw_detuning(s);
    detail::compare_lambda(v, small_lambda_coefficients(p, delta),
                           solve_small_lambda(p, delta, Incidence::left),
                           solve_small_lambda(p, delta, Incidence::right));
  }
  detail::finish(v, th);
  return v;
}

inline ModelVerification verify_giant_lambda(std::size_t samples, std::uint64_t seed,
                                             const VerifyThresholds& th = {}) {
  SampleStream s(seed, 1);
  ModelVerification v = detail::start("giant_lambda", samples);
  for (std::size_t n = 0; n < samples; ++n) {
    GiantAtomRates r{detail::draw_rate(s), detail::draw_rate(s), detail::draw_rate(s),
                     detail::draw_rate(s)};
    const double phi1 = detail::draw_phase(s);
    const double phi2 = detail::draw_phase(s);
    const double tau = detail::draw_tau(s);
    const GiantAtomParams p(r, phi1, phi2, tau);
    const double delta = detail::draw_detuning(s);
    detail::compare_lambda(v, giant_lambda_coefficients(p, delta),
                           solve_giant_lambda(p, delta, Incidence::left),
                           solve_giant_lambda(p, delta, Incidence::right));
  }
  detail::finish(v, th);
  return v;
}

/// Even draws are lossless (flux and reciprocity checks); odd draws carry
/// kappa in [0.01, 10] and check that the flux deficit equals 2 kappa |w_e|^2 / v.
inline ModelVerification verify_two_level(std::size_t samples, std::uint64_t seed,
                                          const VerifyThresholds& th = {}) {
  SampleStream s(seed, 2);
  ModelVerification v = detail::start("two_level", samples);
  v.max_reciprocity = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    const double gr = detail::draw_rate(s);
    const double gl = detail::draw_rate(s);
    const double kappa = n % 2 == 0 ? 0.0 : detail::draw_rate(s);
    const TwoLevelParams p(gr, gl, kappa);
    const double delta = detail::draw_detuning(s);
    const TwoLevelCoefficients c = two_level_coefficients(p, delta);
    const OracleSolution left = solve_two_level(p, delta, Incidence::left);
    const OracleSolution right = solve_two_level(p, delta, Incidence::right);
    detail::track(v.max_deviation, std::abs(c.t - left.t1));
    detail::track(v.max_deviation, std::abs(c.t_rev - right.t1));
    detail::track(v.max_residual, left.residual);
    detail::track(v.max_residual, right.residual);
    for (const OracleSolution* sol : {&left, &right}) {
      const double expected_loss = 2.0 * kappa * std::norm(sol->u_e);
      detail::track(v.max_flux_violation, std::abs(sol->absorbed_flux() - expected_loss));
    }
    if (kappa == 0.0) {
      detail::track(*v.max_reciprocity, std::abs(std::abs(c.t) - std::abs(c.t_rev)));
    }
  }
  detail::finish(v, th);
  return v;
}

/**
 * Two explicit group velocities: the oracle runs on (v1, v2, k, q) while the
 * closed form runs on the reduced giant atom at detuning delta'.
 */
inline ModelVerification verify_dual_velocity(std::size_t samples, std::uint64_t seed,
                                              const VerifyThresholds& th = {}) {
  SampleStream s(seed, 3);
  ModelVerification v = detail::start("dual_velocity", samples);
  for (std::size_t n = 0; n < samples; ++n) {
    DualVelocityParams dv;
    dv.v1 = s.uniform(0.5, 2.0);
    dv.v2 = s.uniform(0.5, 2.0);
    dv.d = s.uniform(0.1, 5.0);
    dv.omega_1 = s.uniform(-5.0, 5.0);
    dv.omega_2 = s.uniform(-5.0, 5.0);
    dv.omega_e = s.uniform(-5.0, 5.0);
    dv.omega_f = s.uniform(-5.0, 5.0);
    double* g[] = {&dv.g_1r, &dv.g_2r, &dv.g_1l, &dv.g_2l};
    double* xi[] = {&dv.xi_1r, &dv.xi_2r, &dv.xi_1l, &dv.xi_2l};
    for (int j = 0; j < 4; ++j) {
      const double rate = detail::draw_rate(s);
      *g[j] = std::sqrt(rate * dv.v1);
      *xi[j] = std::sqrt(rate * dv.v2);
    }
    const double delta_prime = detail::draw_detuning(s);
    const double k = (delta_prime - dv.omega_1 + dv.omega_e) / dv.v1;
    const DualVelocityReduction red = dual_velocity_reduction(dv, k);
    detail::compare_lambda(v, giant_lambda_coefficients(red.params, red.delta_prime),
                           solve_dual_velocity(dv, k, Incidence::left),
                           solve_dual_velocity(dv, k, Incidence::right));
  }
  detail::finish(v, th);
  return v;
}

}  // namespace chiralwg
