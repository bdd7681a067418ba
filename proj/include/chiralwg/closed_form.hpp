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
#include <limits>
#include <optional>
#include <string>

#include "chiralwg/core_model.hpp"

/**
 * @file closed_form.hpp
 * Analytic transmission amplitudes and effective parameters.
 */

namespace chiralwg {

inline constexpr double kSingularDenominator = 1e-14;

struct TwoLevelCoefficients {
  complex t;
  complex t_rev;
};

struct EffectiveParams {
  double delta_eff = 0.0;
  double gamma_eff = 0.0;
};

struct DualVelocityReduction {
  GiantAtomParams params;
  double delta_prime;
  // Wavevector of the converted photon fixed by energy conservation.
  double q;
};

inline ScatteringCoefficients small_lambda_coefficients(const SmallAtomParams& params,
                                                        double delta) {
  detail::require_finite(delta, "delta");
  const complex i{0.0, 1.0};
  const double gr = params.gamma_r();
  const double gl = params.gamma_l();
  const complex den = delta + i * (gr + gl);
  ScatteringCoefficients c;
  c.t1 = (delta + i * gl) / den;
  c.t2 = -i * gr / den;
  c.t1_rev = (delta + i * gr) / den;
  c.t2_rev = -i * gl / den;
  return c;
}

/// Loss enters through the complex detuning delta_real + i kappa.
inline TwoLevelCoefficients two_level_coefficients(const TwoLevelParams& params,
                                                   double delta_real) {
  detail::require_finite(delta_real, "delta");
  const complex i{0.0, 1.0};
  const complex detuning{delta_real, params.kappa()};
  const double gr = params.gamma_r();
  const double gl = params.gamma_l();
  const complex den = 2.0 * detuning + i * (gl + gr);
  return {(2.0 * detuning + i * (gl - gr)) / den,
          (2.0 * detuning + i * (gr - gl)) / den};
}

namespace detail {

struct GiantTerms {
  complex f_plus;
  complex f_minus;
  complex f_minus_rev;
  complex denominator;
};

inline GiantTerms giant_terms(const GiantAtomParams& p, double delta, const PhasePair& ph) {
  const complex i{0.0, 1.0};
  const complex e1 = ph.exp_1();
  const complex e2 = ph.exp_2();
  const complex e1_conj = std::conj(e1);
  const double g12r = p.gamma_12r();
  const double g12l = p.gamma_12l();
  GiantTerms terms;
  terms.f_plus = (g12r + g12l) * (e1 + e2);
  terms.f_minus = g12r * (e2 - e1_conj) + g12l * (e1 + e2);
  terms.f_minus_rev = g12r * (e1 + e2) + g12l * (e2 - e1_conj);
  const double sum_r = p.gamma_1r() + p.gamma_2r();
  const double sum_l = p.gamma_1l() + p.gamma_2l();
  terms.denominator = delta + i * (sum_r + sum_l + terms.f_plus);
  return terms;
}

}  // namespace detail

/**
 * Giant-atom transmission amplitudes for both incidence directions.
 *
 * Returns a result with `singular` set (and NaN amplitudes) where the
 * denominator magnitude drops below 1e-14; no limit is taken there.
 */
inline ScatteringCoefficients giant_lambda_coefficients(const GiantAtomParams& p,
                                                        double delta) {
  detail::require_finite(delta, "delta");
  const complex i{0.0, 1.0};
  const PhasePair ph = evaluate_phases(p, delta);
  const detail::GiantTerms terms = detail::giant_terms(p, delta, ph);

  ScatteringCoefficients c;
  if (std::abs(terms.denominator) < kSingularDenominator) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    c.t1 = c.t2 = c.t1_rev = c.t2_rev = complex{nan, nan};
    c.singular = true;
    return c;
  }

  const complex e1 = ph.exp_1();
  const complex e2 = ph.exp_2();
  const double sum_r = p.gamma_1r() + p.gamma_2r();
  const double sum_l = p.gamma_1l() + p.gamma_2l();
  const double g12r = p.gamma_12r();
  const double g12l = p.gamma_12l();
  const complex e12 = std::polar(1.0, ph.phi_1 - ph.phi_2);

  c.t1 = (delta + i * (sum_l + terms.f_minus)) / terms.denominator;
  c.t2 = -i * (p.gamma_1r() + p.gamma_2r() * e12 + g12r * (e1 + std::conj(e2))) /
         terms.denominator;
  if (p.ideal_chiral()) {
    // The t1_rev numerator is then identical to the denominator.
    c.t1_rev = 1.0;
    c.t2_rev = 0.0;
    return c;
  }
  c.t1_rev = (delta + i * (sum_r + terms.f_minus_rev)) / terms.denominator;
  c.t2_rev = -i * (p.gamma_1l() + p.gamma_2l() * std::conj(e12) + g12l * (std::conj(e1) + e2)) /
             terms.denominator;
  return c;
}

/// Real and imaginary parts of the giant-atom scattering denominator.
inline EffectiveParams effective_parameters(const GiantAtomParams& p, double delta) {
  detail::require_finite(delta, "delta");
  const PhasePair ph = evaluate_phases(p, delta);
  const double g12 = p.gamma_12r() + p.gamma_12l();
  return {delta - g12 * (std::sin(ph.phi_1) + std::sin(ph.phi_2)),
          p.total_rate() + g12 * (std::cos(ph.phi_1) + std::cos(ph.phi_2))};
}

/**
 * Residual whose zeros are exactly the unit-conversion (T2 = 1) detunings.
 * Valid for the ideal chiral giant atom with equal right-moving rates; the
 * residual equals |denominator|^2 - |t2 numerator|^2 and is never negative.
 */
inline double unit_conversion_condition(const GiantAtomParams& p, double delta) {
  detail::require_finite(delta, "delta");
  if (!p.ideal_chiral()) {
    throw error(errc::unsupported_regime, "unit conversion condition requires gamma_1l = gamma_2l = 0");
  }
  if (p.gamma_1r() != p.gamma_2r()) {
    throw error(errc::unsupported_regime, "unit conversion condition requires gamma_1r == gamma_2r");
  }
  const double g = p.gamma_1r();
  const PhasePair ph = evaluate_phases(p, delta);
  return delta * delta +
         2.0 * (g * g - g * g * std::cos(ph.phi_1 + ph.phi_2) -
                g * delta * (std::sin(ph.phi_1) + std::sin(ph.phi_2)));
}

/// d(residual)/d(delta), used to refine tangential zeros of the residual.
inline double unit_conversion_condition_slope(const GiantAtomParams& p, double delta) {
  const double g = p.gamma_1r();
  const PhasePair ph = evaluate_phases(p, delta);
  const double t1 = p.tau();
  const double t2 = p.tau_2();
  return 2.0 * delta +
         2.0 * (g * g * std::sin(ph.phi_1 + ph.phi_2) * (t1 + t2) -
                g * (std::sin(ph.phi_1) + std::sin(ph.phi_2)) -
                g * delta * (t1 * std::cos(ph.phi_1) + t2 * std::cos(ph.phi_2)));
}

inline constexpr double kRateMatchTolerance = 1e-12;

/**
 * Maps the two-velocity model at elastic wavevector k onto an equivalent
 * giant atom with independent retardation times tau_1 = d/v1, tau_2 = d/v2.
 *
 * Requires |g_{j,b}|^2 / v1 == |xi_{j,b}|^2 / v2 for every point j and
 * direction b. Couplings at the two points must also share a sign on each
 * branch so that the cross rates are +sqrt(gamma_1 gamma_2).
 */
inline DualVelocityReduction dual_velocity_reduction(const DualVelocityParams& dv, double k) {
  dv.validate();
  detail::require_finite(k, "k");
  struct Pair {
    double g, xi;
    const char* name;
  };
  const Pair pairs[] = {{dv.g_1r, dv.xi_1r, "1r"}, {dv.g_2r, dv.xi_2r, "2r"},
                        {dv.g_1l, dv.xi_1l, "1l"}, {dv.g_2l, dv.xi_2l, "2l"}};
  double rates[4];
  for (int n = 0; n < 4; ++n) {
    const double from_g = pairs[n].g * pairs[n].g / dv.v1;
    const double from_xi = pairs[n].xi * pairs[n].xi / dv.v2;
    const double scale = std::max({1.0, from_g, from_xi});
    if (std::abs(from_g - from_xi) > kRateMatchTolerance * scale) {
      throw error(errc::rate_mismatch,
                  std::string("|g_") + pairs[n].name + "|^2/v1 != |xi_" + pairs[n].name + "|^2/v2");
    }
    rates[n] = from_g;
  }
  if (dv.g_1r * dv.g_2r < 0.0 || dv.xi_1r * dv.xi_2r < 0.0 || dv.g_1l * dv.g_2l < 0.0 ||
      dv.xi_1l * dv.xi_2l < 0.0) {
    throw error(errc::unsupported_regime, "couplings at the two points must share a sign");
  }

  const double tau_1 = dv.tau_1();
  const double tau_2 = dv.tau_2();
  const double delta_prime = dv.omega_1 - dv.omega_e + dv.v1 * k;
  const double q = (dv.omega_1 + dv.v1 * k - dv.omega_2 - dv.omega_f) / dv.v2;
  const double phi_1_0 = (dv.omega_e - dv.omega_1) * tau_1;
  const double phi_2_0 = (dv.omega_e - dv.omega_f - dv.omega_2) * tau_2;
  GiantAtomParams params({rates[0], rates[1], rates[2], rates[3]}, phi_1_0, phi_2_0, tau_1,
                         tau_2 == tau_1 ? std::nullopt : std::optional<double>(tau_2));
  return {params, delta_prime, q};
}

}  // namespace chiralwg
