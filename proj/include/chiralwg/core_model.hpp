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

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

/**
 * @file core_model.hpp
 * Parameter types and the phase rule shared by every scattering model.
 *
 * Units: every rate and detuning is expressed in units of a reference rate
 * (the first right-moving decay rate of the giant atom, or the right-moving
 * rate of the small atom). Retardation times are in units of the inverse
 * reference rate.
 */

namespace chiralwg {

using complex = std::complex<double>;

enum class errc {
  invalid_parameter,
  non_finite,
  unsupported_regime,
  rate_mismatch,
  singular_system,
  no_peak,
};

inline const char* to_string(errc code) {
  switch (code) {
    case errc::invalid_parameter: return "InvalidParameter";
    case errc::non_finite: return "NonFinite";
    case errc::unsupported_regime: return "UnsupportedRegime";
    case errc::rate_mismatch: return "RateMismatch";
    case errc::singular_system: return "SingularSystem";
    case errc::no_peak: return "NoPeak";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

namespace detail {

inline void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw error(errc::non_finite, std::string(name) + " must be finite");
  }
}

inline void require_rate(double value, const char* name) {
  require_finite(value, name);
  if (value < 0.0) {
    throw error(errc::invalid_parameter, std::string(name) + " must be >= 0");
  }
}

inline void require_positive(double value, const char* name) {
  require_finite(value, name);
  if (!(value > 0.0)) {
    throw error(errc::invalid_parameter, std::string(name) + " must be > 0");
  }
}

}  // namespace detail

struct RateUnits {
  double reference_rate = 1.0;
  double group_velocity = 1.0;

  RateUnits() = default;
  RateUnits(double reference_rate_, double group_velocity_)
      : reference_rate(reference_rate_), group_velocity(group_velocity_) {
    detail::require_positive(reference_rate, "reference_rate");
    detail::require_positive(group_velocity, "group_velocity");
  }

  bool operator==(const RateUnits&) const = default;
};

/// Single coupling point, both transitions sharing the same chiral rates.
class SmallAtomParams {
 public:
  SmallAtomParams(double gamma_r, double gamma_l)
      : gamma_r_(gamma_r), gamma_l_(gamma_l) {
    detail::require_rate(gamma_r_, "gamma_r");
    detail::require_rate(gamma_l_, "gamma_l");
    if (!(gamma_r_ + gamma_l_ > 0.0)) {
      throw error(errc::invalid_parameter, "atom is decoupled (gamma_r + gamma_l == 0)");
    }
  }

  double gamma_r() const noexcept { return gamma_r_; }
  double gamma_l() const noexcept { return gamma_l_; }
  double total_rate() const noexcept { return gamma_r_ + gamma_l_; }

  bool operator==(const SmallAtomParams&) const = default;

 private:
  double gamma_r_;
  double gamma_l_;
};

/// Chiral two-level atom with intrinsic (non-waveguide) loss kappa.
class TwoLevelParams {
 public:
  TwoLevelParams(double gamma_r, double gamma_l, double kappa = 0.0)
      : gamma_r_(gamma_r), gamma_l_(gamma_l), kappa_(kappa) {
    detail::require_rate(gamma_r_, "gamma_r");
    detail::require_rate(gamma_l_, "gamma_l");
    detail::require_rate(kappa_, "kappa");
    if (!(gamma_r_ + gamma_l_ > 0.0)) {
      throw error(errc::invalid_parameter, "atom is decoupled (gamma_r + gamma_l == 0)");
    }
  }

  double gamma_r() const noexcept { return gamma_r_; }
  double gamma_l() const noexcept { return gamma_l_; }
  double kappa() const noexcept { return kappa_; }

  bool operator==(const TwoLevelParams&) const = default;

 private:
  double gamma_r_;
  double gamma_l_;
  double kappa_;
};

/// Directional decay rates at the two coupling points x = 0 (1) and x = d (2).
struct GiantAtomRates {
  double gamma_1r = 0.0;
  double gamma_2r = 0.0;
  double gamma_1l = 0.0;
  double gamma_2l = 0.0;

  bool operator==(const GiantAtomRates&) const = default;
};

/**
 * Giant Lambda atom coupled at x = 0 and x = d.
 *
 * The accumulated phases between the coupling points are
 * phi_1 = phi_1_0 + tau * delta (elastic channel) and
 * phi_2 = phi_2_0 + tau_2 * delta (converted channel). With a common group
 * velocity tau_2 equals tau; a distinct tau_2 describes two group velocities.
 */
class GiantAtomParams {
 public:
  GiantAtomParams(GiantAtomRates rates, double phi_1_0, double phi_2_0,
                  double tau, std::optional<double> tau_2 = std::nullopt)
      : rates_(rates), phi_1_0_(phi_1_0), phi_2_0_(phi_2_0), tau_(tau), tau_2_(tau_2) {
    detail::require_rate(rates_.gamma_1r, "gamma_1r");
    detail::require_rate(rates_.gamma_2r, "gamma_2r");
    detail::require_rate(rates_.gamma_1l, "gamma_1l");
    detail::require_rate(rates_.gamma_2l, "gamma_2l");
    if (!(rates_.gamma_1r + rates_.gamma_2r + rates_.gamma_1l + rates_.gamma_2l > 0.0)) {
      throw error(errc::invalid_parameter, "atom is decoupled (all rates zero)");
    }
    detail::require_finite(phi_1_0_, "phi_1_0");
    detail::require_finite(phi_2_0_, "phi_2_0");
    detail::require_rate(tau_, "tau");
    if (tau_2_) detail::require_rate(*tau_2_, "tau_2");
  }

  const GiantAtomRates& rates() const noexcept { return rates_; }
  double gamma_1r() const noexcept { return rates_.gamma_1r; }
  double gamma_2r() const noexcept { return rates_.gamma_2r; }
  double gamma_1l() const noexcept { return rates_.gamma_1l; }
  double gamma_2l() const noexcept { return rates_.gamma_2l; }
  double gamma_12r() const { return std::sqrt(rates_.gamma_1r * rates_.gamma_2r); }
  double gamma_12l() const { return std::sqrt(rates_.gamma_1l * rates_.gamma_2l); }
  double total_rate() const noexcept {
    return rates_.gamma_1r + rates_.gamma_2r + rates_.gamma_1l + rates_.gamma_2l;
  }

  double phi_1_0() const noexcept { return phi_1_0_; }
  double phi_2_0() const noexcept { return phi_2_0_; }
  double tau() const noexcept { return tau_; }
  double tau_2() const noexcept { return tau_2_.value_or(tau_); }
  bool has_distinct_tau_2() const noexcept { return tau_2_.has_value(); }
  const std::optional<double>& tau_2_override() const noexcept { return tau_2_; }

  bool ideal_chiral() const noexcept {
    return rates_.gamma_1l == 0.0 && rates_.gamma_2l == 0.0;
  }

  GiantAtomParams with_phases(double phi_1_0, double phi_2_0) const {
    return GiantAtomParams(rates_, phi_1_0, phi_2_0, tau_, tau_2_);
  }

  bool operator==(const GiantAtomParams&) const = default;

 private:
  GiantAtomRates rates_;
  double phi_1_0_;
  double phi_2_0_;
  double tau_;
  std::optional<double> tau_2_;
};

struct PhasePair {
  double phi_1 = 0.0;
  double phi_2 = 0.0;

  complex exp_1() const { return std::polar(1.0, phi_1); }
  complex exp_2() const { return std::polar(1.0, phi_2); }
};

/**
 * Two group velocities: |g> couples to a branch with velocity v1 around
 * omega_1, |f> to a branch with velocity v2 around omega_2. The g couplings
 * drive |g> <-> |e>, the xi couplings drive |f> <-> |e>.
 */
struct DualVelocityParams {
  double v1 = 1.0;
  double v2 = 1.0;
  double d = 1.0;
  double omega_1 = 0.0;
  double omega_2 = 0.0;
  double omega_e = 0.0;
  double omega_f = 0.0;
  double g_1r = 0.0, g_2r = 0.0, g_1l = 0.0, g_2l = 0.0;
  double xi_1r = 0.0, xi_2r = 0.0, xi_1l = 0.0, xi_2l = 0.0;

  void validate() const {
    detail::require_positive(v1, "v1");
    detail::require_positive(v2, "v2");
    detail::require_positive(d, "d");
    for (double w : {omega_1, omega_2, omega_e, omega_f, g_1r, g_2r, g_1l, g_2l,
                     xi_1r, xi_2r, xi_1l, xi_2l}) {
      detail::require_finite(w, "dual-velocity field");
    }
  }

  double tau_1() const { return d / v1; }
  double tau_2() const { return d / v2; }

  bool operator==(const DualVelocityParams&) const = default;
};

/// Transmission amplitudes for left (t1, t2) and right (t1_rev, t2_rev) incidence.
struct ScatteringCoefficients {
  complex t1;
  complex t2;
  complex t1_rev;
  complex t2_rev;
  // Set when the scattering denominator vanishes; amplitudes are NaN then.
  bool singular = false;

  double T1() const { return std::norm(t1); }
  double T2() const { return std::norm(t2); }
  double T1_rev() const { return std::norm(t1_rev); }
  double T2_rev() const { return std::norm(t2_rev); }
  double I1() const { return T1() - T1_rev(); }
  double I2() const { return T2() - T2_rev(); }
};

inline constexpr double kMarkovianThreshold = 0.1;

inline PhasePair evaluate_phases(const GiantAtomParams& params, double delta) {
  return {params.phi_1_0() + params.tau() * delta,
          params.phi_2_0() + params.tau_2() * delta};
}

/// tau * (sum of all rates). Uses the longer of the two retardation times.
inline double markovianity_index(const GiantAtomParams& params) {
  const double tau = params.tau_2() > params.tau() ? params.tau_2() : params.tau();
  return tau * params.total_rate();
}

inline bool is_markovian(const GiantAtomParams& params,
                         double threshold = kMarkovianThreshold) {
  return markovianity_index(params) < threshold;
}

}  // namespace chiralwg
