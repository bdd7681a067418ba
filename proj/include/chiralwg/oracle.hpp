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

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "chiralwg/core_model.hpp"

/**
 * @file oracle.hpp
 * Boundary-matching solver for the stationary single-photon problem.
 *
 * The waveguide fields are piecewise plane waves between coupling points.
 * Each delta coupling gives one jump condition per field,
 *
 *   right-moving:  -i v (c_after - c_before) e^{+ikx_p} + g_p u = 0
 *   left-moving:   +i v (c_after - c_before) e^{-ikx_p} + g_p u = 0
 *
 * and the excited-state equation closes the system,
 *
 *   (delta + i kappa) u = sum_p g_p * field(x_p).
 *
 * A field evaluated at its own coupling point is taken as the average of
 * the one-sided limits (midpoint regularization). This is the only
 * convention under which a single point coupling reproduces the width
 * Gamma = g^2 / v rather than Gamma / 2 for each waveguide channel.
 *
 * Nothing here uses any closed-form amplitude.
 */

namespace chiralwg {

enum class Incidence { left, right };

struct InteriorAmplitudes {
  complex A;  // elastic, right-moving
  complex B;  // elastic, left-moving
  complex M;  // converted, right-moving
  complex N;  // converted, left-moving
};

struct OracleSolution {
  // Outgoing amplitudes. For right incidence t1/t2 travel left and r1/r2
  // travel right. Converted-channel amplitudes are flux normalized to the
  // incident channel (identical to the raw amplitude for a common velocity).
  complex t1;
  complex r1;
  complex t2;
  complex r2;
  std::optional<InteriorAmplitudes> interior;
  complex u_e;
  // Max |violation| over every matching equation, recomputed from the result.
  double residual = 0.0;
  Incidence direction = Incidence::left;

  double outgoing_flux() const {
    return std::norm(t1) + std::norm(r1) + std::norm(t2) + std::norm(r2);
  }
  double absorbed_flux() const { return 1.0 - outgoing_flux(); }
};

inline constexpr double kOracleResidualTolerance = 1e-12;

namespace detail {

/// One waveguide channel tied to one lower atomic state.
struct WaveguideChannel {
  double velocity = 1.0;
  // e^{i k d} of this channel's wavevector; unused for a single point.
  complex phase_at_d{1.0, 0.0};
  std::array<double, 2> coupling_r{0.0, 0.0};
  std::array<double, 2> coupling_l{0.0, 0.0};
};

class BoundaryMatchingSystem {
 public:
  enum Mover { right_moving = 0, left_moving = 1 };

  BoundaryMatchingSystem(std::vector<WaveguideChannel> channels, int n_points, complex detuning,
                         Incidence direction)
      : channels_(std::move(channels)), n_points_(n_points), detuning_(detuning),
        direction_(direction) {
    // Unknown index per (channel, mover, segment); -1 marks a fixed coefficient.
    const int n_segments = n_points_ + 1;
    index_.assign(channels_.size() * 2 * n_segments, -1);
    int next = 0;
    for (std::size_t c = 0; c < channels_.size(); ++c) {
      for (int m = 0; m < 2; ++m) {
        for (int s = 0; s < n_segments; ++s) {
          const bool incoming_boundary =
              (m == right_moving && s == 0) || (m == left_moving && s == n_points_);
          if (!incoming_boundary) index_[slot(c, m, s)] = next++;
        }
      }
    }
    excited_index_ = next++;
    n_unknowns_ = next;
  }

  int unknowns() const { return n_unknowns_; }
  int excited_index() const { return excited_index_; }
  int n_points() const { return n_points_; }

  /// Coefficient of the plane wave in a segment (fixed or taken from x).
  complex coefficient(const Eigen::VectorXcd& x, std::size_t channel, int mover, int segment) const {
    const int idx = index_[slot(channel, mover, segment)];
    if (idx >= 0) return x(idx);
    const bool driven = channel == 0 && ((direction_ == Incidence::left && mover == right_moving) ||
                                         (direction_ == Incidence::right && mover == left_moving));
    return driven ? complex{1.0, 0.0} : complex{0.0, 0.0};
  }

  /// Violation of every matching equation for the amplitude vector x.
  Eigen::VectorXcd equations(const Eigen::VectorXcd& x) const {
    const complex i{0.0, 1.0};
    const complex u = x(excited_index_);
    Eigen::VectorXcd out(n_unknowns_);
    int row = 0;
    complex source{0.0, 0.0};
    for (std::size_t c = 0; c < channels_.size(); ++c) {
      const WaveguideChannel& ch = channels_[c];
      for (int p = 0; p < n_points_; ++p) {
        const complex wave_r = p == 0 ? complex{1.0, 0.0} : ch.phase_at_d;
        const complex wave_l = std::conj(wave_r);
        const complex r_before = coefficient(x, c, right_moving, p);
        const complex r_after = coefficient(x, c, right_moving, p + 1);
        const complex l_before = coefficient(x, c, left_moving, p);
        const complex l_after = coefficient(x, c, left_moving, p + 1);
        out(row++) = -i * ch.velocity * (r_after - r_before) * wave_r + ch.coupling_r[p] * u;
        out(row++) = i * ch.velocity * (l_after - l_before) * wave_l + ch.coupling_l[p] * u;
        source += ch.coupling_r[p] * 0.5 * (r_before + r_after) * wave_r +
                  ch.coupling_l[p] * 0.5 * (l_before + l_after) * wave_l;
      }
    }
    out(row++) = detuning_ * u - source;
    return out;
  }

  /// Assembles the affine map x -> equations(x) column by column and solves it.
  Eigen::VectorXcd solve() const {
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n_unknowns_);
    const Eigen::VectorXcd offset = equations(zero);
    Eigen::MatrixXcd matrix(n_unknowns_, n_unknowns_);
    for (int j = 0; j < n_unknowns_; ++j) {
      Eigen::VectorXcd unit = zero;
      unit(j) = 1.0;
      matrix.col(j) = equations(unit) - offset;
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(matrix);
    if (!(lu.rcond() > 1e-14)) {
      throw error(errc::singular_system, "boundary-matching matrix is rank deficient");
    }
    return lu.solve(-offset);
  }

  double residual(const Eigen::VectorXcd& x) const {
    return equations(x).cwiseAbs().maxCoeff();
  }

 private:
  std::size_t slot(std::size_t channel, int mover, int segment) const {
    return (channel * 2 + static_cast<std::size_t>(mover)) * static_cast<std::size_t>(n_points_ + 1) +
           static_cast<std::size_t>(segment);
  }

  std::vector<WaveguideChannel> channels_;
  int n_points_;
  complex detuning_;
  Incidence direction_;
  std::vector<int> index_;
  int excited_index_ = 0;
  int n_unknowns_ = 0;
};

inline OracleSolution solve_system(const BoundaryMatchingSystem& system,
                                   const std::vector<WaveguideChannel>& channels,
                                   Incidence direction) {
  using S = BoundaryMatchingSystem;
  const Eigen::VectorXcd x = system.solve();
  OracleSolution sol;
  sol.direction = direction;
  sol.residual = system.residual(x);
  sol.u_e = x(system.excited_index());
  const int last = system.n_points();
  const bool left = direction == Incidence::left;
  const int trans_mover = left ? S::right_moving : S::left_moving;
  const int refl_mover = left ? S::left_moving : S::right_moving;
  const int trans_segment = left ? last : 0;
  const int refl_segment = left ? 0 : last;

  sol.t1 = system.coefficient(x, 0, trans_mover, trans_segment);
  sol.r1 = system.coefficient(x, 0, refl_mover, refl_segment);
  if (channels.size() > 1) {
    const double weight = std::sqrt(channels[1].velocity / channels[0].velocity);
    sol.t2 = weight * system.coefficient(x, 1, trans_mover, trans_segment);
    sol.r2 = weight * system.coefficient(x, 1, refl_mover, refl_segment);
  }
  if (last == 2 && channels.size() > 1) {
    sol.interior = InteriorAmplitudes{system.coefficient(x, 0, S::right_moving, 1),
                                      system.coefficient(x, 0, S::left_moving, 1),
                                      system.coefficient(x, 1, S::right_moving, 1),
                                      system.coefficient(x, 1, S::left_moving, 1)};
  }
  return sol;
}

}  // namespace detail

/**
 * Small Lambda atom at x = 0. `kappa` adds intrinsic loss to the excited
 * state; it is an extension hook and defaults to the lossless atom.
 */
inline OracleSolution solve_small_lambda(const SmallAtomParams& params, double delta,
                                         Incidence direction, const RateUnits& units = {},
                                         double kappa = 0.0) {
  detail::require_finite(delta, "delta");
  detail::require_rate(kappa, "kappa");
  const double v = units.group_velocity;
  detail::WaveguideChannel ch;
  ch.velocity = v;
  ch.coupling_r = {std::sqrt(params.gamma_r() * v), 0.0};
  ch.coupling_l = {std::sqrt(params.gamma_l() * v), 0.0};
  const std::vector<detail::WaveguideChannel> channels{ch, ch};
  const detail::BoundaryMatchingSystem system(channels, 1, {delta, kappa}, direction);
  return detail::solve_system(system, channels, direction);
}

/// Giant Lambda atom at x = 0 and x = d; plane-wave factors from the phase pair.
inline OracleSolution solve_giant_lambda(const GiantAtomParams& params, double delta,
                                         Incidence direction, const RateUnits& units = {},
                                         double kappa = 0.0) {
  detail::require_finite(delta, "delta");
  detail::require_rate(kappa, "kappa");
  const double v = units.group_velocity;
  const PhasePair ph = evaluate_phases(params, delta);
  detail::WaveguideChannel elastic;
  elastic.velocity = v;
  elastic.phase_at_d = ph.exp_1();
  elastic.coupling_r = {std::sqrt(params.gamma_1r() * v), std::sqrt(params.gamma_2r() * v)};
  elastic.coupling_l = {std::sqrt(params.gamma_1l() * v), std::sqrt(params.gamma_2l() * v)};
  detail::WaveguideChannel converted = elastic;
  converted.phase_at_d = ph.exp_2();
  const std::vector<detail::WaveguideChannel> channels{elastic, converted};
  const detail::BoundaryMatchingSystem system(channels, 2, {delta, kappa}, direction);
  return detail::solve_system(system, channels, direction);
}

/// Chiral two-level atom; only t1 (t), r1 (r) and u_e (w_e) are populated.
inline OracleSolution solve_two_level(const TwoLevelParams& params, double delta_real,
                                      Incidence direction, const RateUnits& units = {}) {
  detail::require_finite(delta_real, "delta");
  const double v = units.group_velocity;
  detail::WaveguideChannel ch;
  ch.velocity = v;
  ch.coupling_r = {std::sqrt(params.gamma_r() * v), 0.0};
  ch.coupling_l = {std::sqrt(params.gamma_l() * v), 0.0};
  const std::vector<detail::WaveguideChannel> channels{ch};
  const detail::BoundaryMatchingSystem system(channels, 1, {delta_real, params.kappa()}, direction);
  return detail::solve_system(system, channels, direction);
}

/**
 * Two-velocity giant atom solved with explicit wavevectors: the elastic
 * photon has wavevector k on the v1 branch, the converted photon has
 * q = (omega_1 + v1 k - omega_2 - omega_f) / v2 on the v2 branch.
 */
inline OracleSolution solve_dual_velocity(const DualVelocityParams& dv, double k,
                                          Incidence direction) {
  dv.validate();
  detail::require_finite(k, "k");
  const double energy = dv.omega_1 + dv.v1 * k;
  const double q = (energy - dv.omega_2 - dv.omega_f) / dv.v2;
  detail::WaveguideChannel elastic;
  elastic.velocity = dv.v1;
  elastic.phase_at_d = std::polar(1.0, k * dv.d);
  elastic.coupling_r = {dv.g_1r, dv.g_2r};
  elastic.coupling_l = {dv.g_1l, dv.g_2l};
  detail::WaveguideChannel converted;
  converted.velocity = dv.v2;
  converted.phase_at_d = std::polar(1.0, q * dv.d);
  converted.coupling_r = {dv.xi_1r, dv.xi_2r};
  converted.coupling_l = {dv.xi_1l, dv.xi_2l};
  const std::vector<detail::WaveguideChannel> channels{elastic, converted};
  const detail::BoundaryMatchingSystem system(channels, 2, {energy - dv.omega_e, 0.0}, direction);
  return detail::solve_system(system, channels, direction);
}

}  // namespace chiralwg
