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
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "chiralwg/closed_form.hpp"
#include "chiralwg/core_model.hpp"

/**
 * @file analysis.hpp
 * Spectra, phase maps, window widths, contrast extrema and unit-conversion
 * roots built on the pointwise closed forms.
 */

namespace chiralwg {

using Model = std::variant<SmallAtomParams, TwoLevelParams, GiantAtomParams>;

enum class PhaseMode { phi1_only, antisymmetric };

inline const char* to_string(PhaseMode mode) {
  return mode == PhaseMode::phi1_only ? "phi1_only" : "antisymmetric";
}

/// Static phases (phi_1_0, phi_2_0) for a phase-map row at phase phi.
inline PhasePair static_phases(PhaseMode mode, double phi) {
  return mode == PhaseMode::phi1_only ? PhasePair{phi, 0.0} : PhasePair{phi, -phi};
}

struct ChannelRecord {
  double T1 = 0.0;
  double T2 = 0.0;
  double T1_rev = 0.0;
  double T2_rev = 0.0;
  double I1 = 0.0;
  double I2 = 0.0;
  bool masked = false;
};

struct DetuningRange {
  double min = -6.0;
  double max = 6.0;
};

inline ChannelRecord to_record(const ScatteringCoefficients& c) {
  ChannelRecord rec;
  if (c.singular) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec = {nan, nan, nan, nan, nan, nan, true};
    return rec;
  }
  rec.T1 = c.T1();
  rec.T2 = c.T2();
  rec.T1_rev = c.T1_rev();
  rec.T2_rev = c.T2_rev();
  rec.I1 = rec.T1 - rec.T1_rev;
  rec.I2 = rec.T2 - rec.T2_rev;
  return rec;
}

inline ChannelRecord evaluate_channels(const Model& model, double delta) {
  return std::visit(
      [delta](const auto& p) -> ChannelRecord {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SmallAtomParams>) {
          return to_record(small_lambda_coefficients(p, delta));
        } else if constexpr (std::is_same_v<P, GiantAtomParams>) {
          return to_record(giant_lambda_coefficients(p, delta));
        } else {
          const TwoLevelCoefficients c = two_level_coefficients(p, delta);
          ChannelRecord rec;
          rec.T1 = std::norm(c.t);
          rec.T1_rev = std::norm(c.t_rev);
          rec.I1 = rec.T1 - rec.T1_rev;
          return rec;
        }
      },
      model);
}

inline double model_markovianity(const Model& model) {
  if (const auto* g = std::get_if<GiantAtomParams>(&model)) return markovianity_index(*g);
  return 0.0;
}

struct SpectrumGrid {
  std::vector<double> delta_axis;
  std::optional<std::vector<double>> phi_axis;
  std::optional<PhaseMode> phase_mode;
  // Row-major: row = phase index (a single row for plain spectra).
  std::vector<ChannelRecord> channels;
  Model model;
  double markovianity_index = 0.0;

  std::size_t rows() const { return phi_axis ? phi_axis->size() : 1; }
  std::size_t columns() const { return delta_axis.size(); }
  const ChannelRecord& at(std::size_t row, std::size_t column) const {
    return channels[row * delta_axis.size() + column];
  }
  bool has_masked() const {
    return std::any_of(channels.begin(), channels.end(),
                       [](const ChannelRecord& r) { return r.masked; });
  }

  /// The model evaluated in a given row (phases substituted for maps).
  Model row_model(std::size_t row) const {
    if (!phi_axis) return model;
    const PhasePair ph = static_phases(*phase_mode, (*phi_axis)[row]);
    return std::get<GiantAtomParams>(model).with_phases(ph.phi_1, ph.phi_2);
  }
};

enum class WindowMethod { grid_bracket, refined_bisection };

struct WindowReport {
  double center = 0.0;
  double peak_value = 0.0;
  double fwhm = 0.0;
  WindowMethod method = WindowMethod::refined_bisection;
};

struct ContrastExtrema {
  double max_abs_I1 = 0.0;
  double delta_I1 = 0.0;
  double max_abs_I2 = 0.0;
  double delta_I2 = 0.0;
};

namespace detail {

inline std::vector<double> uniform_axis(double min, double max, std::size_t n) {
  require_finite(min, "range.min");
  require_finite(max, "range.max");
  if (n == 0) throw error(errc::invalid_parameter, "grid needs at least one point");
  if (n > 1 && !(max > min)) throw error(errc::invalid_parameter, "range must satisfy min < max");
  std::vector<double> axis(n);
  for (std::size_t k = 0; k < n; ++k) {
    axis[k] = n == 1 ? min : std::lerp(min, max, static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return axis;
}

/// Runs body(k) for every k in [0, n). Each index is written by exactly one
/// worker, so the output does not depend on the worker count.
template <class Body>
void parallel_for(std::size_t n, std::size_t jobs, Body&& body) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, n));
  if (jobs == 1) {
    for (std::size_t k = 0; k < n; ++k) body(k);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (std::size_t w = 0; w < jobs; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([begin, end, &body] {
      for (std::size_t k = begin; k < end; ++k) body(k);
    });
  }
  for (auto& t : workers) t.join();
}

inline double finite_or(double value, double fallback) {
  return std::isfinite(value) ? value : fallback;
}

/// Golden-section search for the maximum of f on [a, b].
inline double golden_maximize(const std::function<double(double)>& f, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 200 && (b - a) > 4.0 * std::numeric_limits<double>::epsilon() *
                                                   std::max(1.0, std::abs(a) + std::abs(b));
       ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

/// Bisection for the point where `above(x)` flips from true (at inside) to false (at outside).
template <class Pred>
double bisect_boundary(Pred&& above, double inside, double outside) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    if (above(mid)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return 0.5 * (inside + outside);
}

}  // namespace detail

/// Uniform detuning scan of any model, with contrasts attached to every point.
inline SpectrumGrid spectrum_scan(const Model& model, DetuningRange range, std::size_t n_points,
                                  std::size_t jobs = 1) {
  if (n_points < 2) throw error(errc::invalid_parameter, "spectrum_scan needs n_points >= 2");
  SpectrumGrid grid{detail::uniform_axis(range.min, range.max, n_points), std::nullopt,
                    std::nullopt, {}, model, model_markovianity(model)};
  grid.channels.resize(n_points);
  detail::parallel_for(n_points, jobs, [&](std::size_t k) {
    grid.channels[k] = evaluate_channels(model, grid.delta_axis[k]);
  });
  return grid;
}

/**
 * Detuning x phase lattice for a giant atom. The static phases of `params`
 * are replaced per row: (phi, 0) for phi1_only, (phi, -phi) for antisymmetric.
 */
inline SpectrumGrid phase_map(const GiantAtomParams& params, DetuningRange delta_range,
                              DetuningRange phi_range, PhaseMode mode, std::size_t n_delta,
                              std::size_t n_phi, std::size_t jobs = 1) {
  SpectrumGrid grid{detail::uniform_axis(delta_range.min, delta_range.max, n_delta),
                    detail::uniform_axis(phi_range.min, phi_range.max, n_phi),
                    mode,
                    {},
                    params,
                    markovianity_index(params)};
  grid.channels.resize(n_delta * n_phi);
  detail::parallel_for(n_delta * n_phi, jobs, [&](std::size_t k) {
    const std::size_t row = k / n_delta;
    const std::size_t col = k % n_delta;
    const PhasePair ph = static_phases(mode, (*grid.phi_axis)[row]);
    grid.channels[k] = to_record(
        giant_lambda_coefficients(params.with_phases(ph.phi_1, ph.phi_2), grid.delta_axis[col]));
  });
  return grid;
}

inline constexpr double kNoPeakLevel = 1e-12;

/**
 * Locates the T2 window nearest `around` in the given row and measures its
 * full width at half of the local peak value. The grid only seeds the
 * search; peak and half-maximum crossings are refined on the continuous
 * model, so windows far narrower than the grid pitch are resolved.
 */
inline WindowReport window_report(const SpectrumGrid& grid, double around, std::size_t row = 0) {
  const std::size_t n = grid.columns();
  if (n < 2 || row >= grid.rows()) throw error(errc::invalid_parameter, "window_report: empty grid");
  const auto& axis = grid.delta_axis;
  const auto t2_at = [&](std::size_t col) { return detail::finite_or(grid.at(row, col).T2, 0.0); };

  const auto nearest = std::lower_bound(axis.begin(), axis.end(), around);
  std::size_t k = static_cast<std::size_t>(std::distance(axis.begin(), nearest));
  if (k == n || (k > 0 && around - axis[k - 1] < axis[k] - around)) k = k == 0 ? 0 : k - 1;

  // Climb to the local grid maximum.
  for (;;) {
    const double here = t2_at(k);
    if (k + 1 < n && t2_at(k + 1) > here) {
      ++k;
    } else if (k > 0 && t2_at(k - 1) > here) {
      --k;
    } else {
      break;
    }
  }
  if (t2_at(k) < kNoPeakLevel) throw error(errc::no_peak, "T2 vanishes around the requested detuning");

  const Model model = grid.row_model(row);
  const auto t2 = [&model](double delta) {
    return detail::finite_or(evaluate_channels(model, delta).T2, 0.0);
  };
  const double lo = axis[k == 0 ? 0 : k - 1];
  const double hi = axis[k + 1 < n ? k + 1 : n - 1];
  double center = detail::golden_maximize(t2, lo, hi);
  if (t2(axis[k]) > t2(center)) center = axis[k];
  const double peak = t2(center);
  const double half = 0.5 * peak;
  const auto above = [&](double x) { return t2(x) > half; };

  const auto crossing = [&](double direction, double limit) {
    double step = 1e-12 * std::max(1.0, std::abs(center));
    double inside = center;
    for (;;) {
      double probe = center + direction * step;
      if ((direction > 0 && probe >= limit) || (direction < 0 && probe <= limit)) {
        probe = limit;
        if (above(probe)) throw error(errc::no_peak, "half maximum not reached inside the grid range");
        return detail::bisect_boundary(above, inside, probe);
      }
      if (!above(probe)) return detail::bisect_boundary(above, inside, probe);
      inside = probe;
      step *= 2.0;
    }
  };
  const double right = crossing(+1.0, axis.back());
  const double left = crossing(-1.0, axis.front());
  return {center, peak, right - left, WindowMethod::refined_bisection};
}

/// Extrema of |I1| and |I2| over the grid, refined on the continuous model.
inline ContrastExtrema contrast_extrema(const SpectrumGrid& grid) {
  ContrastExtrema out;
  const std::size_t n = grid.columns();
  const auto refine = [&](bool first, double& best, double& where) {
    std::size_t best_row = 0, best_col = 0;
    best = -1.0;
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const ChannelRecord& rec = grid.at(r, c);
        if (rec.masked) continue;
        const double v = std::abs(first ? rec.I1 : rec.I2);
        if (v > best) {
          best = v;
          best_row = r;
          best_col = c;
        }
      }
    }
    if (best < 0.0) {
      best = 0.0;
      where = grid.delta_axis.front();
      return;
    }
    where = grid.delta_axis[best_col];
    if (n < 2) return;
    const Model model = grid.row_model(best_row);
    const auto f = [&](double delta) {
      const ChannelRecord rec = evaluate_channels(model, delta);
      return detail::finite_or(std::abs(first ? rec.I1 : rec.I2), 0.0);
    };
    const double lo = grid.delta_axis[best_col == 0 ? 0 : best_col - 1];
    const double hi = grid.delta_axis[best_col + 1 < n ? best_col + 1 : n - 1];
    const double x = detail::golden_maximize(f, lo, hi);
    if (f(x) > best) {
      best = f(x);
      where = x;
    }
  };
  refine(true, out.max_abs_I1, out.delta_I1);
  refine(false, out.max_abs_I2, out.delta_I2);
  return out;
}

inline constexpr double kUnitConversionResidual = 1e-10;
inline constexpr double kUnitConversionCheck = 1e-8;

/**
 * Detunings in `range` where T2 = 1, for the ideal chiral giant atom with
 * equal right-moving rates.
 *
 * The residual is |den|^2 - |num|^2 >= 0, so its zeros are touching zeros.
 * Candidates are grid local minima (and any sign change from round-off);
 * each is refined on the continuous residual and kept only when the residual
 * drops below 1e-10 and the closed form confirms T2 >= 1 - 1e-8.
 */
inline std::vector<double> find_unit_conversion_detunings(const GiantAtomParams& params,
                                                          DetuningRange range,
                                                          std::size_t n_grid = 10000) {
  if (n_grid < 3) throw error(errc::invalid_parameter, "root search needs n_grid >= 3");
  const std::vector<double> axis = detail::uniform_axis(range.min, range.max, n_grid);
  std::vector<double> res(n_grid);
  for (std::size_t k = 0; k < n_grid; ++k) res[k] = unit_conversion_condition(params, axis[k]);

  const auto residual = [&params](double x) { return unit_conversion_condition(params, x); };
  const auto slope = [&params](double x) { return unit_conversion_condition_slope(params, x); };

  std::vector<double> candidates;
  for (std::size_t k = 0; k < n_grid; ++k) {
    const bool left_ok = k == 0 || res[k] <= res[k - 1];
    const bool right_ok = k + 1 == n_grid || res[k] <= res[k + 1];
    if (left_ok && right_ok) {
      const double a = axis[k == 0 ? 0 : k - 1];
      const double b = axis[k + 1 < n_grid ? k + 1 : k];
      double x;
      if (a < b && slope(a) < 0.0 && slope(b) > 0.0) {
        x = detail::bisect_boundary([&](double t) { return slope(t) < 0.0; }, a, b);
      } else if (a < b) {
        x = detail::golden_maximize([&](double t) { return -residual(t); }, a, b);
      } else {
        x = axis[k];
      }
      if (std::abs(residual(axis[k])) < std::abs(residual(x))) x = axis[k];
      candidates.push_back(x);
    }
    if (k + 1 < n_grid && res[k] * res[k + 1] < 0.0) {
      candidates.push_back(detail::bisect_boundary(
          [&](double t) { return (residual(t) > 0.0) == (res[k] > 0.0); }, axis[k], axis[k + 1]));
    }
  }

  std::vector<double> roots;
  for (double x : candidates) {
    if (x < range.min || x > range.max) continue;
    if (!(std::abs(residual(x)) < kUnitConversionResidual)) continue;
    const ScatteringCoefficients c = giant_lambda_coefficients(params, x);
    if (c.singular || c.T2() < 1.0 - kUnitConversionCheck) continue;
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  const double merge = 1e-9 * std::max(1.0, range.max - range.min);
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [merge](double a, double b) { return std::abs(a - b) < merge; }),
              roots.end());
  return roots;
}

}  // namespace chiralwg
