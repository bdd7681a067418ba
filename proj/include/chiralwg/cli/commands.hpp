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

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chiralwg/analysis.hpp"
#include "chiralwg/cli/config.hpp"
#include "chiralwg/cli/csv.hpp"
#include "chiralwg/verification.hpp"

namespace chiralwg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitMasked = 3;

struct CommandContext {
  std::filesystem::path out_dir = ".";
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::ostream* out = &std::cout;
  std::ostream* err = &std::cerr;
};

/// The pointwise model a config describes (two-velocity configs are reduced).
inline Model analysis_model(const RunConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::small_lambda: return std::get<SmallAtomParams>(cfg.params);
    case ModelKind::two_level: return std::get<TwoLevelParams>(cfg.params);
    case ModelKind::giant_lambda: return std::get<GiantAtomParams>(cfg.params);
    case ModelKind::dual_velocity:
      return dual_velocity_reduction(std::get<DualVelocityParams>(cfg.params), 0.0).params;
  }
  throw ConfigError("model", "unsupported model");
}

inline GiantAtomParams giant_model(const RunConfig& cfg, const char* command) {
  const Model m = analysis_model(cfg);
  if (const auto* g = std::get_if<GiantAtomParams>(&m)) return *g;
  throw ConfigError("model", std::string(command) + " requires giant_lambda or dual_velocity");
}

inline std::filesystem::path output_path(const RunConfig& cfg, const CommandContext& ctx,
                                         const char* fallback) {
  return ctx.out_dir / cfg.output.file.value_or(fallback);
}

inline SpectrumGrid run_spectrum(const RunConfig& cfg, std::size_t jobs) {
  if (cfg.scan.n_delta < 2) throw ConfigError("scan.n_delta", "spectrum needs at least 2 points");
  return spectrum_scan(analysis_model(cfg), {cfg.scan.delta_min, cfg.scan.delta_max},
                       cfg.scan.n_delta, jobs);
}

inline SpectrumGrid run_map(const RunConfig& cfg, std::size_t jobs) {
  return phase_map(giant_model(cfg, "map"), {cfg.scan.delta_min, cfg.scan.delta_max},
                   {cfg.scan.phi_min, cfg.scan.phi_max}, cfg.scan.phase_mode, cfg.scan.n_delta,
                   cfg.scan.n_phi, jobs);
}

namespace detail {

template <class Body>
int guarded(const CommandContext& ctx, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    *ctx.err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const chiralwg::error& e) {
    *ctx.err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

inline int masked_exit(const SpectrumGrid& grid, const CommandContext& ctx) {
  if (!grid.has_masked()) return kExitOk;
  *ctx.err << "warning: singular points written as nan\n";
  return kExitMasked;
}

}  // namespace detail

inline int cmd_spectrum(const RunConfig& cfg, const CommandContext& ctx) {
  return detail::guarded(ctx, [&] {
    const SpectrumGrid grid = run_spectrum(cfg, ctx.jobs);
    spectrum_csv(grid).write(output_path(cfg, ctx, "spectrum.csv"));
    return detail::masked_exit(grid, ctx);
  });
}

inline int cmd_map(const RunConfig& cfg, const CommandContext& ctx) {
  return detail::guarded(ctx, [&] {
    const SpectrumGrid grid = run_map(cfg, ctx.jobs);
    map_csv(grid, cfg.output.channels == MapChannels::all).write(output_path(cfg, ctx, "map.csv"));
    return detail::masked_exit(grid, ctx);
  });
}

inline int cmd_effective(const RunConfig& cfg, const CommandContext& ctx) {
  return detail::guarded(ctx, [&] {
    const GiantAtomParams p = giant_model(cfg, "effective");
    const auto axis = chiralwg::detail::uniform_axis(cfg.scan.delta_min, cfg.scan.delta_max,
                                                     cfg.scan.n_delta);
    effective_csv(p, axis).write(output_path(cfg, ctx, "effective.csv"));
    return kExitOk;
  });
}

inline std::string format_verification(const ModelVerification& v) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "model=%s samples=%zu max_deviation=%.3e max_residual=%.3e max_flux_violation=%.3e",
                v.model.c_str(), v.samples, v.max_deviation, v.max_residual, v.max_flux_violation);
  std::string line = buf;
  if (v.max_reciprocity) {
    std::snprintf(buf, sizeof(buf), " max_reciprocity=%.3e", *v.max_reciprocity);
    line += buf;
  }
  line += v.pass ? " PASS" : " FAIL";
  return line;
}

/// Runs the oracle comparison for the configured model, or for every model
/// when no config is given.
inline int cmd_verify(const std::optional<RunConfig>& cfg, const CommandContext& ctx) {
  return detail::guarded(ctx, [&] {
    const VerifyConfig base = cfg ? cfg->verify : VerifyConfig{};
    const std::uint64_t samples = ctx.samples.value_or(base.sample_count);
    const std::uint64_t seed = ctx.seed.value_or(base.seed);
    if (samples == 0) throw ConfigError("verify.sample_count", "must be >= 1");

    std::vector<ModelKind> models;
    if (cfg) models.push_back(cfg->model);
    else models = {ModelKind::small_lambda, ModelKind::giant_lambda, ModelKind::two_level,
                   ModelKind::dual_velocity};

    std::ostream& out = *ctx.out;
    out << "verify seed=" << seed << " samples=" << samples << "\n";
    bool all = true;
    for (ModelKind kind : models) {
      ModelVerification v;
      switch (kind) {
        case ModelKind::small_lambda: v = verify_small_lambda(samples, seed); break;
        case ModelKind::giant_lambda: v = verify_giant_lambda(samples, seed); break;
        case ModelKind::two_level: v = verify_two_level(samples, seed); break;
        case ModelKind::dual_velocity: v = verify_dual_velocity(samples, seed); break;
      }
      all = all && v.pass;
      out << format_verification(v) << "\n";
    }
    out << "thresholds deviation=1e-10 residual=1e-12 flux=1e-10 reciprocity=1e-12\n";
    out << (all ? "overall PASS" : "overall FAIL") << "\n";
    return all ? kExitOk : kExitVerifyFailed;
  });
}

}  // namespace chiralwg::cli
