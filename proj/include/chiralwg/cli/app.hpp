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
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "chiralwg/cli/commands.hpp"
#include "chiralwg/cli/config.hpp"
#include "chiralwg/cli/figures.hpp"

namespace chiralwg::cli {

/// Parses argv and dispatches one subcommand; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chiral waveguide scattering: spectra, maps, oracle verification, figures"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = ".";
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::string figure_name;

  app.add_option("--config", config_path, "Run configuration (JSON)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--jobs", jobs, "Worker threads for scans")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for verify sampling");

  auto* spectrum = app.add_subcommand("spectrum", "Write delta,T1,T2,T1_rev,T2_rev,I1,I2");
  auto* map = app.add_subcommand("map", "Write a phi-major (phi, delta) map");
  auto* effective = app.add_subcommand("effective", "Write delta,delta_eff,gamma_eff");
  auto* verify = app.add_subcommand("verify", "Compare closed forms against the oracle");
  verify->add_option("--samples", samples, "Draws per model (overrides config)");
  auto* figure = app.add_subcommand("figure", "Regenerate one figure panel");
  figure->add_option("name", figure_name, "Panel name, e.g. fig3d")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CommandContext ctx;
  ctx.out_dir = out_dir;
  ctx.jobs = jobs;
  ctx.seed = seed;
  ctx.samples = samples;
  ctx.out = &out;
  ctx.err = &err;

  if (*figure) return cmd_figure(figure_name, ctx);

  std::optional<RunConfig> cfg;
  if (!config_path.empty()) {
    try {
      cfg = load_config(config_path);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  if (*verify) return cmd_verify(cfg, ctx);
  if (!cfg) {
    err << "--config is required for this subcommand\n";
    return kExitUsage;
  }
  if (*spectrum) return cmd_spectrum(*cfg, ctx);
  if (*map) return cmd_map(*cfg, ctx);
  if (*effective) return cmd_effective(*cfg, ctx);
  return kExitUsage;
}

}  // namespace chiralwg::cli
