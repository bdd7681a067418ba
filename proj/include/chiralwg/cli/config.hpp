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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "chiralwg/analysis.hpp"
#include "chiralwg/closed_form.hpp"
#include "chiralwg/core_model.hpp"

/**
 * @file config.hpp
 * Run configuration: a JSON document (comments allowed) with the sections
 *
 *   model    "small_lambda" | "two_level" | "giant_lambda" | "dual_velocity"
 *   units    { reference_rate, group_velocity }
 *   params   fields of the chosen model
 *   scan     { delta_min, delta_max, n_delta, phi_min, phi_max, n_phi, phase_mode }
 *   output   { file, format, channels }
 *   verify   { sample_count, seed }
 *
 * Every section except `model` and `params` is optional. Unknown keys are
 * rejected.
 */

namespace chiralwg::cli {

using json = nlohmann::json;

enum class ModelKind { small_lambda, two_level, giant_lambda, dual_velocity };

inline const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::small_lambda: return "small_lambda";
    case ModelKind::two_level: return "two_level";
    case ModelKind::giant_lambda: return "giant_lambda";
    case ModelKind::dual_velocity: return "dual_velocity";
  }
  return "unknown";
}

inline std::optional<ModelKind> parse_model_kind(const std::string& name) {
  for (ModelKind k : {ModelKind::small_lambda, ModelKind::two_level, ModelKind::giant_lambda,
                      ModelKind::dual_velocity}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

/// Raised for any malformed configuration; `path()` names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct ScanConfig {
  double delta_min = -6.0;
  double delta_max = 6.0;
  std::size_t n_delta = 2001;
  double phi_min = 0.0;
  double phi_max = 2.0 * std::numbers::pi;
  std::size_t n_phi = 201;
  PhaseMode phase_mode = PhaseMode::antisymmetric;

  bool operator==(const ScanConfig&) const = default;
};

enum class MapChannels { t2, all };

struct OutputConfig {
  std::optional<std::string> file;
  MapChannels channels = MapChannels::t2;

  bool operator==(const OutputConfig&) const = default;
};

struct VerifyConfig {
  std::size_t sample_count = 1000;
  std::uint64_t seed = 1;

  bool operator==(const VerifyConfig&) const = default;
};

using ModelParams = std::variant<SmallAtomParams, TwoLevelParams, GiantAtomParams, DualVelocityParams>;

struct RunConfig {
  ModelKind model = ModelKind::giant_lambda;
  ModelParams params = GiantAtomParams({1.0, 1.0, 0.0, 0.0}, 0.0, 0.0, 0.0);
  RateUnits units;
  ScanConfig scan;
  OutputConfig output;
  VerifyConfig verify;

  bool operator==(const RunConfig&) const = default;
};

namespace detail {

class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return node_.contains(key); }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    seen_.insert(key);
    if (!node_.contains(key)) {
      if (fallback) return *fallback;
      throw ConfigError(child(key), "missing required field");
    }
    const json& v = node_.at(key);
    if (!v.is_number()) throw ConfigError(child(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(child(key), "must be finite");
    return x;
  }

  double rate(const std::string& key, double fallback = 0.0) {
    const double x = number(key, fallback);
    if (x < 0.0) throw ConfigError(child(key), "must be >= 0");
    return x;
  }

  double positive(const std::string& key, double fallback) {
    const double x = number(key, fallback);
    if (!(x > 0.0)) throw ConfigError(child(key), "must be > 0");
    return x;
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    seen_.insert(key);
    if (!node_.contains(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_unsigned()) throw ConfigError(child(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    seen_.insert(key);
    if (!node_.contains(key)) {
      if (fallback) return *fallback;
      throw ConfigError(child(key), "missing required field");
    }
    const json& v = node_.at(key);
    if (!v.is_string()) throw ConfigError(child(key), "expected a string");
    return v.get<std::string>();
  }

  std::optional<Section> section(const std::string& key) {
    seen_.insert(key);
    if (!node_.contains(key)) return std::nullopt;
    return Section(node_.at(key), child(key));
  }

  void reject_unknown() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(child(it.key()), "unknown key");
    }
  }

  const std::string& path() const { return path_; }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class Build>
auto construct(const std::string& path, Build&& build) {
  try {
    return build();
  } catch (const chiralwg::error& e) {
    throw ConfigError(path, e.what());
  }
}

inline ModelParams parse_params(ModelKind kind, Section s) {
  ModelParams out = SmallAtomParams(1.0, 0.0);
  switch (kind) {
    case ModelKind::small_lambda: {
      const double gr = s.rate("gamma_r");
      const double gl = s.rate("gamma_l");
      out = construct(s.path(), [&] { return SmallAtomParams(gr, gl); });
      break;
    }
    case ModelKind::two_level: {
      const double gr = s.rate("gamma_r");
      const double gl = s.rate("gamma_l");
      const double kappa = s.rate("kappa");
      out = construct(s.path(), [&] { return TwoLevelParams(gr, gl, kappa); });
      break;
    }
    case ModelKind::giant_lambda: {
      GiantAtomRates r;
      r.gamma_1r = s.rate("gamma_1r");
      r.gamma_2r = s.rate("gamma_2r");
      r.gamma_1l = s.rate("gamma_1l");
      r.gamma_2l = s.rate("gamma_2l");
      const double phi1 = s.number("phi_1_0", 0.0);
      const double phi2 = s.number("phi_2_0", 0.0);
      const double tau = s.rate("tau");
      std::optional<double> tau_2;
      if (s.has("tau_2")) tau_2 = s.rate("tau_2");
      else s.rate("tau_2");  // marks the key as known
      out = construct(s.path(), [&] { return GiantAtomParams(r, phi1, phi2, tau, tau_2); });
      break;
    }
    case ModelKind::dual_velocity: {
      DualVelocityParams dv;
      dv.v1 = s.positive("v1", 1.0);
      dv.v2 = s.positive("v2", 1.0);
      dv.d = s.positive("d", 1.0);
      dv.omega_1 = s.number("omega_1", 0.0);
      dv.omega_2 = s.number("omega_2", 0.0);
      dv.omega_e = s.number("omega_e", 0.0);
      dv.omega_f = s.number("omega_f", 0.0);
      dv.g_1r = s.number("g_1r", 0.0);
      dv.g_2r = s.number("g_2r", 0.0);
      dv.g_1l = s.number("g_1l", 0.0);
      dv.g_2l = s.number("g_2l", 0.0);
      dv.xi_1r = s.number("xi_1r", 0.0);
      dv.xi_2r = s.number("xi_2r", 0.0);
      dv.xi_1l = s.number("xi_1l", 0.0);
      dv.xi_2l = s.number("xi_2l", 0.0);
      construct(s.path(), [&] { return dual_velocity_reduction(dv, 0.0); });
      out = dv;
      break;
    }
  }
  s.reject_unknown();
  return out;
}

}  // namespace detail

inline RunConfig parse_config(const json& doc) {
  detail::Section root(doc, "");
  RunConfig cfg;
  const std::string model_name = root.string("model");
  const auto kind = parse_model_kind(model_name);
  if (!kind) throw ConfigError("model", "unknown model '" + model_name + "'");
  cfg.model = *kind;

  auto params = root.section("params");
  if (!params) throw ConfigError("params", "missing required section");
  cfg.params = detail::parse_params(cfg.model, *params);

  if (auto u = root.section("units")) {
    const double ref = u->positive("reference_rate", 1.0);
    const double vg = u->positive("group_velocity", 1.0);
    cfg.units = RateUnits(ref, vg);
    u->reject_unknown();
  }

  if (auto s = root.section("scan")) {
    cfg.scan.delta_min = s->number("delta_min", cfg.scan.delta_min);
    cfg.scan.delta_max = s->number("delta_max", cfg.scan.delta_max);
    cfg.scan.n_delta = s->unsigned_integer("n_delta", cfg.scan.n_delta);
    cfg.scan.phi_min = s->number("phi_min", cfg.scan.phi_min);
    cfg.scan.phi_max = s->number("phi_max", cfg.scan.phi_max);
    cfg.scan.n_phi = s->unsigned_integer("n_phi", cfg.scan.n_phi);
    const std::string mode = s->string("phase_mode", to_string(cfg.scan.phase_mode));
    if (mode == "phi1_only") cfg.scan.phase_mode = PhaseMode::phi1_only;
    else if (mode == "antisymmetric") cfg.scan.phase_mode = PhaseMode::antisymmetric;
    else throw ConfigError(s->child("phase_mode"), "expected 'phi1_only' or 'antisymmetric'");
    if (cfg.scan.n_delta == 0) throw ConfigError(s->child("n_delta"), "must be >= 1");
    if (cfg.scan.n_phi == 0) throw ConfigError(s->child("n_phi"), "must be >= 1");
    if (cfg.scan.n_delta > 1 && !(cfg.scan.delta_max > cfg.scan.delta_min)) {
      throw ConfigError(s->child("delta_max"), "must exceed scan.delta_min");
    }
    if (cfg.scan.n_phi > 1 && !(cfg.scan.phi_max > cfg.scan.phi_min)) {
      throw ConfigError(s->child("phi_max"), "must exceed scan.phi_min");
    }
    s->reject_unknown();
  }

  if (auto o = root.section("output")) {
    if (o->has("file")) cfg.output.file = o->string("file");
    else o->string("file", "");
    const std::string format = o->string("format", "csv");
    if (format != "csv") throw ConfigError(o->child("format"), "only 'csv' is supported");
    const std::string channels = o->string("channels", "T2");
    if (channels == "T2") cfg.output.channels = MapChannels::t2;
    else if (channels == "all") cfg.output.channels = MapChannels::all;
    else throw ConfigError(o->child("channels"), "expected 'T2' or 'all'");
    o->reject_unknown();
  }

  if (auto v = root.section("verify")) {
    cfg.verify.sample_count = v->unsigned_integer("sample_count", cfg.verify.sample_count);
    cfg.verify.seed = v->unsigned_integer("seed", cfg.verify.seed);
    v->reject_unknown();
  }

  root.reject_unknown();
  return cfg;
}

inline RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  return parse_config(doc);
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

inline json params_to_json(const ModelParams& params) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SmallAtomParams>) {
          return {{"gamma_r", p.gamma_r()}, {"gamma_l", p.gamma_l()}};
        } else if constexpr (std::is_same_v<P, TwoLevelParams>) {
          return {{"gamma_r", p.gamma_r()}, {"gamma_l", p.gamma_l()}, {"kappa", p.kappa()}};
        } else if constexpr (std::is_same_v<P, GiantAtomParams>) {
          json j = {{"gamma_1r", p.gamma_1r()}, {"gamma_2r", p.gamma_2r()},
                    {"gamma_1l", p.gamma_1l()}, {"gamma_2l", p.gamma_2l()},
                    {"phi_1_0", p.phi_1_0()},   {"phi_2_0", p.phi_2_0()},
                    {"tau", p.tau()}};
          if (p.tau_2_override()) j["tau_2"] = *p.tau_2_override();
          return j;
        } else {
          return {{"v1", p.v1},       {"v2", p.v2},       {"d", p.d},
                  {"omega_1", p.omega_1}, {"omega_2", p.omega_2}, {"omega_e", p.omega_e},
                  {"omega_f", p.omega_f}, {"g_1r", p.g_1r},   {"g_2r", p.g_2r},
                  {"g_1l", p.g_1l},   {"g_2l", p.g_2l},   {"xi_1r", p.xi_1r},
                  {"xi_2r", p.xi_2r}, {"xi_1l", p.xi_1l}, {"xi_2l", p.xi_2l}};
        }
      },
      params);
}

inline json to_json(const RunConfig& cfg) {
  json j;
  j["model"] = to_string(cfg.model);
  j["params"] = params_to_json(cfg.params);
  j["units"] = {{"reference_rate", cfg.units.reference_rate},
                {"group_velocity", cfg.units.group_velocity}};
  j["scan"] = {{"delta_min", cfg.scan.delta_min}, {"delta_max", cfg.scan.delta_max},
               {"n_delta", cfg.scan.n_delta},     {"phi_min", cfg.scan.phi_min},
               {"phi_max", cfg.scan.phi_max},     {"n_phi", cfg.scan.n_phi},
               {"phase_mode", to_string(cfg.scan.phase_mode)}};
  j["output"] = {{"format", "csv"},
                 {"channels", cfg.output.channels == MapChannels::all ? "all" : "T2"}};
  if (cfg.output.file) j["output"]["file"] = *cfg.output.file;
  j["verify"] = {{"sample_count", cfg.verify.sample_count}, {"seed", cfg.verify.seed}};
  return j;
}

inline std::string serialize_config(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

}  // namespace chiralwg::cli
