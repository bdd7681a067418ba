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

#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "chiralwg/cli/commands.hpp"

/**
 * @file figures.hpp
 * Preconfigured scans for the published figure panels. Each panel writes
 * its CSV data, a gnuplot script `<name>.gp`, and `<name>_manifest.json`
 * holding the full configuration of every data file.
 */

namespace chiralwg::cli {

namespace figures {

inline constexpr double pi = std::numbers::pi;

class FigureWriter {
 public:
  FigureWriter(std::string name, const CommandContext& ctx) : name_(std::move(name)), ctx_(ctx) {}

  void spectrum(const std::string& file, const std::string& label, const RunConfig& cfg) {
    const SpectrumGrid grid = run_spectrum(cfg, ctx_.jobs);
    masked_ = masked_ || grid.has_masked();
    spectrum_csv(grid).write(ctx_.out_dir / file);
    record(file, label, "spectrum", to_json(cfg));
  }

  void map(const std::string& file, const RunConfig& cfg) {
    const SpectrumGrid grid = run_map(cfg, ctx_.jobs);
    masked_ = masked_ || grid.has_masked();
    map_csv(grid, false).write(ctx_.out_dir / file);
    record(file, "", "phase_map", to_json(cfg));
  }

  /// Small-atom contrast over (gamma_l / gamma_r, delta) with gamma_r = 1.
  void ratio_map(const std::string& file, bool elastic, DetuningRange ratio, std::size_t n_ratio,
                 DetuningRange delta, std::size_t n_delta) {
    const auto ratios = chiralwg::detail::uniform_axis(ratio.min, ratio.max, n_ratio);
    const auto deltas = chiralwg::detail::uniform_axis(delta.min, delta.max, n_delta);
    std::vector<double> values(n_ratio * n_delta);
    chiralwg::detail::parallel_for(values.size(), ctx_.jobs, [&](std::size_t k) {
      const ChannelRecord rec =
          evaluate_channels(SmallAtomParams(1.0, ratios[k / n_delta]), deltas[k % n_delta]);
      values[k] = elastic ? rec.I1 : rec.I2;
    });
    CsvBuffer csv = elastic ? CsvBuffer{"ratio", "delta", "I1"} : CsvBuffer{"ratio", "delta", "I2"};
    for (std::size_t k = 0; k < values.size(); ++k) {
      csv.row({ratios[k / n_delta], deltas[k % n_delta], values[k]});
    }
    csv.write(ctx_.out_dir / file);
    json provenance = {{"model", "small_lambda"},   {"gamma_r", 1.0},
                       {"ratio_min", ratio.min},    {"ratio_max", ratio.max},
                       {"n_ratio", n_ratio},        {"delta_min", delta.min},
                       {"delta_max", delta.max},    {"n_delta", n_delta},
                       {"channel", elastic ? "I1" : "I2"}};
    record(file, "", "ratio_map", provenance);
  }

  void plot_profiles(const std::string& ylabel, const std::vector<int>& columns,
                     const std::vector<std::string>& column_names) {
    script_ = header() + "set xlabel 'Delta'\nset ylabel '" + ylabel + "'\nplot ";
    bool first = true;
    for (const json& entry : manifest_) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (!first) script_ += ", \\\n     ";
        std::string title = entry["label"].get<std::string>();
        if (!column_names[c].empty()) title = column_names[c] + " " + title;
        script_ += "'" + entry["file"].get<std::string>() + "' every ::1 using 1:" +
                   std::to_string(columns[c]) + " with lines title '" + title + "'";
        first = false;
      }
    }
    script_ += "\n";
  }

  void plot_map(const std::string& ylabel, const std::string& zlabel) {
    const std::string file = manifest_.at(0)["file"].get<std::string>();
    script_ = header() + "set xlabel 'Delta'\nset ylabel '" + ylabel + "'\nset cblabel '" + zlabel +
              "'\nplot '" + file + "' every ::1 using 2:1:3 with image notitle\n";
  }

  int finish() {
    write_text(name_ + ".gp", script_);
    json manifest = {{"figure", name_}, {"files", manifest_}};
    write_text(name_ + "_manifest.json", manifest.dump(2) + "\n");
    *ctx_.out << "figure " << name_ << ": " << manifest_.size() << " data file(s) in "
              << ctx_.out_dir.string() << "\n";
    if (masked_) {
      *ctx_.err << "warning: singular points written as nan\n";
      return kExitMasked;
    }
    return kExitOk;
  }

 private:
  std::string header() const {
    return "# " + name_ + "\nset datafile separator ','\nset terminal pngcairo size 900,600\nset output '" +
           name_ + ".png'\n";
  }

  void record(const std::string& file, const std::string& label, const char* kind, json provenance) {
    manifest_.push_back({{"file", file}, {"label", label}, {"kind", kind}, {"parameters", provenance}});
  }

  void write_text(const std::string& file, const std::string& text) const {
    std::filesystem::create_directories(ctx_.out_dir);
    std::ofstream out(ctx_.out_dir / file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + file + "'");
    out << text;
  }

  std::string name_;
  const CommandContext& ctx_;
  std::vector<json> manifest_;
  std::string script_;
  bool masked_ = false;
};

inline RunConfig small_config(double ratio) {
  RunConfig cfg;
  cfg.model = ModelKind::small_lambda;
  cfg.params = SmallAtomParams(1.0, ratio);
  cfg.scan.delta_min = -6.0;
  cfg.scan.delta_max = 6.0;
  cfg.scan.n_delta = 2001;
  return cfg;
}

/// Ideal chiral giant atom with gamma_1r = gamma_2r = 1.
inline RunConfig giant_config(double tau, PhaseMode mode, double phi, double delta_extent,
                              std::optional<double> tau_2 = std::nullopt) {
  RunConfig cfg;
  cfg.model = ModelKind::giant_lambda;
  const PhasePair ph = static_phases(mode, phi);
  cfg.params = GiantAtomParams({1.0, 1.0, 0.0, 0.0}, ph.phi_1, ph.phi_2, tau, tau_2);
  cfg.scan.delta_min = -delta_extent;
  cfg.scan.delta_max = delta_extent;
  cfg.scan.n_delta = 2001;
  cfg.scan.phase_mode = mode;
  return cfg;
}

inline std::string pi_label(double multiple) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%gpi", multiple);
  return multiple == 0.0 ? std::string("0") : std::string(buf);
}

/// File-name safe form of a number: 0.9 -> "0p9".
inline std::string tag(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", value);
  std::string s = buf;
  for (char& ch : s) {
    if (ch == '.') ch = 'p';
  }
  return s;
}

inline void phase_profiles(FigureWriter& w, const std::string& name, double tau, PhaseMode mode,
                           double extent, const std::vector<double>& multiples) {
  for (double m : multiples) {
    w.spectrum(name + "_phi" + tag(m) + "pi.csv", "phi=" + pi_label(m),
               giant_config(tau, mode, m * pi, extent));
  }
  w.plot_profiles("T2", {3}, {""});
}

inline void phase_map_panel(FigureWriter& w, const std::string& name, double tau, PhaseMode mode,
                            double extent) {
  RunConfig cfg = giant_config(tau, mode, 0.0, extent);
  cfg.scan.phi_min = 0.0;
  cfg.scan.phi_max = 2.0 * pi;
  cfg.scan.n_phi = 201;
  w.map(name + ".csv", cfg);
  w.plot_map("phi", "T2");
}

/// Antisymmetric phases with tau_1 = 3 and tau_2 / tau_1 in {1, 1.1, 1.2}.
inline void delay_mismatch_profiles(FigureWriter& w, const std::string& name, double phi) {
  for (double ratio : {1.0, 1.1, 1.2}) {
    const std::optional<double> tau_2 =
        ratio == 1.0 ? std::nullopt : std::optional<double>(3.0 * ratio);
    w.spectrum(name + "_ratio" + tag(ratio) + ".csv", "tau2/tau1=" + tag(ratio),
               giant_config(3.0, PhaseMode::antisymmetric, phi, 10.0, tau_2));
  }
  w.plot_profiles("T2", {3}, {""});
}

using Builder = std::function<void(FigureWriter&, const std::string&)>;

inline const std::map<std::string, Builder>& catalog() {
  static const std::map<std::string, Builder> figures = {
      {"fig2a", [](FigureWriter& w, const std::string& n) {
         w.ratio_map(n + ".csv", true, {0.0, 3.0}, 151, {-6.0, 6.0}, 601);
         w.plot_map("Gamma_L / Gamma_R", "I1");
       }},
      {"fig2b", [](FigureWriter& w, const std::string& n) {
         w.ratio_map(n + ".csv", false, {0.0, 3.0}, 151, {-6.0, 6.0}, 601);
         w.plot_map("Gamma_L / Gamma_R", "I2");
       }},
      {"fig2c", [](FigureWriter& w, const std::string& n) {
         w.spectrum(n + "_ratio0.csv", "GL/GR=0", small_config(0.0));
         w.spectrum(n + "_ratio2.csv", "GL/GR=2", small_config(2.0));
         w.plot_profiles("elastic transmission", {2, 4}, {"T1", "T1_rev"});
       }},
      {"fig2d", [](FigureWriter& w, const std::string& n) {
         w.spectrum(n + "_ratio0.csv", "GL/GR=0", small_config(0.0));
         w.spectrum(n + "_ratio2.csv", "GL/GR=2", small_config(2.0));
         w.plot_profiles("inelastic transmission", {3, 5}, {"T2", "T2_rev"});
       }},
      {"fig3a", [](FigureWriter& w, const std::string& n) {
         phase_map_panel(w, n, 0.03, PhaseMode::phi1_only, 6.0);
       }},
      {"fig3b", [](FigureWriter& w, const std::string& n) {
         phase_map_panel(w, n, 0.03, PhaseMode::antisymmetric, 6.0);
       }},
      {"fig3c", [](FigureWriter& w, const std::string& n) {
         phase_profiles(w, n, 0.03, PhaseMode::phi1_only, 6.0, {0.0, 0.5, 0.9, 1.0});
       }},
      {"fig3d", [](FigureWriter& w, const std::string& n) {
         phase_profiles(w, n, 0.03, PhaseMode::antisymmetric, 6.0, {0.0, 0.5, 0.9, 0.99});
       }},
      {"fig4a", [](FigureWriter& w, const std::string& n) {
         phase_map_panel(w, n, 3.0, PhaseMode::phi1_only, 10.0);
       }},
      {"fig4b", [](FigureWriter& w, const std::string& n) {
         phase_map_panel(w, n, 3.0, PhaseMode::antisymmetric, 10.0);
       }},
      {"fig4c", [](FigureWriter& w, const std::string& n) {
         phase_profiles(w, n, 3.0, PhaseMode::phi1_only, 10.0, {0.0, 0.5, 1.0});
       }},
      {"fig4d", [](FigureWriter& w, const std::string& n) {
         phase_profiles(w, n, 3.0, PhaseMode::antisymmetric, 10.0, {0.0, 0.5, 0.9});
       }},
      {"fig5a", [](FigureWriter& w, const std::string& n) {
         w.spectrum(n + "_tau0p03.csv", "tau=0.03", giant_config(0.03, PhaseMode::phi1_only, pi, 10.0));
         w.spectrum(n + "_tau3.csv", "tau=3", giant_config(3.0, PhaseMode::phi1_only, pi, 10.0));
         w.plot_profiles("I1", {6}, {""});
       }},
      {"fig5b", [](FigureWriter& w, const std::string& n) {
         w.spectrum(n + "_tau0p03.csv", "tau=0.03",
                    giant_config(0.03, PhaseMode::antisymmetric, 0.9 * pi, 10.0));
         w.spectrum(n + "_tau3.csv", "tau=3", giant_config(3.0, PhaseMode::antisymmetric, 0.9 * pi, 10.0));
         w.plot_profiles("I1", {6}, {""});
       }},
      {"fig6a", [](FigureWriter& w, const std::string& n) {
         delay_mismatch_profiles(w, n, 0.0);
       }},
      {"fig6b", [](FigureWriter& w, const std::string& n) {
         delay_mismatch_profiles(w, n, 0.9 * pi);
       }},
  };
  return figures;
}

}  // namespace figures

inline std::vector<std::string> figure_names() {
  std::vector<std::string> names;
  for (const auto& [name, builder] : figures::catalog()) names.push_back(name);
  return names;
}

inline int cmd_figure(const std::string& name, const CommandContext& ctx) {
  const auto& cat = figures::catalog();
  const auto it = cat.find(name);
  if (it == cat.end()) {
    std::string known;
    for (const auto& n : figure_names()) known += (known.empty() ? "" : ", ") + n;
    *ctx.err << "figure: unknown name '" << name << "' (known: " << known << ")\n";
    return kExitUsage;
  }
  return detail::guarded(ctx, [&] {
    figures::FigureWriter writer(name, ctx);
    it->second(writer, name);
    return writer.finish();
  });
}

}  // namespace chiralwg::cli
