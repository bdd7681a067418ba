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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chiralwg/analysis.hpp"
#include "chiralwg/closed_form.hpp"

// CSV output: comma separated, LF line endings, mandatory header row,
// 17 significant digits, `nan` for masked cells.

namespace chiralwg::cli {

inline void append_double(std::string& out, double x) {
  if (std::isnan(x)) {
    out += "nan";
    return;
  }
  char buf[32];
  const int n = std::snprintf(buf, sizeof(buf), "%.17g", x);
  out.append(buf, static_cast<std::size_t>(n));
}

inline std::string format_double(double x) {
  std::string s;
  append_double(s, x);
  return s;
}

class CsvBuffer {
 public:
  explicit CsvBuffer(std::initializer_list<std::string_view> header) {
    bool first = true;
    for (std::string_view h : header) {
      if (!first) text_ += ',';
      text_ += h;
      first = false;
    }
    text_ += '\n';
  }

  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) text_ += ',';
      append_double(text_, v);
      first = false;
    }
    text_ += '\n';
  }

  const std::string& text() const { return text_; }

  void write(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out.write(text_.data(), static_cast<std::streamsize>(text_.size()));
  }

 private:
  std::string text_;
};

inline CsvBuffer spectrum_csv(const SpectrumGrid& grid) {
  CsvBuffer csv{"delta", "T1", "T2", "T1_rev", "T2_rev", "I1", "I2"};
  for (std::size_t c = 0; c < grid.columns(); ++c) {
    const ChannelRecord& r = grid.at(0, c);
    csv.row({grid.delta_axis[c], r.T1, r.T2, r.T1_rev, r.T2_rev, r.I1, r.I2});
  }
  return csv;
}

/// Long format, phi-major rows.
inline CsvBuffer map_csv(const SpectrumGrid& grid, bool all_channels) {
  CsvBuffer csv = all_channels
                      ? CsvBuffer{"phi", "delta", "T1", "T2", "T1_rev", "T2_rev", "I1", "I2"}
                      : CsvBuffer{"phi", "delta", "T2"};
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    const double phi = grid.phi_axis ? (*grid.phi_axis)[r] : 0.0;
    for (std::size_t c = 0; c < grid.columns(); ++c) {
      const ChannelRecord& rec = grid.at(r, c);
      if (all_channels) {
        csv.row({phi, grid.delta_axis[c], rec.T1, rec.T2, rec.T1_rev, rec.T2_rev, rec.I1, rec.I2});
      } else {
        csv.row({phi, grid.delta_axis[c], rec.T2});
      }
    }
  }
  return csv;
}

inline CsvBuffer effective_csv(const GiantAtomParams& params, const std::vector<double>& deltas) {
  CsvBuffer csv{"delta", "delta_eff", "gamma_eff"};
  for (double d : deltas) {
    const EffectiveParams e = effective_parameters(params, d);
    csv.row({d, e.delta_eff, e.gamma_eff});
  }
  return csv;
}

}  // namespace chiralwg::cli
