/* Copyright 2026 The resqnn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Minimal CSV and SVG emitters for the experiment commands. Numeric cells
// are serialized with 17 significant digits so doubles round-trip exactly
// and reruns diff clean.

#ifndef RESQNN_TOOLS_CSVIO_HPP_
#define RESQNN_TOOLS_CSVIO_HPP_

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace resqnn {
namespace tools {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  for (size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << row[i];
    }
    out << "\n";
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

// One polyline in a fixed 640x480 frame with labeled axes and a handful of
// numeric ticks. Enough to eyeball a convergence curve; not a plotting kit.
inline void write_line_svg(const std::string& path, const std::vector<double>& xs,
                           const std::vector<double>& ys, const std::string& x_label,
                           const std::string& y_label) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw std::invalid_argument("write_line_svg: need matching, non-empty series");
  }
  const double width = 640.0;
  const double height = 480.0;
  const double left = 70.0;
  const double right = 620.0;
  const double top = 30.0;
  const double bottom = 430.0;

  double x_min = *std::min_element(xs.begin(), xs.end());
  double x_max = *std::max_element(xs.begin(), xs.end());
  double y_min = *std::min_element(ys.begin(), ys.end());
  double y_max = *std::max_element(ys.begin(), ys.end());
  if (x_max == x_min) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const auto sx = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * (right - left);
  };
  const auto sy = [&](double y) {
    return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
  };
  const auto tick_text = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return std::string(buf);
  };

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
      << bottom << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << bottom << "\" stroke=\"black\"/>\n";

  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / ticks;
    const double px = sx(fx);
    out << "  <line x1=\"" << px << "\" y1=\"" << bottom << "\" x2=\"" << px << "\" y2=\""
        << bottom + 5 << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << px << "\" y=\"" << bottom + 20
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
        << tick_text(fx) << "</text>\n";
    const double fy = y_min + (y_max - y_min) * i / ticks;
    const double py = sy(fy);
    out << "  <line x1=\"" << left - 5 << "\" y1=\"" << py << "\" x2=\"" << left << "\" y2=\""
        << py << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << left - 8 << "\" y=\"" << py + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
        << tick_text(fy) << "</text>\n";
  }
  out << "  <text x=\"" << (left + right) / 2 << "\" y=\"" << height - 12
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" << x_label
      << "</text>\n";
  out << "  <text x=\"18\" y=\"" << (top + bottom) / 2
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 18 " << (top + bottom) / 2 << ")\">" << y_label
      << "</text>\n";

  out << "  <polyline fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < xs.size(); ++i) {
    out << (i ? " " : "") << sx(xs[i]) << "," << sy(ys[i]);
  }
  out << "\"/>\n</svg>\n";
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace tools
}  // namespace resqnn

#endif  // RESQNN_TOOLS_CSVIO_HPP_
