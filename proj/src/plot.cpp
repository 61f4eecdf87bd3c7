// Copyright 2026 The mimogc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mimogc/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "mimogc/errors.hpp"

namespace mimogc {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 48.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out = open_for_write(path);
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  if (!out) throw Error("failed writing " + path.string());
}

std::string render_svg(const std::string& title, const std::vector<PlotSeries>& series) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size()) throw InvalidArgument("plot series length mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!(x_lo <= x_hi)) {
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const auto px = [&](double x) {
    return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin);
  };
  const auto py = [&](double y) {
    return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << escape(title) << "</text>\n";
  svg << "<g stroke=\"#444\" stroke-width=\"1\">"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\"/>"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\"/></g>\n";
  if (y_lo < 0.0 && y_hi > 0.0) {
    svg << "<line x1=\"" << kMargin << "\" y1=\"" << py(0.0) << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << py(0.0)
        << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  }
  svg << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#444\">"
      << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 14 << "\">"
      << format_double(x_lo) << "</text>"
      << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 14
      << "\" text-anchor=\"end\">" << format_double(x_hi) << "</text>"
      << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin
      << "\" text-anchor=\"end\">" << format_double(y_lo) << "</text>"
      << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 4
      << "\" text-anchor=\"end\">" << format_double(y_hi) << "</text></g>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if (!std::isfinite(series[s].x[i]) || !std::isfinite(series[s].y[i])) continue;
      svg << px(series[s].x[i]) << ',' << py(series[s].y[i]) << ' ';
    }
    svg << "\"/>\n";
    if (!series[s].label.empty()) {
      svg << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << kMargin + 14.0 * s
          << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"" << color << "\">"
          << escape(series[s].label) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::vector<PlotSeries>& series) {
  std::ofstream out = open_for_write(path);
  out << render_svg(title, series);
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace mimogc
