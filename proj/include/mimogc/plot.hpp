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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mimogc {

/// Writes a CSV file with a header row and LF line endings. Cells are
/// written as given; doubles should be formatted by the caller.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal line chart: one polyline per series, axes with min/max labels.
std::string render_svg(const std::string& title, const std::vector<PlotSeries>& series);
void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::vector<PlotSeries>& series);

}  // namespace mimogc
