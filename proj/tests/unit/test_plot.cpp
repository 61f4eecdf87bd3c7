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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mimogc/plot.hpp"

using namespace mimogc;

TEST_CASE("doubles round trip through text") {
  for (double v : {0.1, 1e-31, -2.5, 12345.678, 4.0e-300}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv and svg files") {
  const auto dir = std::filesystem::temp_directory_path() / "mimogc_plot_test";
  std::filesystem::create_directories(dir);
  write_csv(dir / "t.csv", {"a", "b"}, {{"1", "x"}, {"2", "y"}});
  std::ifstream in(dir / "t.csv", std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == "a,b\n1,x\n2,y\n");

  const std::string svg =
      render_svg("loss", {{"lmgc", {0, 1, 2}, {1.0, 0.5, 0.25}}, {"gin", {0, 1}, {2.0, 1.0}}});
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("lmgc") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  write_svg(dir / "t.svg", "empty", {});
  CHECK(std::filesystem::file_size(dir / "t.svg") > 0);
  std::filesystem::remove_all(dir);
}
