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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mimogc/universality.hpp"

namespace mimogc {

struct GradientCheck {
  std::string name;
  std::size_t parameters = 0;
  /// max |numeric - analytic| / max(|numeric|, |analytic|, kGradientFloor).
  double max_relative_error = 0.0;
};

inline constexpr double kGradientStep = 1e-5;
inline constexpr double kGradientFloor = 1e-6;

/// Central differences against backward() for each tape primitive, with the
/// output contracted against random weights to get a scalar.
std::vector<GradientCheck> primitive_gradient_checks(std::uint64_t seed);

/// Gradient of the MSE with respect to every parameter of each method on a
/// small universality problem. Checks at most `max_parameters` entries.
std::vector<GradientCheck> model_gradient_checks(const UniversalityConfig& config,
                                                 std::uint64_t seed,
                                                 std::size_t max_parameters = 200);

}  // namespace mimogc
