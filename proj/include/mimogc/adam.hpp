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
#include <span>
#include <vector>

#include "mimogc/graph.hpp"

namespace mimogc {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Bias-corrected Adam over a fixed list of dense parameters.
class AdamState {
 public:
  AdamState(AdamOptions options, std::span<const DenseMatrix> params);

  /// params[i] -= lr * m_hat / (sqrt(v_hat) + eps). Throws InvalidArgument
  /// when counts or shapes disagree with the construction-time parameters.
  void step(std::span<DenseMatrix> params, std::span<const DenseMatrix> grads);

  std::size_t steps_taken() const noexcept { return t_; }
  const AdamOptions& options() const noexcept { return options_; }
  const DenseMatrix& first_moment(std::size_t i) const { return m_.at(i); }
  const DenseMatrix& second_moment(std::size_t i) const { return v_.at(i); }

 private:
  AdamOptions options_;
  std::size_t t_ = 0;
  std::vector<DenseMatrix> m_;
  std::vector<DenseMatrix> v_;
};

}  // namespace mimogc
