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

#include "mimogc/adam.hpp"

#include <cmath>
#include <string>

#include "mimogc/errors.hpp"

namespace mimogc {

AdamState::AdamState(AdamOptions options, std::span<const DenseMatrix> params)
    : options_(options) {
  if (!(options.learning_rate > 0.0) || !(options.epsilon > 0.0) ||
      options.beta1 < 0.0 || options.beta1 >= 1.0 || options.beta2 < 0.0 ||
      options.beta2 >= 1.0) {
    throw InvalidArgument("adam: invalid hyperparameters");
  }
  m_.reserve(params.size());
  v_.reserve(params.size());
  for (const DenseMatrix& p : params) {
    m_.push_back(DenseMatrix::Zero(p.rows(), p.cols()));
    v_.push_back(DenseMatrix::Zero(p.rows(), p.cols()));
  }
}

void AdamState::step(std::span<DenseMatrix> params,
                     std::span<const DenseMatrix> grads) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw InvalidArgument("adam: expected " + std::to_string(m_.size()) +
                          " parameters and gradients");
  }
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (params[i].rows() != m_[i].rows() || params[i].cols() != m_[i].cols() ||
        grads[i].rows() != m_[i].rows() || grads[i].cols() != m_[i].cols()) {
      throw InvalidArgument("adam: shape mismatch for parameter " +
                            std::to_string(i));
    }
  }
  ++t_;
  const double t = static_cast<double>(t_);
  const double c1 = 1.0 - std::pow(options_.beta1, t);
  const double c2 = 1.0 - std::pow(options_.beta2, t);
  for (std::size_t i = 0; i < m_.size(); ++i) {
    m_[i] = options_.beta1 * m_[i] + (1.0 - options_.beta1) * grads[i];
    v_[i] = options_.beta2 * v_[i] +
            (1.0 - options_.beta2) * grads[i].cwiseProduct(grads[i]);
    params[i].array() -= options_.learning_rate * (m_[i].array() / c1) /
                         ((v_[i].array() / c2).sqrt() + options_.epsilon);
  }
}

}  // namespace mimogc
