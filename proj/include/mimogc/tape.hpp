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
#include <functional>
#include <span>
#include <vector>

#include "mimogc/graph.hpp"

namespace mimogc {

/// Handle to a value recorded on a Tape.
struct Var {
  std::size_t id = 0;
};

/// Append-only record of dense matrix operations with reverse-mode
/// differentiation. Nodes are stored in creation order, which is a
/// topological order, so backward() is a single reverse sweep.
class Tape {
 public:
  /// Leaf whose gradient is wanted.
  Var parameter(const DenseMatrix& value);
  /// Leaf treated as fixed data.
  Var constant(const DenseMatrix& value);

  Var matmul(Var a, Var b);
  Var add(Var a, Var b);
  Var scale(Var a, double factor);
  /// a + 1 * bias, with `bias` a 1 x cols row.
  Var add_row(Var a, Var bias);
  Var concat_cols(std::span<const Var> parts);
  Var slice_cols(Var a, std::size_t start, std::size_t count);
  /// Row e of the result is row index[e] of a.
  Var gather_rows(Var a, std::span<const std::size_t> index);
  /// Row r of the result is the sum of rows e of a with index[e] == r.
  Var scatter_rows(Var a, std::span<const std::size_t> index, std::size_t rows);
  /// Row e of a multiplied by w(e, 0); w is a column.
  Var scale_rows(Var a, Var w);
  Var tanh(Var a);
  Var leaky_relu(Var a, double slope);
  Var relu(Var a);
  /// Softmax of the column `scores` within each group of equal segment[e].
  Var segment_softmax(Var scores, std::span<const std::size_t> segment);
  /// Mean of (pred - target)^2 as a 1 x 1 value.
  Var mse(Var pred, const DenseMatrix& target);
  /// sum(a .* weights) as a 1 x 1 value.
  Var weighted_sum(Var a, const DenseMatrix& weights);

  const DenseMatrix& value(Var v) const { return nodes_.at(v.id).value; }
  /// Adjoint after backward(); zero for nodes the loss does not reach.
  DenseMatrix gradient(Var v) const;

  /// Seeds d loss / d loss = 1 and propagates. Throws InvalidArgument when
  /// `loss` is not 1 x 1.
  void backward(Var loss);

  std::size_t size() const noexcept { return nodes_.size(); }
  void clear() { nodes_.clear(); }

 private:
  struct Node {
    DenseMatrix value;
    DenseMatrix adjoint;
    bool needs_grad = false;
    std::function<void(Tape&, std::size_t)> backprop;
  };

  Var push(DenseMatrix value, bool needs_grad,
           std::function<void(Tape&, std::size_t)> backprop);
  bool needs(Var v) const { return nodes_[v.id].needs_grad; }
  DenseMatrix& adjoint(std::size_t id);

  std::vector<Node> nodes_;
};

}  // namespace mimogc
