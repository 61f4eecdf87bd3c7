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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimogc/convolution.hpp"
#include "mimogc/graph.hpp"

namespace mimogc {

enum class CoefficientVariant {
  kGcnNorm,
  kGatv2Softmax,
  kFagcnTanh,
  kAcmFixed,
  kLmgcEq14,
  kRandomIid,
};

std::string_view to_string(CoefficientVariant variant);
std::optional<CoefficientVariant> parse_variant(std::string_view name);

inline constexpr double kLeakySlope = 0.2;

/// How the edge weights alpha_(k)^(i,j) of each computational graph are
/// produced. Construct through the named factories, which fix the head count
/// and the parameter layout of each variant.
struct CoefficientScheme {
  CoefficientVariant variant = CoefficientVariant::kGcnNorm;
  std::size_t heads = 1;
  /// Attention vectors v_(k): length c for GATv2, 2 d for FAGCN (one vector),
  /// 2 K c for the tanh-gated instantiation.
  std::vector<Vector> attention;
  double leaky_slope = kLeakySlope;
  std::uint64_t seed = 0;
  /// ACM only: adds the identity as a third computational graph.
  bool acm_identity = false;

  static CoefficientScheme gcn_norm();
  static CoefficientScheme gatv2(std::vector<Vector> attention);
  static CoefficientScheme fagcn(Vector attention);
  static CoefficientScheme acm(bool identity_channel);
  static CoefficientScheme lmgc_eq14(std::vector<Vector> attention);
  static CoefficientScheme random_iid(std::size_t heads, std::uint64_t seed);

  /// Throws InvalidArgument unless the parameters fit a layer mapping
  /// `in_channels` to `out_channels`.
  void validate(std::size_t in_channels, std::size_t out_channels) const;
};

/// K edge-weight matrices; entry (i, j) is the weight with which node i
/// receives from node j. Nonzero only on edges of `graph`, plus the diagonal
/// when `allows_diagonal` (the ACM identity channel).
struct ComputationalGraphSet {
  std::vector<DenseMatrix> coefficients;
  bool allows_diagonal = false;
  Graph graph;

  std::size_t size() const noexcept { return coefficients.size(); }
  /// Support and finiteness check.
  bool well_formed() const;
};

/// One localized MIMO graph convolution: sum_k A~^(k) X W^(k).
struct LmgcLayer {
  WeightStack stack;
  CoefficientScheme scheme;

  std::size_t heads() const noexcept { return stack.size(); }
};

ComputationalGraphSet compute_coefficients(const CoefficientScheme& scheme,
                                           const Signal& x, const Graph& g,
                                           const WeightStack& stack);

/// Matrix form.
Signal lmgc_forward(const ComputationalGraphSet& graphs, const WeightStack& stack,
                    const Signal& x);
Signal lmgc_forward(const LmgcLayer& layer, const Signal& x, const Graph& g);

/// Node form: row i is sum_{j in N_i} W_(i,j) x_j (plus the diagonal term
/// when present).
Signal lmgc_forward_nodewise(const ComputationalGraphSet& graphs,
                             const WeightStack& stack, const Signal& x);

/// W_(i,j) = sum_k alpha_(k)^(i,j) W^(k)^T, a c x d matrix. Throws unless
/// (i, j) is an edge or an allowed diagonal entry.
DenseMatrix pairwise_transform(const WeightStack& stack,
                               const ComputationalGraphSet& graphs,
                               std::size_t i, std::size_t j);

/// Two-layer perceptron x -> relu(x W1 + b1) W2 + b2 applied row-wise.
struct GinMlp {
  DenseMatrix w1;
  Vector b1;
  DenseMatrix w2;
  Vector b2;
};

/// MLP((1 + eps) x_i + sum_{j in N_i} x_j) for every node.
Signal gin_forward(const Signal& x, const Graph& g, const GinMlp& mlp,
                   double eps = 0.0);

}  // namespace mimogc
