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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mimogc/graph.hpp"
#include "mimogc/tape.hpp"

namespace mimogc {

/// Single-layer models compared on the universality task.
enum class Method { kGatv2, kFagcn, kAcm, kGin, kLmgc };

inline constexpr std::array<Method, 5> kAllMethods{
    Method::kGatv2, Method::kFagcn, Method::kAcm, Method::kGin, Method::kLmgc};
inline constexpr std::array<double, 3> kLearningRateGrid{0.03, 0.01, 0.003};

std::string_view to_string(Method method);
/// Accepts the lowercase names printed by to_string ("gatv2", "lmgc", ...).
std::optional<Method> parse_method(std::string_view name);

struct UniversalityConfig {
  std::size_t n = 16;
  std::size_t d = 16;
  std::size_t c = 16;
  double p = 0.1;
  std::size_t steps = 40000;
  double lr = 0.01;
  std::uint64_t seed = 0;
  /// K for GATv2 and LMGC.
  std::size_t heads = 4;
  std::size_t gin_hidden = 16;
  /// Keep the loss of every evaluation in TrialResult::trace.
  bool record_trace = false;
};

/// Fixed regression instance: a connected G(n, p) sample and X, Y with
/// standard normal entries. Depends only on (n, d, c, p, seed), so every
/// method and learning rate sees the same data for a given seed.
struct UniversalityProblem {
  Graph graph;
  Signal x;
  Signal y;
};

UniversalityProblem make_universality_problem(const UniversalityConfig& config);

/// Directed message list: message e flows from src[e] into dst[e]. Built by
/// walking nodes in order and each node's sorted neighbor list.
struct EdgeIndex {
  std::vector<std::size_t> dst;
  std::vector<std::size_t> src;
  std::size_t nodes = 0;

  explicit EdgeIndex(const Graph& g);
};

/// Parameter list of a method, each matrix uniform in +-1/sqrt(fan_in).
///   LMGC : W^(1..K) (d x c), V (2Kc x K) whose columns are v_(k)
///   GATv2: W^(1..K) (d x c), A (c x K) whose columns are the head vectors
///   FAGCN: W (d x c), v (2d x 1)
///   ACM  : W^(1), W^(2) (d x c) for A_sym and L_sym
///   GIN  : W1 (d x h), b1 (1 x h), W2 (h x c), b2 (1 x c)
std::vector<DenseMatrix> init_parameters(Method method,
                                         const UniversalityConfig& config,
                                         std::uint64_t seed);

/// Differentiable forward pass on `tape`.
Var model_forward(Method method, Tape& tape, std::span<const Var> params,
                  Var x, const Graph& g, const EdgeIndex& edges,
                  const UniversalityConfig& config);

/// The same model evaluated through the lmgc module (coefficient schemes and
/// gin_forward) rather than the tape.
Signal model_reference(Method method, std::span<const DenseMatrix> params,
                       const Signal& x, const Graph& g,
                       const UniversalityConfig& config);

struct TrialResult {
  Method method = Method::kLmgc;
  double lr = 0.0;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  /// Minimum over the initial evaluation and the loss after every step.
  double min_mse = 0.0;
  double initial_mse = 0.0;
  double final_mse = 0.0;
  double wall_seconds = 0.0;
  /// A non-finite loss was met; min_mse covers the steps before it.
  bool diverged = false;
  /// Loss before each update and after the last one, when requested.
  std::vector<double> trace;
};

/// Trains one model with Adam for config.steps updates and reports the
/// smallest MSE seen.
TrialResult run_universality_experiment(Method method,
                                        const UniversalityConfig& config);

/// Same training loop on a caller-supplied problem (the graph, X and Y of
/// `problem`; config.n, d, c and p are ignored).
TrialResult train_on_problem(Method method, const UniversalityConfig& config,
                             const UniversalityProblem& problem);

/// Every (method, lr, seed) combination, in that nesting order, with seeds
/// 0..num_seeds-1 offset by base.seed. `jobs` > 1 runs trials on worker
/// threads; results are identical to the serial run.
std::vector<TrialResult> run_universality_grid(
    std::span<const Method> methods, std::span<const double> learning_rates,
    std::size_t num_seeds, const UniversalityConfig& base, std::size_t jobs = 1);

/// For each (method, seed), the trial with the smallest min_mse over the
/// learning rates; diverged trials lose to finite ones.
std::vector<TrialResult> best_per_seed(std::span<const TrialResult> trials);

}  // namespace mimogc
