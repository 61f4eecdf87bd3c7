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

#include "mimogc/universality.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <utility>

#include "mimogc/adam.hpp"
#include "mimogc/errors.hpp"
#include "mimogc/lmgc.hpp"
#include "mimogc/rng.hpp"

namespace mimogc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

constexpr std::uint64_t kProblemStream = 0;
constexpr std::uint64_t kInitStream = 16;

DenseMatrix uniform_matrix(std::size_t rows, std::size_t cols, double fan_in,
                           Rng& rng) {
  const double bound = 1.0 / std::sqrt(fan_in);
  DenseMatrix m(idx(rows), idx(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.uniform(-bound, bound);
  }
  return m;
}

DenseMatrix normal_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  DenseMatrix m(idx(rows), idx(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.normal();
  }
  return m;
}

std::size_t expected_param_count(Method method, const UniversalityConfig& config) {
  switch (method) {
    case Method::kLmgc:
    case Method::kGatv2: return config.heads + 1;
    case Method::kFagcn:
    case Method::kAcm: return 2;
    case Method::kGin: return 4;
  }
  return 0;
}

void check_params(Method method, std::size_t count,
                  const UniversalityConfig& config) {
  if (count != expected_param_count(method, config)) {
    throw InvalidArgument(std::string(to_string(method)) + ": expected " +
                          std::to_string(expected_param_count(method, config)) +
                          " parameter tensors, got " + std::to_string(count));
  }
}

DenseMatrix edge_norms(const Graph& g, const EdgeIndex& edges) {
  DenseMatrix norms(idx(edges.dst.size()), 1);
  for (std::size_t e = 0; e < edges.dst.size(); ++e) {
    norms(idx(e), 0) = 1.0 / std::sqrt(static_cast<double>(g.degree(edges.dst[e])) *
                                       static_cast<double>(g.degree(edges.src[e])));
  }
  return norms;
}

// sum over messages of alpha[e] * h[src[e]] delivered to dst[e].
Var aggregate(Tape& tape, Var h, Var alpha, const EdgeIndex& edges) {
  const Var messages = tape.scale_rows(tape.gather_rows(h, edges.src), alpha);
  return tape.scatter_rows(messages, edges.dst, edges.nodes);
}

Var sum_all(Tape& tape, const std::vector<Var>& terms) {
  Var total = terms.front();
  for (std::size_t k = 1; k < terms.size(); ++k) total = tape.add(total, terms[k]);
  return total;
}

WeightStack leading_stack(std::span<const DenseMatrix> params, std::size_t k) {
  return WeightStack(std::vector<DenseMatrix>(params.begin(), params.begin() + idx(k)));
}

std::vector<Vector> columns(const DenseMatrix& m) {
  std::vector<Vector> out;
  for (Eigen::Index k = 0; k < m.cols(); ++k) out.emplace_back(m.col(k));
  return out;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kGatv2: return "gatv2";
    case Method::kFagcn: return "fagcn";
    case Method::kAcm: return "acm";
    case Method::kGin: return "gin";
    case Method::kLmgc: return "lmgc";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

EdgeIndex::EdgeIndex(const Graph& g) : nodes(g.num_nodes()) {
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    for (std::size_t j : g.neighbors(i)) {
      dst.push_back(i);
      src.push_back(j);
    }
  }
}

UniversalityProblem make_universality_problem(const UniversalityConfig& config) {
  if (config.n == 0 || config.d == 0 || config.c == 0) {
    throw InvalidArgument("universality problem needs n, d, c > 0");
  }
  Rng rng(derive_seed(config.seed, kProblemStream));
  UniversalityProblem problem;
  problem.graph = generate_erdos_renyi(config.n, config.p, rng);
  problem.x = normal_matrix(config.n, config.d, rng);
  problem.y = normal_matrix(config.n, config.c, rng);
  return problem;
}

std::vector<DenseMatrix> init_parameters(Method method,
                                         const UniversalityConfig& config,
                                         std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = config.d;
  const std::size_t c = config.c;
  const std::size_t k = config.heads;
  std::vector<DenseMatrix> params;
  switch (method) {
    case Method::kLmgc:
      for (std::size_t h = 0; h < k; ++h) {
        params.push_back(uniform_matrix(d, c, static_cast<double>(d), rng));
      }
      params.push_back(
          uniform_matrix(2 * k * c, k, static_cast<double>(2 * k * c), rng));
      break;
    case Method::kGatv2:
      for (std::size_t h = 0; h < k; ++h) {
        params.push_back(uniform_matrix(d, c, static_cast<double>(d), rng));
      }
      params.push_back(uniform_matrix(c, k, static_cast<double>(c), rng));
      break;
    case Method::kFagcn:
      params.push_back(uniform_matrix(d, c, static_cast<double>(d), rng));
      params.push_back(uniform_matrix(2 * d, 1, static_cast<double>(2 * d), rng));
      break;
    case Method::kAcm:
      params.push_back(uniform_matrix(d, c, static_cast<double>(d), rng));
      params.push_back(uniform_matrix(d, c, static_cast<double>(d), rng));
      break;
    case Method::kGin: {
      const std::size_t h = config.gin_hidden;
      params.push_back(uniform_matrix(d, h, static_cast<double>(d), rng));
      params.push_back(uniform_matrix(1, h, static_cast<double>(d), rng));
      params.push_back(uniform_matrix(h, c, static_cast<double>(h), rng));
      params.push_back(uniform_matrix(1, c, static_cast<double>(h), rng));
      break;
    }
  }
  return params;
}

Var model_forward(Method method, Tape& tape, std::span<const Var> params,
                  Var x, const Graph& g, const EdgeIndex& edges,
                  const UniversalityConfig& config) {
  check_params(method, params.size(), config);
  const std::size_t k = config.heads;
  switch (method) {
    case Method::kLmgc: {
      std::vector<Var> transformed;
      for (std::size_t h = 0; h < k; ++h) transformed.push_back(tape.matmul(x, params[h]));
      const Var act = tape.leaky_relu(tape.concat_cols(transformed), kLeakySlope);
      const std::array<Var, 2> ends{tape.gather_rows(act, edges.dst),
                                    tape.gather_rows(act, edges.src)};
      const Var alpha = tape.tanh(tape.matmul(tape.concat_cols(ends), params[k]));
      std::vector<Var> terms;
      for (std::size_t h = 0; h < k; ++h) {
        terms.push_back(aggregate(tape, transformed[h], tape.slice_cols(alpha, h, 1), edges));
      }
      return sum_all(tape, terms);
    }
    case Method::kGatv2: {
      std::vector<Var> terms;
      for (std::size_t h = 0; h < k; ++h) {
        const Var xw = tape.matmul(x, params[h]);
        const Var pre = tape.add(tape.gather_rows(xw, edges.dst),
                                 tape.gather_rows(xw, edges.src));
        const Var scores = tape.matmul(tape.leaky_relu(pre, kLeakySlope),
                                       tape.slice_cols(params[k], h, 1));
        const Var alpha = tape.segment_softmax(scores, edges.dst);
        terms.push_back(aggregate(tape, xw, alpha, edges));
      }
      return sum_all(tape, terms);
    }
    case Method::kFagcn: {
      const std::array<Var, 2> ends{tape.gather_rows(x, edges.dst),
                                    tape.gather_rows(x, edges.src)};
      const Var gate = tape.tanh(tape.matmul(tape.concat_cols(ends), params[1]));
      const Var alpha = tape.scale_rows(gate, tape.constant(edge_norms(g, edges)));
      return aggregate(tape, tape.matmul(x, params[0]), alpha, edges);
    }
    case Method::kAcm: {
      const Var low = tape.matmul(tape.constant(normalized_adjacency(g)),
                                  tape.matmul(x, params[0]));
      const Var high = tape.matmul(tape.constant(laplacian(g)),
                                   tape.matmul(x, params[1]));
      return tape.add(low, high);
    }
    case Method::kGin: {
      const Var ones = tape.constant(DenseMatrix::Ones(idx(edges.dst.size()), 1));
      const Var z = tape.add(x, aggregate(tape, x, ones, edges));
      const Var hidden = tape.relu(tape.add_row(tape.matmul(z, params[0]), params[1]));
      return tape.add_row(tape.matmul(hidden, params[2]), params[3]);
    }
  }
  throw InvalidArgument("unknown method");
}

Signal model_reference(Method method, std::span<const DenseMatrix> params,
                       const Signal& x, const Graph& g,
                       const UniversalityConfig& config) {
  check_params(method, params.size(), config);
  const std::size_t k = config.heads;
  switch (method) {
    case Method::kLmgc: {
      LmgcLayer layer{leading_stack(params, k),
                      CoefficientScheme::lmgc_eq14(columns(params[k]))};
      return lmgc_forward(layer, x, g);
    }
    case Method::kGatv2: {
      LmgcLayer layer{leading_stack(params, k),
                      CoefficientScheme::gatv2(columns(params[k]))};
      return lmgc_forward(layer, x, g);
    }
    case Method::kFagcn: {
      LmgcLayer layer{WeightStack({params[0]}),
                      CoefficientScheme::fagcn(params[1].col(0))};
      return lmgc_forward(layer, x, g);
    }
    case Method::kAcm: {
      LmgcLayer layer{WeightStack({params[0], params[1]}),
                      CoefficientScheme::acm(false)};
      return lmgc_forward(layer, x, g);
    }
    case Method::kGin: {
      GinMlp mlp{params[0], params[1].row(0).transpose(), params[2],
                 params[3].row(0).transpose()};
      return gin_forward(x, g, mlp, 0.0);
    }
  }
  throw InvalidArgument("unknown method");
}

TrialResult run_universality_experiment(Method method,
                                        const UniversalityConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  TrialResult result = train_on_problem(method, config, make_universality_problem(config));
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

TrialResult train_on_problem(Method method, const UniversalityConfig& config,
                             const UniversalityProblem& problem) {
  const auto start = std::chrono::steady_clock::now();
  UniversalityConfig shape = config;
  shape.n = problem.graph.num_nodes();
  shape.d = static_cast<std::size_t>(problem.x.cols());
  shape.c = static_cast<std::size_t>(problem.y.cols());
  if (static_cast<std::size_t>(problem.x.rows()) != shape.n ||
      static_cast<std::size_t>(problem.y.rows()) != shape.n) {
    throw InvalidArgument("train_on_problem: X and Y need one row per node");
  }
  const EdgeIndex edges(problem.graph);
  std::vector<DenseMatrix> params = init_parameters(
      method, shape,
      derive_seed(config.seed, kInitStream + static_cast<std::uint64_t>(method)));
  AdamState adam(AdamOptions{config.lr}, params);

  TrialResult result;
  result.method = method;
  result.lr = config.lr;
  result.seed = config.seed;
  result.steps = config.steps;
  result.min_mse = std::numeric_limits<double>::infinity();

  Tape tape;
  std::vector<Var> vars(params.size());
  std::vector<DenseMatrix> grads(params.size());
  for (std::size_t step = 0; step <= config.steps; ++step) {
    tape.clear();
    for (std::size_t i = 0; i < params.size(); ++i) vars[i] = tape.parameter(params[i]);
    const Var x = tape.constant(problem.x);
    const Var out = model_forward(method, tape, vars, x, problem.graph, edges, shape);
    const Var loss = tape.mse(out, problem.y);
    const double value = tape.value(loss)(0, 0);
    if (step == 0) result.initial_mse = value;
    if (config.record_trace) result.trace.push_back(value);
    result.final_mse = value;
    if (!std::isfinite(value)) {
      result.diverged = true;
      break;
    }
    result.min_mse = std::min(result.min_mse, value);
    if (step == config.steps) break;
    tape.backward(loss);
    for (std::size_t i = 0; i < params.size(); ++i) grads[i] = tape.gradient(vars[i]);
    adam.step(params, grads);
  }
  if (!std::isfinite(result.min_mse)) {
    result.min_mse = std::numeric_limits<double>::quiet_NaN();
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<TrialResult> run_universality_grid(
    std::span<const Method> methods, std::span<const double> learning_rates,
    std::size_t num_seeds, const UniversalityConfig& base, std::size_t jobs) {
  std::vector<UniversalityConfig> configs;
  std::vector<Method> order;
  for (Method m : methods) {
    for (double lr : learning_rates) {
      for (std::size_t s = 0; s < num_seeds; ++s) {
        UniversalityConfig cfg = base;
        cfg.lr = lr;
        cfg.seed = base.seed + s;
        configs.push_back(cfg);
        order.push_back(m);
      }
    }
  }
  std::vector<TrialResult> results(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      results[i] = run_universality_experiment(order[i], configs[i]);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(configs.size(), 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return results;
}

std::vector<TrialResult> best_per_seed(std::span<const TrialResult> trials) {
  std::map<std::pair<int, std::uint64_t>, TrialResult> best;
  auto better = [](const TrialResult& a, const TrialResult& b) {
    const bool fa = std::isfinite(a.min_mse);
    const bool fb = std::isfinite(b.min_mse);
    if (fa != fb) return fa;
    return a.min_mse < b.min_mse;
  };
  for (const TrialResult& t : trials) {
    const auto key = std::make_pair(static_cast<int>(t.method), t.seed);
    auto it = best.find(key);
    if (it == best.end() || better(t, it->second)) best[key] = t;
  }
  std::vector<TrialResult> out;
  for (auto& [key, value] : best) out.push_back(value);
  return out;
}

}  // namespace mimogc
