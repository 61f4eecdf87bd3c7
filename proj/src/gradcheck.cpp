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

#include "mimogc/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mimogc/rng.hpp"
#include "mimogc/tape.hpp"

namespace mimogc {

namespace {

using Builder = std::function<Var(Tape&, Var)>;

DenseMatrix normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  return m;
}

double relative_error(double numeric, double analytic) {
  return std::abs(numeric - analytic) /
         std::max({std::abs(numeric), std::abs(analytic), kGradientFloor});
}

GradientCheck check_primitive(const std::string& name, const DenseMatrix& point,
                              const Builder& f, Rng& rng) {
  Tape probe;
  const Var shape = f(probe, probe.constant(point));
  const DenseMatrix weights =
      normal_matrix(probe.value(shape).rows(), probe.value(shape).cols(), rng);
  auto evaluate = [&](const DenseMatrix& at) {
    Tape t;
    return t.value(t.weighted_sum(f(t, t.constant(at)), weights))(0, 0);
  };

  Tape tape;
  const Var p = tape.parameter(point);
  tape.backward(tape.weighted_sum(f(tape, p), weights));
  const DenseMatrix analytic = tape.gradient(p);

  GradientCheck out{name, static_cast<std::size_t>(point.size()), 0.0};
  DenseMatrix probe_point = point;
  for (Eigen::Index e = 0; e < point.size(); ++e) {
    probe_point.data()[e] = point.data()[e] + kGradientStep;
    const double up = evaluate(probe_point);
    probe_point.data()[e] = point.data()[e] - kGradientStep;
    const double down = evaluate(probe_point);
    probe_point.data()[e] = point.data()[e];
    out.max_relative_error =
        std::max(out.max_relative_error,
                 relative_error((up - down) / (2.0 * kGradientStep), analytic.data()[e]));
  }
  return out;
}

}  // namespace

std::vector<GradientCheck> primitive_gradient_checks(std::uint64_t seed) {
  Rng rng(seed);
  const DenseMatrix p = normal_matrix(4, 3, rng);
  const DenseMatrix right = normal_matrix(3, 2, rng);
  const DenseMatrix left = normal_matrix(5, 4, rng);
  const DenseMatrix same = normal_matrix(4, 3, rng);
  const DenseMatrix row = normal_matrix(1, 3, rng);
  const DenseMatrix col = normal_matrix(4, 1, rng);
  const DenseMatrix target = normal_matrix(4, 3, rng);
  const std::vector<std::size_t> gather{2, 0, 0, 3, 1, 2};
  const std::vector<std::size_t> scatter{1, 0, 1, 3};
  const std::vector<std::size_t> segments{0, 0, 1, 2};

  std::vector<GradientCheck> out;
  out.push_back(check_primitive("matmul (left operand)", p,
                                [&](Tape& t, Var v) { return t.matmul(v, t.constant(right)); }, rng));
  out.push_back(check_primitive("matmul (right operand)", p,
                                [&](Tape& t, Var v) { return t.matmul(t.constant(left), v); }, rng));
  out.push_back(check_primitive("add", p,
                                [&](Tape& t, Var v) { return t.add(v, t.constant(same)); }, rng));
  out.push_back(check_primitive("add (shared input)", p,
                                [&](Tape& t, Var v) { return t.add(v, v); }, rng));
  out.push_back(check_primitive("scale", p, [&](Tape& t, Var v) { return t.scale(v, -1.7); }, rng));
  out.push_back(check_primitive("add_row (matrix)", p,
                                [&](Tape& t, Var v) { return t.add_row(v, t.constant(row)); }, rng));
  out.push_back(check_primitive("add_row (bias)", row,
                                [&](Tape& t, Var v) { return t.add_row(t.constant(p), v); }, rng));
  out.push_back(check_primitive("concat_cols", p,
                                [&](Tape& t, Var v) {
                                  const Var parts[] = {v, t.constant(same), v};
                                  return t.concat_cols(parts);
                                },
                                rng));
  out.push_back(check_primitive("slice_cols", p,
                                [&](Tape& t, Var v) { return t.slice_cols(v, 1, 2); }, rng));
  out.push_back(check_primitive("gather_rows", p,
                                [&](Tape& t, Var v) { return t.gather_rows(v, gather); }, rng));
  out.push_back(check_primitive("scatter_rows", p,
                                [&](Tape& t, Var v) { return t.scatter_rows(v, scatter, 5); }, rng));
  out.push_back(check_primitive("scale_rows (rows)", p,
                                [&](Tape& t, Var v) { return t.scale_rows(v, t.constant(col)); }, rng));
  out.push_back(check_primitive("scale_rows (weights)", col,
                                [&](Tape& t, Var v) { return t.scale_rows(t.constant(p), v); }, rng));
  out.push_back(check_primitive("tanh", p, [&](Tape& t, Var v) { return t.tanh(v); }, rng));
  out.push_back(check_primitive("leaky_relu", p,
                                [&](Tape& t, Var v) { return t.leaky_relu(v, 0.2); }, rng));
  out.push_back(check_primitive("relu", p, [&](Tape& t, Var v) { return t.relu(v); }, rng));
  out.push_back(check_primitive("segment_softmax", col,
                                [&](Tape& t, Var v) { return t.segment_softmax(v, segments); }, rng));
  out.push_back(check_primitive("mse", p, [&](Tape& t, Var v) { return t.mse(v, target); }, rng));
  return out;
}

std::vector<GradientCheck> model_gradient_checks(const UniversalityConfig& config,
                                                 std::uint64_t seed,
                                                 std::size_t max_parameters) {
  const UniversalityProblem problem = make_universality_problem(config);
  const EdgeIndex edges(problem.graph);
  std::vector<GradientCheck> out;
  for (Method method : kAllMethods) {
    std::vector<DenseMatrix> params = init_parameters(method, config, seed);
    auto forward = [&](Tape& t, bool trainable, std::vector<Var>& vars) {
      vars.clear();
      for (const DenseMatrix& p : params) {
        vars.push_back(trainable ? t.parameter(p) : t.constant(p));
      }
      const Var pred = model_forward(method, t, vars, t.constant(problem.x),
                                     problem.graph, edges, config);
      return t.mse(pred, problem.y);
    };
    auto loss_value = [&] {
      Tape t;
      std::vector<Var> vars;
      return t.value(forward(t, false, vars))(0, 0);
    };

    Tape tape;
    std::vector<Var> vars;
    tape.backward(forward(tape, true, vars));
    std::vector<DenseMatrix> grads;
    for (Var v : vars) grads.push_back(tape.gradient(v));

    GradientCheck check{std::string(to_string(method)), 0, 0.0};
    for (std::size_t i = 0; i < params.size(); ++i) {
      for (Eigen::Index e = 0; e < params[i].size(); ++e) {
        if (check.parameters == max_parameters) break;
        const double saved = params[i].data()[e];
        params[i].data()[e] = saved + kGradientStep;
        const double up = loss_value();
        params[i].data()[e] = saved - kGradientStep;
        const double down = loss_value();
        params[i].data()[e] = saved;
        check.max_relative_error =
            std::max(check.max_relative_error,
                     relative_error((up - down) / (2.0 * kGradientStep), grads[i].data()[e]));
        ++check.parameters;
      }
    }
    out.push_back(check);
  }
  return out;
}

}  // namespace mimogc
