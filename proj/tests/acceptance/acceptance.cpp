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

// Acceptance checks, one line per criterion:
//   criterion N PASS|FAIL  <name>: <measurements> (<elapsed> s)
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mimogc/gradcheck.hpp"
#include "mimogc/rng.hpp"
#include "mimogc/universality.hpp"
#include "mimogc/verify.hpp"

using namespace mimogc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Options {
  std::size_t jobs = 1;
  std::size_t steps = 40000;
};

std::string sci(double value) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(2) << value;
  return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

DenseMatrix gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  return m;
}

Outcome equivalence(const Options&) {
  const auto start = std::chrono::steady_clock::now();
  const TrialReport r = equivalence_trial(100, 1, 1e-9);
  const double t = seconds_since(start);
  return {r.violations == 0 && t < 10.0,
          "100 instances, max abs diff " + sci(r.metric) + " (tol 1e-9), " +
              std::to_string(r.violations) + " above tolerance, limit 10 s"};
}

Outcome universality_construction(const Options&) {
  const auto start = std::chrono::steady_clock::now();
  const TrialReport r = universality_filter_trial(50, 16, 2, 1e-8);
  const double t = seconds_since(start);
  return {r.violations == 0 && t < 5.0,
          "50 instances at n=d=c=16, max relative residual " + sci(r.metric) +
              " (tol 1e-8), limit 5 s"};
}

Outcome polynomial_filters(const Options&) {
  const TrialReport poly = polynomial_trial(50, 3, 1e-8);
  const TrialReport gcn = gcn_trial(50, 4, 1e-10);
  return {poly.violations == 0 && gcn.violations == 0,
          "degree <= 3 max diff " + sci(poly.metric) + " (tol 1e-8), gcn max diff " +
              sci(gcn.metric) + " (tol 1e-10)"};
}

Outcome universality_task(const Options& options) {
  UniversalityConfig config;
  config.steps = options.steps;
  const auto start = std::chrono::steady_clock::now();
  const auto trials = run_universality_grid(kAllMethods, kLearningRateGrid, 3, config, options.jobs);
  const double t = seconds_since(start);
  const auto best = best_per_seed(trials);

  std::map<Method, std::vector<double>> per_method;
  for (const TrialResult& r : best) {
    per_method[r.method].push_back(r.diverged && !std::isfinite(r.min_mse)
                                       ? std::numeric_limits<double>::infinity()
                                       : r.min_mse);
  }
  bool pass = true;
  std::ostringstream detail;
  for (Method m : kAllMethods) {
    const auto& values = per_method[m];
    detail << to_string(m) << " [";
    for (std::size_t s = 0; s < values.size(); ++s) detail << (s ? " " : "") << sci(values[s]);
    detail << "] ";
    for (std::size_t s = 0; s < values.size(); ++s) {
      if (m == Method::kLmgc) {
        pass = pass && values[s] <= 1e-6;
      } else {
        pass = pass && values[s] >= 1e-2 && per_method[Method::kLmgc][s] < values[s];
      }
    }
  }
  const double limit = options.jobs >= 4 ? 600.0 : 1800.0;
  pass = pass && t < limit;
  detail << "(lmgc <= 1e-6, others >= 1e-2 and above lmgc per seed; " << options.steps
         << " steps, " << options.jobs << " worker(s), limit " << limit << " s)";
  return {pass, detail.str()};
}

Outcome injectivity(const Options& options) {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream detail;
  for (std::size_t heads : {1U, 4U}) {
    const TrialReport r = injectivity_trial(10000, heads, 4, 4, 5, CoefficientSource::kRandomIid,
                                            options.jobs);
    pass = pass && r.violations == 0 && r.trials == 10000;
    detail << "K=" << heads << " " << r.violations << "/" << r.trials << " collisions (min sep "
           << sci(r.metric) << "); ";
  }
  std::size_t collided = 0;
  double worst = 0.0;
  const std::size_t seeds = 50;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const double gap = multiplicity_gap(CoefficientSource::kGatv2Softmax, 4, 4, 4, seed);
    worst = std::max(worst, gap);
    if (gap <= kCollisionThreshold) ++collided;
  }
  pass = pass && collided == seeds;
  const double t = seconds_since(start);
  pass = pass && t < 60.0;
  detail << "softmax {{v}} vs {{v,v}} collides on " << collided << "/" << seeds
         << " seeds (max gap " << sci(worst) << "), limit 60 s";
  return {pass, detail.str()};
}

Outcome independence(const Options& options) {
  const auto start = std::chrono::steady_clock::now();
  const TrialReport r = independence_trial(10000, 2, 4, 4, 6, options.jobs);
  double control = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    control = std::max(control, doubled_multiset_ratio(2, 4, 4, seed));
  }
  const double t = seconds_since(start);
  const bool pass = r.violations == 0 && r.trials == 10000 && control < kParallelThreshold && t < 60.0;
  return {pass, "K=2 " + std::to_string(r.violations) + "/" + std::to_string(r.trials) +
                    " parallel (min ratio " + sci(r.metric) + ", " + std::to_string(r.excluded) +
                    " proportional pairs skipped); doubled control max ratio " + sci(control) +
                    " (parallel below 1e-9), limit 60 s"};
}

Outcome shared_amplification(const Options&) {
  Rng rng(7);
  double gap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = generate_erdos_renyi(12, 0.3, rng);
    gap = std::max(gap, shared_amplification_gap(g, gaussian(4, 4, rng)));
  }
  const std::vector<std::size_t> depths{1, 2, 4, 16};
  const auto rows = sca_dominance_report(depths, 20, 8);
  double worst = 0.0;
  double response = 0.0;
  std::size_t checked = 0;
  std::size_t degenerate = 0;
  for (const DominanceRow& row : rows) {
    response = std::max(response, row.response_error);
    if (row.depth == 1) continue;
    if (row.degenerate) {
      ++degenerate;
      continue;
    }
    worst = std::max(worst, row.relative_error);
    ++checked;
  }
  const bool pass = gap <= 1e-9 && checked > 0 && worst <= 1e-9 && response <= 1e-9;
  return {pass, "curve gap " + sci(gap) + " (tol 1e-9); r(k) vs r(1)^k for k in {2,4,16}: max rel err " +
                    sci(worst) + " over " + std::to_string(checked) + " rows (" +
                    std::to_string(degenerate) + " tied rows skipped), stack response err " +
                    sci(response)};
}

Outcome gradients(const Options&) {
  double worst_primitive = 0.0;
  std::string worst_name;
  for (const GradientCheck& c : primitive_gradient_checks(1)) {
    if (c.max_relative_error >= worst_primitive) {
      worst_primitive = c.max_relative_error;
      worst_name = c.name;
    }
  }
  UniversalityConfig config;
  config.n = 8;
  config.d = 4;
  config.c = 4;
  config.p = 0.4;
  config.heads = 4;
  config.gin_hidden = 4;
  std::ostringstream detail;
  detail << "primitives max rel err " << sci(worst_primitive) << " (" << worst_name << "); ";
  bool pass = worst_primitive <= 1e-3;
  for (const GradientCheck& c : model_gradient_checks(config, 2)) {
    pass = pass && c.max_relative_error <= 1e-3 && c.parameters <= 200;
    detail << c.name << " " << sci(c.max_relative_error) << " (" << c.parameters << " params) ";
  }
  detail << "(tol 1e-3)";
  return {pass, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks for the mimogc library"};
  int criterion = 0;
  Options options;
  app.add_option("--criterion", criterion, "Run one criterion (1-8); 0 runs all")
      ->check(CLI::Range(0, 8));
  app.add_option("--jobs", options.jobs, "Worker threads for the sampled checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--steps", options.steps, "Adam steps for criterion 4 (full protocol: 40000)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome(const Options&)>>> checks{
      {"mimo-gc forms agree", equivalence},
      {"universality filter construction", universality_construction},
      {"polynomial and gcn filters as mimo-gc", polynomial_filters},
      {"universality task ordering", universality_task},
      {"multiset injectivity", injectivity},
      {"linear independence of outputs", independence},
      {"shared component amplification", shared_amplification},
      {"gradient integrity", gradients},
  };

  bool all = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (criterion != 0 && static_cast<std::size_t>(criterion) != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = checks[i].second(options);
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double t = seconds_since(start);
    all = all && outcome.pass;
    std::cout << "criterion " << i + 1 << (outcome.pass ? " PASS  " : " FAIL  ") << checks[i].first
              << ": " << outcome.detail << " (" << std::fixed << std::setprecision(2) << t
              << " s)" << std::defaultfloat << std::endl;
  }
  return all ? 0 : 1;
}
