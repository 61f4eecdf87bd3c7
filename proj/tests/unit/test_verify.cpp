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

#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "mimogc/errors.hpp"
#include "mimogc/verify.hpp"

using namespace mimogc;
using namespace mimogc::testing;

TEST_CASE("lattice pool") {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const LatticePoint p = random_lattice_point(3, rng);
    CHECK(std::any_of(p.begin(), p.end(), [](int v) { return v != 0; }));
    for (int v : p) CHECK((v >= -kLatticeRadius && v <= kLatticeRadius));
    const Vector f = lattice_feature(p);
    CHECK(f[0] == doctest::Approx(p[0] / 3.0));
  }
  const MultisetInstance inst = random_instance(2, 4, rng);
  CHECK(std::is_sorted(inst.neighbors.begin(), inst.neighbors.end()));
  CHECK_FALSE(inst.neighbors.empty());
  CHECK(inst.neighbors.size() <= 4);
}

TEST_CASE("proportional multiplicities") {
  const LatticePoint x{1, 0};
  const LatticePoint y{0, 1};
  const MultisetInstance two{x, {x, x}};
  const MultisetInstance three{y, {x, x, x}};
  const MultisetInstance mixed{x, {x, x, y}};
  const MultisetInstance mixed2{x, {x, x, x, x, y, y}};
  CHECK(multiplicities_proportional(two, three));
  CHECK(multiplicities_proportional(mixed, mixed2));
  CHECK_FALSE(multiplicities_proportional(two, mixed));
  CHECK_FALSE(multiplicities_proportional(MultisetInstance{x, {x, y, y}}, mixed));
}

TEST_CASE("aggregators are deterministic functions of the instance") {
  Rng rng(2);
  for (auto source : {CoefficientSource::kRandomIid, CoefficientSource::kFagcnTanh,
                      CoefficientSource::kLmgcEq14, CoefficientSource::kGatv2Softmax}) {
    CAPTURE(to_string(source));
    const MultisetAggregator f(source, 3, 4, 4, 9);
    const MultisetAggregator g(source, 3, 4, 4, 9);
    const MultisetInstance inst = random_instance(4, 5, rng);
    CHECK(max_abs(f(inst) - g(inst)) == 0.0);
    CHECK(f(inst).size() == 4);
    if (source == CoefficientSource::kFagcnTanh) CHECK(f.heads() == 1);
  }
}

TEST_CASE("softmax attention collides on repeated elements for every seed") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(multiplicity_gap(CoefficientSource::kGatv2Softmax, 2, 4, 4, seed) < 1e-12);
    CHECK(multiplicity_gap(CoefficientSource::kRandomIid, 2, 4, 4, seed) > 1e-3);
    CHECK(multiplicity_gap(CoefficientSource::kLmgcEq14, 2, 4, 4, seed) > 1e-6);
  }
}

TEST_CASE("injectivity on small runs") {
  for (auto source : {CoefficientSource::kRandomIid, CoefficientSource::kLmgcEq14,
                      CoefficientSource::kFagcnTanh}) {
    CAPTURE(to_string(source));
    const TrialReport r = injectivity_trial(600, 2, 3, 3, 4, source);
    CHECK(r.trials == 600);
    CHECK(r.violations == 0);
    CHECK(r.metric > kCollisionThreshold);
  }
}

TEST_CASE("reports do not depend on the worker count") {
  const TrialReport a = injectivity_trial(700, 2, 3, 3, 5, CoefficientSource::kRandomIid, 1);
  const TrialReport b = injectivity_trial(700, 2, 3, 3, 5, CoefficientSource::kRandomIid, 3);
  CHECK(a.violations == b.violations);
  CHECK(a.metric == b.metric);
  const TrialReport c = independence_trial(600, 2, 3, 3, 5, 1);
  const TrialReport d = independence_trial(600, 2, 3, 3, 5, 4);
  CHECK(c.metric == d.metric);
  CHECK(c.excluded == d.excluded);
}

TEST_CASE("independence and its controls") {
  const TrialReport r = independence_trial(800, 2, 3, 3, 6);
  CHECK(r.trials == 800);
  CHECK(r.violations == 0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(doubled_multiset_ratio(2, 3, 3, seed) < 1e-12);
    CHECK(single_graph_parallel_ratio(3, 3, seed) < 1e-12);
  }
  CHECK_THROWS_AS(independence_trial(10, 1, 3, 3, 0), InvalidArgument);
}

TEST_CASE("parallel ratio") {
  Vector a(3);
  a << 1.0, 2.0, -1.0;
  CHECK(parallel_ratio(a, -3.0 * a) < 1e-15);
  Vector b(3);
  b << 0.0, 1.0, 2.0;
  CHECK(parallel_ratio(a, b) > 0.1);
}

TEST_CASE("dominance rows follow the closed form") {
  const std::vector<std::size_t> depths{1, 2, 4, 8};
  const auto rows = sca_dominance_report(depths, 5, 3);
  CHECK(rows.size() == 20);
  for (const DominanceRow& row : rows) {
    CHECK(row.response_error < 1e-9);
    if (!row.degenerate) CHECK(row.relative_error < 1e-9);
  }
}

TEST_CASE("gcn channels share one amplification profile") {
  Rng rng(7);
  const Graph g = generate_erdos_renyi(10, 0.4, rng);
  CHECK(shared_amplification_gap(g, gaussian(3, 4, rng)) < 1e-12);
}

TEST_CASE("oracle trials") {
  CHECK(equivalence_trial(20, 1).violations == 0);
  CHECK(universality_filter_trial(10, 8, 2).violations == 0);
  CHECK(polynomial_trial(10, 3).violations == 0);
  CHECK(gcn_trial(10, 4).violations == 0);
}
