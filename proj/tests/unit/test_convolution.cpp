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
#include <functional>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "mimogc/convolution.hpp"
#include "mimogc/errors.hpp"

using namespace mimogc;
using namespace mimogc::testing;

namespace {

FilterTensor random_filter(std::size_t n, std::size_t c, std::size_t d,
                           const SpectralBasis& basis, Rng& rng) {
  std::vector<DenseMatrix> slices;
  for (std::size_t i = 0; i < n; ++i) {
    slices.push_back(gaussian(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(d), rng));
  }
  return FilterTensor(std::move(slices), basis.id);
}

}  // namespace

TEST_CASE("siso convolution") {
  Rng rng(2);
  const Graph g = generate_erdos_renyi(10, 0.35, rng);
  const SpectralBasis b = spectral_basis(g);
  const Vector x = gaussian(10, 1, rng).col(0);

  // U^T theta = 1 is the identity filter.
  const Vector ones_hat = b.vectors * Vector::Ones(10);
  CHECK(max_abs(siso_gc(ones_hat, x, b) - x) < 1e-10);

  // A single unit spectral component projects onto that eigenvector.
  const Vector u3 = b.vectors.col(3);
  const Vector projected = siso_gc(u3, x, b);
  CHECK(max_abs(projected - u3 * u3.dot(x)) < 1e-10);
}

TEST_CASE("weight stack and filter tensor round trip") {
  Rng rng(3);
  const Graph g = generate_erdos_renyi(9, 0.4, rng);
  const SpectralBasis b = spectral_basis(g);
  const FilterTensor theta = random_filter(9, 2, 3, b, rng);
  const WeightStack w = weight_stack_from_filter(theta, b);
  CHECK(w.size() == 9);
  CHECK(w.in_channels() == 3);
  CHECK(w.out_channels() == 2);
  const FilterTensor back = filter_from_weight_stack(w, b);
  for (std::size_t i = 0; i < 9; ++i) CHECK(max_abs(back.slice(i) - theta.slice(i)) < 1e-10);
  const WeightStack again = weight_stack_from_filter(back, b);
  for (std::size_t k = 0; k < 9; ++k) CHECK(max_abs(again[k] - w[k]) < 1e-10);
}

TEST_CASE("identity weights leave the signal unchanged") {
  Rng rng(4);
  const Graph g = generate_erdos_renyi(8, 0.4, rng);
  const SpectralBasis b = spectral_basis(g);
  const Signal x = gaussian(8, 3, rng);
  const WeightStack id = WeightStack::identity(8, 3);
  CHECK(max_abs(mimo_gc(id, x, b) - x) < 1e-10);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const DenseMatrix expected =
          i == j ? DenseMatrix(DenseMatrix::Identity(3, 3)) : DenseMatrix(DenseMatrix::Zero(3, 3));
      CHECK(max_abs(pairwise_weight(id, b, i, j) - expected) < 1e-10);
    }
  }
}

TEST_CASE("mimo convolution agrees with its references") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + rng.below(10);
    const std::size_t d = 1 + rng.below(5);
    const std::size_t c = 1 + rng.below(5);
    const Graph g = generate_erdos_renyi(n, 0.5, rng);
    const SpectralBasis b = spectral_basis(g);
    const FilterTensor theta = random_filter(n, c, d, b, rng);
    const Signal x = gaussian(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d), rng);

    const Signal fast = mimo_gc(theta, x, b);
    CHECK(fast.rows() == static_cast<Eigen::Index>(n));
    CHECK(fast.cols() == static_cast<Eigen::Index>(c));
    CHECK(max_abs(fast - mimo_gc_oracle(theta, x, b)) < 1e-9);
    CHECK(max_abs(fast - mimo_gc_kronecker(theta, x, b)) < 1e-9);
    const WeightStack w = weight_stack_from_filter(theta, b);
    CHECK(max_abs(fast - mimo_gc_pairwise(w, x, b)) < 1e-9);
    CHECK(max_abs(fast - mimo_gc(w, x, b)) < 1e-9);

    // Linearity in the signal.
    const Signal z = gaussian(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d), rng);
    CHECK(max_abs(mimo_gc(theta, 2.0 * x - z, b) - (2.0 * fast - mimo_gc(theta, z, b))) < 1e-9);
  }
}

TEST_CASE("filters are tied to their basis") {
  const SpectralBasis a = spectral_basis(triangle());
  const SpectralBasis p = spectral_basis(path_graph(3));
  const FilterTensor theta(3, 1, 1, a.id);
  CHECK_THROWS_AS(mimo_gc(theta, Signal::Ones(3, 1), p), InvalidArgument);
  CHECK_THROWS_AS(mimo_gc(theta, Signal::Ones(4, 1), a), InvalidArgument);
}

TEST_CASE("universality filter maps x onto y") {
  Rng rng(6);
  int built = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = generate_erdos_renyi(12, 0.3, rng);
    const SpectralBasis b = spectral_basis(g);
    const Signal x = gaussian(12, 3, rng);
    const Signal y = gaussian(12, 5, rng);
    const FilterTensor theta = universality_filter(x, y, b);
    const double scale = std::max(1.0, max_abs(y));
    CHECK(max_abs(mimo_gc(theta, x, b) - y) <= 1e-8 * scale);
    ++built;
  }
  CHECK(built == 10);
}

TEST_CASE("universality filter refuses a missing spectral component") {
  const SpectralBasis b = spectral_basis(path_graph(4));
  // x equal to one eigenvector has no energy in the others.
  const Signal x = b.vectors.col(1);
  CHECK_THROWS_AS(universality_filter(x, Signal::Ones(4, 1), b), NumericError);
}

TEST_CASE("polynomial filters as mimo filters") {
  Rng rng(7);
  const Graph g = generate_erdos_renyi(10, 0.4, rng);
  const SpectralBasis b = spectral_basis(g);
  const DenseMatrix a = normalized_adjacency(g);
  const Signal x = gaussian(10, 3, rng);

  SUBCASE("degree zero is a plain linear map") {
    const std::vector<DenseMatrix> v{gaussian(3, 2, rng)};
    CHECK(max_abs(mimo_polynomial(a, x, v) - x * v[0]) < 1e-12);
    CHECK(max_abs(mimo_gc(polynomial_as_mimo_filter(v, b), x, b) - x * v[0]) < 1e-10);
  }
  SUBCASE("degree one") {
    const std::vector<DenseMatrix> v{gaussian(3, 2, rng), gaussian(3, 2, rng)};
    const Signal expected = x * v[0] + a * x * v[1];
    CHECK(max_abs(mimo_polynomial(a, x, v) - expected) < 1e-12);
    CHECK(max_abs(mimo_gc(polynomial_as_mimo_filter(v, b), x, b) - expected) < 1e-10);
  }
  SUBCASE("higher degree") {
    std::vector<DenseMatrix> v;
    for (int k = 0; k < 5; ++k) v.push_back(gaussian(3, 2, rng));
    CHECK(max_abs(mimo_gc(polynomial_as_mimo_filter(v, b), x, b) - mimo_polynomial(a, x, v)) <
          1e-8);
  }
  SUBCASE("gcn") {
    const DenseMatrix v = gaussian(3, 2, rng);
    const FilterTensor theta = gcn_as_mimo_filter(v, b);
    CHECK(max_abs(mimo_gc(theta, x, b) - a * x * v) < 1e-10);
    const WeightStack w = weight_stack_from_filter(theta, b);
    const Vector mu = adjacency_eigenvalues(b);
    for (std::size_t k = 0; k < w.size(); ++k) {
      CHECK(max_abs(w[k] - mu[static_cast<Eigen::Index>(k)] * v) < 1e-10);
    }
  }
  SUBCASE("chebyshev") {
    std::vector<DenseMatrix> v;
    for (int k = 0; k < 4; ++k) v.push_back(gaussian(3, 2, rng));
    // T_k(L - I) = T_k(-A_sym): T_0 = I, T_1 = -A, T_2 = 2A^2 - I, T_3 = -4A^3 + 3A.
    const DenseMatrix id = DenseMatrix::Identity(10, 10);
    const DenseMatrix a2 = a * a;
    const Signal expected = x * v[0] - a * x * v[1] + (2.0 * a2 - id) * x * v[2] +
                            (-4.0 * a2 * a + 3.0 * a) * x * v[3];
    CHECK(max_abs(mimo_gc(chebyshev_as_mimo_filter(v, b), x, b) - expected) < 1e-8);
  }
  CHECK_THROWS_AS(polynomial_as_mimo_filter({}, b), InvalidArgument);
}

TEST_CASE("spectral responses") {
  Rng rng(8);
  const Graph g = generate_erdos_renyi(12, 0.3, rng);
  const SpectralBasis b = spectral_basis(g);

  SUBCASE("gcn response is a line through the origin in mu") {
    DenseMatrix v(1, 1);
    v << 0.7;
    const FilterTensor theta = gcn_as_mimo_filter(v, b);
    const SpectralResponse r = filter_response(weight_stack_from_filter(theta, b), b, 0, 0);
    for (Eigen::Index k = 0; k < r.response.size(); ++k) {
      CHECK(r.response[k] == doctest::Approx(0.7 * (1.0 - r.eigenvalues[k])).epsilon(1e-10));
    }
  }
  SUBCASE("identity has a flat response") {
    const SpectralResponse r = filter_response(WeightStack::identity(12, 2), b, 1, 1);
    CHECK(max_abs(r.response - Vector::Ones(12)) == 0.0);
    const SpectralResponse off = filter_response(WeightStack::identity(12, 2), b, 0, 1);
    CHECK(max_abs(off.response) == 0.0);
  }
  SUBCASE("chebyshev response is a degree K polynomial in lambda") {
    std::vector<DenseMatrix> v;
    for (int k = 0; k < 4; ++k) v.push_back(gaussian(1, 1, rng));
    const SpectralResponse r = filter_response(chebyshev_as_mimo_filter(v, b), b, 0, 0);
    // Least squares fit of degree 3 reproduces the samples exactly.
    DenseMatrix vander(12, 4);
    for (Eigen::Index k = 0; k < 12; ++k) {
      for (Eigen::Index p = 0; p < 4; ++p) vander(k, p) = std::pow(r.eigenvalues[k], p);
    }
    const Vector coef = vander.colPivHouseholderQr().solve(r.response);
    CHECK(max_abs(vander * coef - r.response) < 1e-9);
  }
  CHECK_THROWS_AS(filter_response(WeightStack::identity(12, 2), b, 2, 0), InvalidArgument);
}

TEST_CASE("composition multiplies the stacks") {
  Rng rng(9);
  const Graph g = generate_erdos_renyi(8, 0.4, rng);
  const SpectralBasis b = spectral_basis(g);
  std::vector<DenseMatrix> w1;
  std::vector<DenseMatrix> w2;
  for (int k = 0; k < 8; ++k) {
    w1.push_back(gaussian(3, 4, rng));
    w2.push_back(gaussian(4, 2, rng));
  }
  const WeightStack s1(w1);
  const WeightStack s2(w2);
  const Signal x = gaussian(8, 3, rng);
  CHECK(max_abs(mimo_gc(compose(s1, s2), x, b) - mimo_gc(s2, mimo_gc(s1, x, b), b)) < 1e-9);
  CHECK_THROWS_AS(compose(s2, s1), InvalidArgument);
}

TEST_CASE("dominance of repeated gcn filters") {
  SUBCASE("ratio") {
    Vector r(4);
    r << 0.5, -2.0, 1.0, 0.1;
    const DominanceRatio d = dominance_ratio(r);
    CHECK(d.ratio == doctest::Approx(2.0));
    CHECK_FALSE(d.degenerate);
    CHECK(dominance_ratio(Vector::Zero(3)).degenerate);
    Vector tie(3);
    tie << 1.0, -1.0, 0.5;
    CHECK(dominance_ratio(tie).degenerate);
  }
  SUBCASE("ratio grows as a power of the top two mu") {
    Rng rng(10);
    const Graph g = generate_erdos_renyi(12, 0.3, rng);
    const SpectralBasis b = spectral_basis(g);
    Vector mu = adjacency_eigenvalues(b).cwiseAbs();
    std::sort(mu.data(), mu.data() + mu.size(), std::greater<>());
    // mu = 1 always; the second largest magnitude sets the rate.
    CHECK(mu[0] == doctest::Approx(1.0).epsilon(1e-10));
    const std::vector<double> one{0.9};
    const RepeatedGcnResponse r1 = sca_repeated_gcn(one, b);
    if (!r1.dominance.degenerate) {
      const std::vector<double> weights(6, 0.9);
      const RepeatedGcnResponse r6 = sca_repeated_gcn(weights, b);
      CHECK(r6.dominance.ratio ==
            doctest::Approx(std::pow(r1.dominance.ratio, 6)).epsilon(1e-8));
      CHECK(r6.dominance.ratio > r1.dominance.ratio);
    }
  }
  SUBCASE("bipartite graphs tie") {
    const SpectralBasis b = spectral_basis(path_graph(4));
    const std::vector<double> weights(3, 1.0);
    CHECK(sca_repeated_gcn(weights, b).dominance.degenerate);
  }
}
