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

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "mimogc/errors.hpp"
#include "mimogc/spectral.hpp"

using namespace mimogc;
using namespace mimogc::testing;

TEST_CASE("identity decomposes into the standard basis") {
  const SpectralBasis b = eigendecompose_symmetric(DenseMatrix::Identity(3, 3));
  CHECK(max_abs(b.eigenvalues - Vector::Ones(3)) < 1e-15);
  CHECK(max_abs(b.vectors - DenseMatrix::Identity(3, 3)) < 1e-15);
}

TEST_CASE("laplacian of a two node path") {
  const SpectralBasis b = spectral_basis(path_graph(2));
  CHECK(b.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  const double s = 1.0 / std::numbers::sqrt2;
  // First nonzero component positive.
  CHECK(b.vectors(0, 0) == doctest::Approx(s));
  CHECK(b.vectors(1, 0) == doctest::Approx(s));
  CHECK(b.vectors(0, 1) == doctest::Approx(s));
  CHECK(b.vectors(1, 1) == doctest::Approx(-s));
}

TEST_CASE("triangle spectrum") {
  const SpectralBasis b = spectral_basis(triangle());
  CHECK(b.eigenvalues[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(b.eigenvalues[1] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(b.eigenvalues[2] == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("fourier basis on random graphs") {
  Rng rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    const Graph g = generate_erdos_renyi(14, 0.3, rng);
    const SpectralBasis b = spectral_basis(g);
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    const DenseMatrix& u = b.vectors;

    CHECK(max_abs(u.transpose() * u - DenseMatrix::Identity(n, n)) < 1e-10);
    CHECK(max_abs(u * b.eigenvalues.asDiagonal() * u.transpose() - laplacian(g)) < 1e-10);
    for (Eigen::Index k = 1; k < n; ++k) CHECK(b.eigenvalues[k] >= b.eigenvalues[k - 1]);
    CHECK(std::abs(b.eigenvalues[0]) < 1e-10);
    CHECK(b.eigenvalues[n - 1] <= 2.0 + 1e-10);

    // D^{1/2} 1 spans the null space of a connected graph.
    Vector root_deg(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      root_deg[i] = std::sqrt(static_cast<double>(g.degree(static_cast<std::size_t>(i))));
    }
    root_deg.normalize();
    CHECK(max_abs(u.col(0) - root_deg) < 1e-9);

    const Signal x = gaussian(n, 3, rng);
    const Signal x_hat = graph_fourier(b, x);
    CHECK(max_abs(inverse_fourier(b, x_hat) - x) < 1e-10);
    CHECK(x_hat.squaredNorm() == doctest::Approx(x.squaredNorm()).epsilon(1e-10));

    DenseMatrix sum = DenseMatrix::Zero(n, n);
    for (std::size_t k = 0; k < b.size(); ++k) sum += rank_one_graph(b, k);
    CHECK(max_abs(sum - DenseMatrix::Identity(n, n)) < 1e-10);

    const Vector mu = adjacency_eigenvalues(b);
    CHECK(max_abs(u * mu.asDiagonal() * u.transpose() - normalized_adjacency(g)) < 1e-10);
  }
}

TEST_CASE("rank one graph of the path") {
  const SpectralBasis b = spectral_basis(path_graph(2));
  const DenseMatrix a0 = rank_one_graph(b, 0);
  CHECK(max_abs(a0 - DenseMatrix::Constant(2, 2, 0.5)) < 1e-12);
  CHECK_THROWS_AS(rank_one_graph(b, 2), InvalidArgument);
}

TEST_CASE("eigengap and fingerprint") {
  const SpectralBasis b = spectral_basis(triangle());
  CHECK(min_eigengap(b) < 1e-10);
  const SpectralBasis p = spectral_basis(path_graph(3));
  CHECK(min_eigengap(p) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(b.id != p.id);
  CHECK(spectral_basis(triangle()).id == b.id);
}

TEST_CASE("eigendecomposition rejects bad input") {
  DenseMatrix m(2, 2);
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS(eigendecompose_symmetric(m), InvalidArgument);
  CHECK_THROWS_AS(eigendecompose_symmetric(DenseMatrix::Zero(2, 3)), InvalidArgument);
}
