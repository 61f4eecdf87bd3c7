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

#include "mimogc/graph.hpp"

namespace mimogc {

/// Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric
/// matrix; column k of `vectors` belongs to `eigenvalues[k]`. When built from
/// L_sym this is the graph Fourier basis, F = vectors^T.
struct SpectralBasis {
  Vector eigenvalues;
  DenseMatrix vectors;
  /// Fingerprint of the contents. Filters record the id of the basis they
  /// were built against so they are never applied in a different basis.
  std::uint64_t id = 0;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(eigenvalues.size());
  }
};

struct JacobiOptions {
  /// Convergence when the off-diagonal Frobenius norm drops below
  /// tolerance * ||m||_F.
  double tolerance = 1e-12;
  int max_sweeps = 100;
  double symmetry_tolerance = 1e-10;
};

/// Cyclic Jacobi eigendecomposition. Eigenvalues are sorted ascending and
/// each eigenvector is signed so that its first component with magnitude
/// above 1e-10 is positive. Throws InvalidArgument for non-square or
/// non-symmetric input and NumericError when the sweep budget runs out.
SpectralBasis eigendecompose_symmetric(const DenseMatrix& m,
                                       const JacobiOptions& options = {});

/// Fourier basis of the graph: eigendecomposition of laplacian(g).
SpectralBasis spectral_basis(const Graph& g);

/// U^T X, channel by channel.
Signal graph_fourier(const SpectralBasis& basis, const Signal& x);
/// U X_hat.
Signal inverse_fourier(const SpectralBasis& basis, const Signal& x_hat);

/// U_{:,k} U_{:,k}^T for the 0-based component index k.
DenseMatrix rank_one_graph(const SpectralBasis& basis, std::size_t k);

/// Eigenvalues of A_sym in basis order, mu_k = 1 - lambda_k. A basis built
/// from L_sym stores lambda; polynomial and GCN filters are expressed in mu.
Vector adjacency_eigenvalues(const SpectralBasis& basis);

/// Smallest gap between consecutive eigenvalues.
double min_eigengap(const SpectralBasis& basis);

std::uint64_t fingerprint(const Vector& eigenvalues, const DenseMatrix& vectors);

}  // namespace mimogc
