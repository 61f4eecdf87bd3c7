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

#include "mimogc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <vector>

#include "mimogc/errors.hpp"

namespace mimogc {

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

// Applies the rotation that annihilates a(p, q) to both a and the
// accumulated eigenvectors v.
void rotate(DenseMatrix& a, DenseMatrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

std::uint64_t fingerprint(const Vector& eigenvalues,
                          const DenseMatrix& vectors) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  auto mix = [&hash](double value) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &value, sizeof bits);
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (bits >> (8 * byte)) & 0xFFU;
      hash *= 0x100000001B3ULL;
    }
  };
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) mix(eigenvalues[i]);
  for (Eigen::Index i = 0; i < vectors.size(); ++i) mix(vectors.data()[i]);
  return hash;
}

SpectralBasis eigendecompose_symmetric(const DenseMatrix& m,
                                       const JacobiOptions& options) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("eigendecomposition needs a square matrix");
  }
  if (!m.allFinite()) throw InvalidArgument("matrix has non-finite entries");
  if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() >
                          options.symmetry_tolerance) {
    throw InvalidArgument("matrix is not symmetric");
  }
  const Eigen::Index n = m.rows();
  DenseMatrix a = 0.5 * (m + m.transpose());
  DenseMatrix v = DenseMatrix::Identity(n, n);
  const double scale = a.norm();
  const double threshold = options.tolerance * (scale > 0.0 ? scale : 1.0);

  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) {
    throw NumericError("jacobi eigendecomposition did not converge in " +
                       std::to_string(options.max_sweeps) + " sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index x, Eigen::Index y) {
                     return a(x, x) < a(y, y);
                   });

  SpectralBasis basis;
  basis.eigenvalues.resize(n);
  basis.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    basis.eigenvalues[k] = a(src, src);
    Vector column = v.col(src);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(column[i]) > 1e-10) {
        if (column[i] < 0.0) column = -column;
        break;
      }
    }
    basis.vectors.col(k) = column;
  }
  basis.id = fingerprint(basis.eigenvalues, basis.vectors);
  return basis;
}

SpectralBasis spectral_basis(const Graph& g) {
  return eigendecompose_symmetric(laplacian(g));
}

Signal graph_fourier(const SpectralBasis& basis, const Signal& x) {
  if (x.rows() != basis.vectors.rows()) {
    throw InvalidArgument("graph_fourier: signal has " +
                          std::to_string(x.rows()) + " rows, basis has " +
                          std::to_string(basis.vectors.rows()));
  }
  return basis.vectors.transpose() * x;
}

Signal inverse_fourier(const SpectralBasis& basis, const Signal& x_hat) {
  if (x_hat.rows() != basis.vectors.cols()) {
    throw InvalidArgument("inverse_fourier: dimension mismatch");
  }
  return basis.vectors * x_hat;
}

DenseMatrix rank_one_graph(const SpectralBasis& basis, std::size_t k) {
  if (k >= basis.size()) {
    throw InvalidArgument("rank_one_graph: component " + std::to_string(k) +
                          " out of range");
  }
  const auto column = basis.vectors.col(static_cast<Eigen::Index>(k));
  return column * column.transpose();
}

Vector adjacency_eigenvalues(const SpectralBasis& basis) {
  return Vector::Ones(basis.eigenvalues.size()) - basis.eigenvalues;
}

double min_eigengap(const SpectralBasis& basis) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 1; k < basis.eigenvalues.size(); ++k) {
    gap = std::min(gap, basis.eigenvalues[k] - basis.eigenvalues[k - 1]);
  }
  return gap;
}

}  // namespace mimogc
