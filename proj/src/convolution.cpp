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

#include "mimogc/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "mimogc/errors.hpp"

namespace mimogc {

namespace {

void require_basis(std::uint64_t filter_id, const SpectralBasis& basis) {
  if (filter_id != basis.id) {
    throw InvalidArgument("filter was built against a different spectral basis");
  }
}

void require_nodes(std::size_t n, const SpectralBasis& basis, const char* what) {
  if (n != basis.size()) {
    throw InvalidArgument(std::string(what) + ": expected " +
                          std::to_string(basis.size()) + " nodes, got " +
                          std::to_string(n));
  }
}

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

FilterTensor::FilterTensor(std::size_t n, std::size_t out_channels,
                           std::size_t in_channels, std::uint64_t basis_id)
    : slices_(n, DenseMatrix::Zero(idx(out_channels), idx(in_channels))),
      c_(out_channels),
      d_(in_channels),
      basis_id_(basis_id) {}

FilterTensor::FilterTensor(std::vector<DenseMatrix> slices,
                           std::uint64_t basis_id)
    : slices_(std::move(slices)), basis_id_(basis_id) {
  if (slices_.empty()) return;
  c_ = static_cast<std::size_t>(slices_.front().rows());
  d_ = static_cast<std::size_t>(slices_.front().cols());
  for (const DenseMatrix& s : slices_) {
    if (static_cast<std::size_t>(s.rows()) != c_ ||
        static_cast<std::size_t>(s.cols()) != d_) {
      throw InvalidArgument("filter slices must share one c x d shape");
    }
    if (!s.allFinite()) throw InvalidArgument("filter has non-finite entries");
  }
}

Vector FilterTensor::fiber(std::size_t q, std::size_t p) const {
  if (q >= c_ || p >= d_) throw InvalidArgument("fiber: channel out of range");
  Vector out(idx(nodes()));
  for (std::size_t i = 0; i < nodes(); ++i) out[idx(i)] = (*this)(i, q, p);
  return out;
}

WeightStack::WeightStack(std::vector<DenseMatrix> matrices)
    : matrices_(std::move(matrices)) {
  if (matrices_.empty()) return;
  d_ = static_cast<std::size_t>(matrices_.front().rows());
  c_ = static_cast<std::size_t>(matrices_.front().cols());
  for (const DenseMatrix& w : matrices_) {
    if (static_cast<std::size_t>(w.rows()) != d_ ||
        static_cast<std::size_t>(w.cols()) != c_) {
      throw InvalidArgument("weight stack matrices must share one d x c shape");
    }
    if (!w.allFinite()) {
      throw InvalidArgument("weight stack has non-finite entries");
    }
  }
}

WeightStack WeightStack::zeros(std::size_t count, std::size_t in_channels,
                               std::size_t out_channels) {
  return WeightStack(std::vector<DenseMatrix>(
      count, DenseMatrix::Zero(idx(in_channels), idx(out_channels))));
}

WeightStack WeightStack::identity(std::size_t count, std::size_t channels) {
  return WeightStack(std::vector<DenseMatrix>(
      count, DenseMatrix::Identity(idx(channels), idx(channels))));
}

WeightStack weight_stack_from_filter(const FilterTensor& theta,
                                     const SpectralBasis& basis) {
  require_basis(theta.basis_id(), basis);
  require_nodes(theta.nodes(), basis, "weight_stack_from_filter");
  const std::size_t n = theta.nodes();
  std::vector<DenseMatrix> stack;
  stack.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    DenseMatrix hat =
        DenseMatrix::Zero(idx(theta.out_channels()), idx(theta.in_channels()));
    for (std::size_t i = 0; i < n; ++i) {
      hat += basis.vectors(idx(i), idx(k)) * theta.slice(i);
    }
    stack.push_back(hat.transpose());
  }
  return WeightStack(std::move(stack));
}

FilterTensor filter_from_weight_stack(const WeightStack& stack,
                                      const SpectralBasis& basis) {
  require_nodes(stack.size(), basis, "filter_from_weight_stack");
  const std::size_t n = stack.size();
  std::vector<DenseMatrix> slices;
  slices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    DenseMatrix slice =
        DenseMatrix::Zero(idx(stack.out_channels()), idx(stack.in_channels()));
    for (std::size_t k = 0; k < n; ++k) {
      slice += basis.vectors(idx(i), idx(k)) * stack[k].transpose();
    }
    slices.push_back(std::move(slice));
  }
  return FilterTensor(std::move(slices), basis.id);
}

Vector siso_gc(const Vector& theta, const Vector& x, const SpectralBasis& basis) {
  require_nodes(static_cast<std::size_t>(theta.size()), basis, "siso_gc theta");
  require_nodes(static_cast<std::size_t>(x.size()), basis, "siso_gc signal");
  const DenseMatrix& u = basis.vectors;
  const Vector w = u.transpose() * theta;
  const Vector x_hat = u.transpose() * x;
  return u * w.cwiseProduct(x_hat);
}

Signal mimo_gc(const WeightStack& stack, const Signal& x,
               const SpectralBasis& basis) {
  require_nodes(stack.size(), basis, "mimo_gc stack");
  require_nodes(static_cast<std::size_t>(x.rows()), basis, "mimo_gc signal");
  if (static_cast<std::size_t>(x.cols()) != stack.in_channels()) {
    throw InvalidArgument("mimo_gc: signal has " + std::to_string(x.cols()) +
                          " channels, filter expects " +
                          std::to_string(stack.in_channels()));
  }
  Signal out = Signal::Zero(x.rows(), idx(stack.out_channels()));
  for (std::size_t k = 0; k < stack.size(); ++k) {
    const auto u_k = basis.vectors.col(idx(k));
    const Eigen::RowVectorXd component = (u_k.transpose() * x) * stack[k];
    out.noalias() += u_k * component;
  }
  return out;
}

Signal mimo_gc(const FilterTensor& theta, const Signal& x,
               const SpectralBasis& basis) {
  return mimo_gc(weight_stack_from_filter(theta, basis), x, basis);
}

Signal mimo_gc_oracle(const FilterTensor& theta, const Signal& x,
                      const SpectralBasis& basis) {
  require_basis(theta.basis_id(), basis);
  require_nodes(theta.nodes(), basis, "mimo_gc_oracle");
  if (static_cast<std::size_t>(x.cols()) != theta.in_channels() ||
      static_cast<std::size_t>(x.rows()) != theta.nodes()) {
    throw InvalidArgument("mimo_gc_oracle: signal shape mismatch");
  }
  Signal out = Signal::Zero(x.rows(), idx(theta.out_channels()));
  for (std::size_t q = 0; q < theta.out_channels(); ++q) {
    for (std::size_t p = 0; p < theta.in_channels(); ++p) {
      out.col(idx(q)) += siso_gc(theta.fiber(q, p), x.col(idx(p)), basis);
    }
  }
  return out;
}

DenseMatrix pairwise_weight(const WeightStack& stack, const SpectralBasis& basis,
                            std::size_t i, std::size_t j) {
  require_nodes(stack.size(), basis, "pairwise_weight");
  if (i >= basis.size() || j >= basis.size()) {
    throw InvalidArgument("pairwise_weight: node index out of range");
  }
  DenseMatrix sum =
      DenseMatrix::Zero(idx(stack.in_channels()), idx(stack.out_channels()));
  for (std::size_t k = 0; k < stack.size(); ++k) {
    sum += basis.vectors(idx(i), idx(k)) * basis.vectors(idx(j), idx(k)) *
           stack[k];
  }
  return sum.transpose();
}

Signal mimo_gc_pairwise(const WeightStack& stack, const Signal& x,
                        const SpectralBasis& basis) {
  require_nodes(static_cast<std::size_t>(x.rows()), basis, "mimo_gc_pairwise");
  if (static_cast<std::size_t>(x.cols()) != stack.in_channels()) {
    throw InvalidArgument("mimo_gc_pairwise: channel mismatch");
  }
  const std::size_t n = basis.size();
  Signal out = Signal::Zero(idx(n), idx(stack.out_channels()));
  for (std::size_t i = 0; i < n; ++i) {
    Vector row = Vector::Zero(idx(stack.out_channels()));
    for (std::size_t j = 0; j < n; ++j) {
      row += pairwise_weight(stack, basis, i, j) * x.row(idx(j)).transpose();
    }
    out.row(idx(i)) = row.transpose();
  }
  return out;
}

Signal mimo_gc_kronecker(const FilterTensor& theta, const Signal& x,
                         const SpectralBasis& basis) {
  require_basis(theta.basis_id(), basis);
  require_nodes(theta.nodes(), basis, "mimo_gc_kronecker");
  if (static_cast<std::size_t>(x.cols()) != theta.in_channels() ||
      static_cast<std::size_t>(x.rows()) != theta.nodes()) {
    throw InvalidArgument("mimo_gc_kronecker: signal shape mismatch");
  }
  const Eigen::Index n = idx(theta.nodes());
  const Eigen::Index c = idx(theta.out_channels());
  const Eigen::Index d = idx(theta.in_channels());
  const DenseMatrix& u = basis.vectors;

  // F(Theta) = U^T x_1 Theta, one n-vector per channel pair.
  DenseMatrix block_diag = DenseMatrix::Zero(n * c, n * d);
  for (Eigen::Index q = 0; q < c; ++q) {
    for (Eigen::Index p = 0; p < d; ++p) {
      const Vector hat = u.transpose() *
                         theta.fiber(static_cast<std::size_t>(q),
                                     static_cast<std::size_t>(p));
      for (Eigen::Index k = 0; k < n; ++k) {
        block_diag(q * n + k, p * n + k) = hat[k];
      }
    }
  }
  const DenseMatrix left =
      Eigen::kroneckerProduct(DenseMatrix::Identity(c, c), u);
  const DenseMatrix right =
      Eigen::kroneckerProduct(DenseMatrix::Identity(d, d), u.transpose());
  const Vector vec_x = Eigen::Map<const Vector>(x.data(), x.size());
  const Vector vec_y = left * (block_diag * (right * vec_x));
  return Eigen::Map<const DenseMatrix>(vec_y.data(), n, c);
}

FilterTensor universality_filter(const Signal& x, const Signal& y,
                                 const SpectralBasis& basis,
                                 double min_component) {
  require_nodes(static_cast<std::size_t>(x.rows()), basis, "universality_filter x");
  require_nodes(static_cast<std::size_t>(y.rows()), basis, "universality_filter y");
  const DenseMatrix a = graph_fourier(basis, x);
  const DenseMatrix b = graph_fourier(basis, y);
  const double smallest = a.size() > 0 ? a.cwiseAbs().minCoeff() : 0.0;
  if (!(smallest > min_component)) {
    throw NumericError(
        "universality precondition violated: a spectral component of X has "
        "magnitude " + std::to_string(smallest));
  }
  // Row k of U^T Y is reached as a_k W^(k) when every input channel m
  // contributes b_k / d: (W^(k))_{m,q} = b_{k,q} / (d a_{k,m}).
  const double d = static_cast<double>(x.cols());
  std::vector<DenseMatrix> stack;
  stack.reserve(basis.size());
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    DenseMatrix w(a.cols(), b.cols());
    for (Eigen::Index m = 0; m < a.cols(); ++m) {
      for (Eigen::Index q = 0; q < b.cols(); ++q) {
        w(m, q) = b(k, q) / (d * a(k, m));
      }
    }
    stack.push_back(std::move(w));
  }
  return filter_from_weight_stack(WeightStack(std::move(stack)), basis);
}

Signal mimo_polynomial(const DenseMatrix& a_sym, const Signal& x,
                       std::span<const DenseMatrix> v_list) {
  if (v_list.empty()) throw InvalidArgument("mimo_polynomial: empty v_list");
  if (a_sym.rows() != a_sym.cols() || a_sym.rows() != x.rows()) {
    throw InvalidArgument("mimo_polynomial: operator/signal shape mismatch");
  }
  const Eigen::Index c = v_list.front().cols();
  Signal out = Signal::Zero(x.rows(), c);
  Signal power = x;
  for (std::size_t k = 0; k < v_list.size(); ++k) {
    const DenseMatrix& v = v_list[k];
    if (v.rows() != x.cols() || v.cols() != c) {
      throw InvalidArgument("mimo_polynomial: coefficient " + std::to_string(k) +
                            " has the wrong shape");
    }
    if (k > 0) power = a_sym * power;
    out.noalias() += power * v;
  }
  return out;
}

WeightStack polynomial_as_mimo_filter(std::span<const DenseMatrix> v_list,
                                      const SpectralBasis& basis) {
  if (v_list.empty()) {
    throw InvalidArgument("polynomial_as_mimo_filter: empty v_list");
  }
  const Vector mu = adjacency_eigenvalues(basis);
  std::vector<DenseMatrix> stack;
  stack.reserve(basis.size());
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    DenseMatrix w = DenseMatrix::Zero(v_list.front().rows(), v_list.front().cols());
    double power = 1.0;
    for (const DenseMatrix& v : v_list) {
      if (v.rows() != w.rows() || v.cols() != w.cols()) {
        throw InvalidArgument("polynomial_as_mimo_filter: shape mismatch");
      }
      w += power * v;
      power *= mu[j];
    }
    stack.push_back(std::move(w));
  }
  return WeightStack(std::move(stack));
}

FilterTensor gcn_as_mimo_filter(const DenseMatrix& v, const SpectralBasis& basis) {
  const DenseMatrix coefficients[] = {DenseMatrix::Zero(v.rows(), v.cols()), v};
  return filter_from_weight_stack(polynomial_as_mimo_filter(coefficients, basis),
                                  basis);
}

WeightStack chebyshev_as_mimo_filter(std::span<const DenseMatrix> v_list,
                                     const SpectralBasis& basis) {
  if (v_list.empty()) {
    throw InvalidArgument("chebyshev_as_mimo_filter: empty v_list");
  }
  std::vector<DenseMatrix> stack;
  stack.reserve(basis.size());
  for (Eigen::Index j = 0; j < basis.eigenvalues.size(); ++j) {
    const double t = basis.eigenvalues[j] - 1.0;
    DenseMatrix w = DenseMatrix::Zero(v_list.front().rows(), v_list.front().cols());
    double t_prev = 1.0;
    double t_cur = t;
    for (std::size_t k = 0; k < v_list.size(); ++k) {
      double value = 1.0;
      if (k == 1) {
        value = t;
      } else if (k >= 2) {
        value = 2.0 * t * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = value;
      }
      w += value * v_list[k];
    }
    stack.push_back(std::move(w));
  }
  return WeightStack(std::move(stack));
}

WeightStack compose(const WeightStack& first, const WeightStack& second) {
  if (first.size() != second.size() ||
      first.out_channels() != second.in_channels()) {
    throw InvalidArgument("compose: incompatible stacks");
  }
  std::vector<DenseMatrix> stack;
  stack.reserve(first.size());
  for (std::size_t k = 0; k < first.size(); ++k) {
    stack.push_back(first[k] * second[k]);
  }
  return WeightStack(std::move(stack));
}

SpectralResponse filter_response(const WeightStack& stack,
                                 const SpectralBasis& basis,
                                 std::size_t in_channel,
                                 std::size_t out_channel) {
  require_nodes(stack.size(), basis, "filter_response");
  if (in_channel >= stack.in_channels() || out_channel >= stack.out_channels()) {
    throw InvalidArgument("filter_response: channel index out of range");
  }
  SpectralResponse result;
  result.eigenvalues = basis.eigenvalues;
  result.response.resize(idx(stack.size()));
  for (std::size_t k = 0; k < stack.size(); ++k) {
    result.response[idx(k)] = stack[k](idx(in_channel), idx(out_channel));
  }
  return result;
}

DominanceRatio dominance_ratio(const Vector& response) {
  DominanceRatio result;
  if (response.size() < 2) {
    result.degenerate = true;
    return result;
  }
  double top = 0.0;
  double second = 0.0;
  for (Eigen::Index k = 0; k < response.size(); ++k) {
    const double value = std::abs(response[k]);
    if (value > top) {
      second = top;
      top = value;
    } else if (value > second) {
      second = value;
    }
  }
  if (top == 0.0) {
    result.degenerate = true;
    return result;
  }
  if (second == 0.0) {
    result.ratio = std::numeric_limits<double>::infinity();
    return result;
  }
  result.ratio = top / second;
  result.degenerate = top - second <= 1e-10 * top;
  return result;
}

RepeatedGcnResponse sca_repeated_gcn(std::span<const double> weights,
                                     const SpectralBasis& basis) {
  if (weights.empty()) {
    throw InvalidArgument("sca_repeated_gcn: need at least one layer");
  }
  const Vector mu = adjacency_eigenvalues(basis);
  RepeatedGcnResponse result;
  result.response.eigenvalues = basis.eigenvalues;
  result.response.response = Vector::Ones(mu.size());
  for (double w : weights) {
    for (Eigen::Index j = 0; j < mu.size(); ++j) {
      result.response.response[j] *= w * mu[j];
    }
  }
  result.dominance = dominance_ratio(result.response.response);
  return result;
}

}  // namespace mimogc
