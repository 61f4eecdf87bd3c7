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
#include <span>
#include <vector>

#include "mimogc/spectral.hpp"

namespace mimogc {

/// The general MIMO filter, an n x c x d tensor. Stored node-major as n
/// slices of shape c x d so the Fourier transform along the node axis walks
/// whole slices.
class FilterTensor {
 public:
  FilterTensor() = default;
  /// Zero filter.
  FilterTensor(std::size_t n, std::size_t out_channels, std::size_t in_channels,
               std::uint64_t basis_id);
  /// slices[i] is Theta_{i,:,:}, all of the same c x d shape.
  FilterTensor(std::vector<DenseMatrix> slices, std::uint64_t basis_id);

  std::size_t nodes() const noexcept { return slices_.size(); }
  std::size_t out_channels() const noexcept { return c_; }
  std::size_t in_channels() const noexcept { return d_; }
  std::uint64_t basis_id() const noexcept { return basis_id_; }

  const DenseMatrix& slice(std::size_t i) const { return slices_.at(i); }
  DenseMatrix& slice(std::size_t i) { return slices_.at(i); }
  double operator()(std::size_t i, std::size_t q, std::size_t p) const {
    return slices_[i](static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p));
  }
  /// The SISO filter Theta_{:,q,p} between input channel p and output q.
  Vector fiber(std::size_t q, std::size_t p) const;

 private:
  std::vector<DenseMatrix> slices_;
  std::size_t c_ = 0;
  std::size_t d_ = 0;
  std::uint64_t basis_id_ = 0;
};

/// Ordered list of d x c feature transformations W^(k).
class WeightStack {
 public:
  WeightStack() = default;
  explicit WeightStack(std::vector<DenseMatrix> matrices);

  static WeightStack zeros(std::size_t count, std::size_t in_channels,
                           std::size_t out_channels);
  static WeightStack identity(std::size_t count, std::size_t channels);

  std::size_t size() const noexcept { return matrices_.size(); }
  std::size_t in_channels() const noexcept { return d_; }
  std::size_t out_channels() const noexcept { return c_; }
  const DenseMatrix& operator[](std::size_t k) const { return matrices_[k]; }
  const std::vector<DenseMatrix>& matrices() const noexcept { return matrices_; }
  auto begin() const { return matrices_.begin(); }
  auto end() const { return matrices_.end(); }

 private:
  std::vector<DenseMatrix> matrices_;
  std::size_t d_ = 0;
  std::size_t c_ = 0;
};

/// A filter sampled at every spectral component for one channel pair.
struct SpectralResponse {
  Vector eigenvalues;  // lambda_k of L_sym
  Vector response;
};

/// W^(k) = (F(Theta)_{k,:,:})^T for every component k.
WeightStack weight_stack_from_filter(const FilterTensor& theta,
                                     const SpectralBasis& basis);
/// Inverse of weight_stack_from_filter: Theta_i = sum_k U_{i,k} W^(k)^T.
FilterTensor filter_from_weight_stack(const WeightStack& stack,
                                      const SpectralBasis& basis);

/// U diag(U^T theta) U^T x.
Vector siso_gc(const Vector& theta, const Vector& x, const SpectralBasis& basis);

/// sum_k A^(k) X W^(k) with rank-one computational graphs
/// A^(k) = U_{:,k} U_{:,k}^T. Each term is formed as U_{:,k} ((U_{:,k}^T X) W^(k))
/// and the terms are accumulated in component order.
Signal mimo_gc(const FilterTensor& theta, const Signal& x,
               const SpectralBasis& basis);
Signal mimo_gc(const WeightStack& stack, const Signal& x,
               const SpectralBasis& basis);

/// Channel-pair reference: X'_{:,q} = sum_p siso_gc(Theta_{:,q,p}, X_{:,p}).
Signal mimo_gc_oracle(const FilterTensor& theta, const Signal& x,
                      const SpectralBasis& basis);

/// Node form: row i is sum_j W_(i,j) X_{j,:}.
Signal mimo_gc_pairwise(const WeightStack& stack, const Signal& x,
                        const SpectralBasis& basis);

/// Vectorized reference that materializes the (n c) x (n d) operator
/// (I_c (x) U) D (I_d (x) U^T) with D the block matrix of diagonal blocks
/// diag(F(Theta)_{:,q,p}), and applies it to vec(X). O(n^2 c d) memory; meant
/// for small verification instances.
Signal mimo_gc_kronecker(const FilterTensor& theta, const Signal& x,
                         const SpectralBasis& basis);

/// W_(i,j) = (sum_k U_{i,k} U_{j,k} W^(k))^T, a c x d matrix.
DenseMatrix pairwise_weight(const WeightStack& stack, const SpectralBasis& basis,
                            std::size_t i, std::size_t j);

/// Filter whose convolution maps `x` onto `y`. Requires every entry of U^T X
/// to exceed `min_component` in magnitude; throws NumericError otherwise.
FilterTensor universality_filter(const Signal& x, const Signal& y,
                                 const SpectralBasis& basis,
                                 double min_component = 1e-9);

/// sum_{k=0}^{K} A_sym^k X V^(k).
Signal mimo_polynomial(const DenseMatrix& a_sym, const Signal& x,
                       std::span<const DenseMatrix> v_list);

/// W^(j) = sum_k mu_j^k V^(k), mu the A_sym spectrum of the basis.
WeightStack polynomial_as_mimo_filter(std::span<const DenseMatrix> v_list,
                                      const SpectralBasis& basis);

/// The GCN A_sym X V as a MIMO filter (W^(k) = mu_k V).
FilterTensor gcn_as_mimo_filter(const DenseMatrix& v, const SpectralBasis& basis);

/// W^(j) = sum_k T_k(lambda_j - 1) V^(k), Chebyshev polynomials on the
/// rescaled Laplacian spectrum.
WeightStack chebyshev_as_mimo_filter(std::span<const DenseMatrix> v_list,
                                     const SpectralBasis& basis);

/// Stack of applying `first` and then `second`: W^(k) = W1^(k) W2^(k).
WeightStack compose(const WeightStack& first, const WeightStack& second);

/// (W^(k))_{in,out} against lambda_k.
SpectralResponse filter_response(const WeightStack& stack,
                                 const SpectralBasis& basis,
                                 std::size_t in_channel,
                                 std::size_t out_channel);

struct DominanceRatio {
  double ratio = 1.0;
  /// The two largest magnitudes tie (or everything is zero).
  bool degenerate = false;
};

/// Largest |response| over the second largest.
DominanceRatio dominance_ratio(const Vector& response);

struct RepeatedGcnResponse {
  SpectralResponse response;
  DominanceRatio dominance;
};

/// response_j = prod_i (w_i mu_j) for k stacked SISO GCN filters.
RepeatedGcnResponse sca_repeated_gcn(std::span<const double> weights,
                                     const SpectralBasis& basis);

}  // namespace mimogc
