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
#include <string>
#include <vector>

#include "mimogc/graph.hpp"
#include "mimogc/lmgc.hpp"
#include "mimogc/rng.hpp"

namespace mimogc {

/// Half-width of the integer lattice behind the feature pool; points are
/// integer vectors in [-5, 5]^d, scaled by 1/3, with the origin left out.
inline constexpr int kLatticeRadius = 5;
inline constexpr double kLatticeScale = 1.0 / 3.0;

using LatticePoint = std::vector<int>;

/// A center feature and a multiset of neighbor features, all pool members.
/// `neighbors` is kept sorted so equal multisets compare equal.
struct MultisetInstance {
  LatticePoint center;
  std::vector<LatticePoint> neighbors;

  bool operator==(const MultisetInstance&) const = default;
};

Vector lattice_feature(const LatticePoint& point);
LatticePoint random_lattice_point(std::size_t d, Rng& rng);
MultisetInstance random_instance(std::size_t d, std::size_t max_size, Rng& rng);

/// True when the neighbor multisets have the same support and proportional
/// multiplicities, X_1 = c X_2 for a rational c (e.g. {{x, x}} and
/// {{x, x, x}}). Outputs of such pairs are parallel for any coefficients.
bool multiplicities_proportional(const MultisetInstance& a,
                                 const MultisetInstance& b);

enum class CoefficientSource { kRandomIid, kFagcnTanh, kLmgcEq14, kGatv2Softmax };

std::string to_string(CoefficientSource source);

/// Random model for the aggregation f(x_p, X_p) = sum_{x in X_p} W_(p,x) x.
///
/// kRandomIid draws alpha_(k)(x_p, x) as standard normals keyed on the lattice
/// coordinates of the pair, so equal pairs always get equal coefficients.
/// The other sources place the instance on a star graph (center joined to one
/// leaf per multiset element) and read coefficients from compute_coefficients;
/// for FAGCN that normalizes by 1/sqrt(|X_p|).
class MultisetAggregator {
 public:
  MultisetAggregator(CoefficientSource source, std::size_t heads, std::size_t d,
                     std::size_t c, std::uint64_t seed);

  Vector operator()(const MultisetInstance& instance) const;

  std::size_t heads() const noexcept { return stack_.size(); }
  const WeightStack& stack() const noexcept { return stack_; }

 private:
  double keyed_coefficient(std::size_t k, const LatticePoint& center,
                           const LatticePoint& neighbor) const;

  CoefficientSource source_;
  WeightStack stack_;
  CoefficientScheme scheme_;
  std::uint64_t key_;
};

struct TrialReport {
  std::string kind;
  std::size_t heads = 0;
  std::size_t d = 0;
  std::size_t c = 0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Pairs drawn but skipped as a documented degenerate family.
  std::size_t excluded = 0;
  /// Injectivity: min ||f(A) - f(B)|| / scale. Independence: min
  /// sigma_min / sigma_max. Oracle checks: max abs difference.
  double metric = 0.0;
};

inline constexpr double kCollisionThreshold = 1e-9;
inline constexpr double kParallelThreshold = 1e-9;
inline constexpr std::size_t kPairsPerChunk = 256;

/// Draws `num_pairs` distinct instance pairs (mostly small edits of each
/// other: changed center, added, removed, replaced or duplicated elements)
/// and counts pairs whose outputs agree within 1e-9 * max output norm.
/// FAGCN forces K = 1. Pairs are generated in chunks of kPairsPerChunk, each
/// with its own derived stream, so `jobs` does not change the result.
TrialReport injectivity_trial(std::size_t num_pairs, std::size_t heads,
                              std::size_t d, std::size_t c, std::uint64_t seed,
                              CoefficientSource source = CoefficientSource::kRandomIid,
                              std::size_t jobs = 1);

/// |f(x, {{v}}) - f(x, {{v, v}})| relative to the larger norm, for a random
/// center and element. Zero up to rounding for softmax attention.
double multiplicity_gap(CoefficientSource source, std::size_t heads,
                        std::size_t d, std::size_t c, std::uint64_t seed);

/// sigma_min / sigma_max of the 2 x c matrix stacking the two outputs.
double parallel_ratio(const Vector& a, const Vector& b);

/// Draws pairs with K > 1 keyed coefficients, skips proportional multisets,
/// and counts pairs whose outputs are parallel (ratio < 1e-9). Skipped pairs
/// are replaced, so `num_pairs` pairs are always checked. Throws
/// InvalidArgument for K < 2.
TrialReport independence_trial(std::size_t num_pairs, std::size_t heads,
                               std::size_t d, std::size_t c, std::uint64_t seed,
                               std::size_t jobs = 1);

/// parallel_ratio for X_1 = 2 X_2 (every multiplicity doubled), same center.
double doubled_multiset_ratio(std::size_t heads, std::size_t d, std::size_t c,
                              std::uint64_t seed);

/// K = 1 control: f(x, {{v}}) against f(x', {{2 v}}). Both outputs lie on
/// the line through W^T v, so the ratio is zero up to rounding.
double single_graph_parallel_ratio(std::size_t d, std::size_t c,
                                   std::uint64_t seed);

struct DominanceRow {
  std::size_t trial = 0;
  std::size_t depth = 0;
  double ratio = 0.0;
  /// r(1)^depth.
  double closed_form = 0.0;
  double relative_error = 0.0;
  /// max_j |response_j - prod_i w_i mu_j^depth| over the spectrum,
  /// relative to the largest closed-form magnitude, with the response read
  /// back from the composed MIMO weight stack.
  double response_error = 0.0;
  bool degenerate = false;
};

/// Random connected graphs (n = 12, p = 0.3) and random GCN weights; for
/// each depth, the dominance ratio of the repeated-GCN response.
std::vector<DominanceRow> sca_dominance_report(std::span<const std::size_t> depths,
                                               std::size_t trials,
                                               std::uint64_t seed);

/// Max over pairs of channels of the gap between unit-normalized
/// filter_response curves of the GCN-form stack W^(k) = mu_k V. Zero when
/// every channel pair shares the amplification profile.
double shared_amplification_gap(const Graph& g, const DenseMatrix& v);

/// Random instances (n <= 20, d, c <= 8) comparing mimo_gc with the pairwise
/// form, the channel-pair oracle and the Kronecker oracle. `metric` is the
/// max abs difference; violations are instances above `tolerance`.
TrialReport equivalence_trial(std::size_t instances, std::uint64_t seed,
                              double tolerance = 1e-9);

/// Random X, Y (n = d = c by default) with min |U^T X| > 1e-3; `metric` is
/// the max relative residual ||Theta * X - Y||_F / ||Y||_F.
TrialReport universality_filter_trial(std::size_t instances, std::size_t n,
                                      std::uint64_t seed, double tolerance = 1e-8);

/// MIMO polynomials of degree K <= 3 against their MIMO-GC form; `metric` is
/// the max abs difference.
TrialReport polynomial_trial(std::size_t instances, std::uint64_t seed,
                             double tolerance = 1e-8);

/// The GCN A_sym X V against its MIMO-GC form.
TrialReport gcn_trial(std::size_t instances, std::uint64_t seed,
                      double tolerance = 1e-10);

}  // namespace mimogc
