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

#include "mimogc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <thread>

#include <Eigen/SVD>

#include "mimogc/convolution.hpp"
#include "mimogc/errors.hpp"
#include "mimogc/spectral.hpp"

namespace mimogc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

DenseMatrix normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

Vector normal_vector(std::size_t size, Rng& rng) {
  return normal_matrix(idx(size), 1, rng).col(0);
}

void normalize(MultisetInstance& instance) {
  std::sort(instance.neighbors.begin(), instance.neighbors.end());
}

// One edit of `a`; returns an instance different from `a`.
MultisetInstance mutate(const MultisetInstance& a, std::size_t d, Rng& rng) {
  while (true) {
    MultisetInstance b = a;
    const std::size_t m = b.neighbors.size();
    switch (rng.below(6)) {
      case 0: b.center = random_lattice_point(d, rng); break;
      case 1: b.neighbors.push_back(random_lattice_point(d, rng)); break;
      case 2:
        if (m > 1) {
          b.neighbors.erase(b.neighbors.begin() + static_cast<std::ptrdiff_t>(rng.below(m)));
        }
        break;
      case 3: b.neighbors[rng.below(m)] = random_lattice_point(d, rng); break;
      case 4: b.neighbors.push_back(b.neighbors[rng.below(m)]); break;
      default: b = random_instance(d, 4, rng); break;
    }
    normalize(b);
    if (!(b == a)) return b;
  }
}

std::map<LatticePoint, std::size_t> multiplicities(const MultisetInstance& x) {
  std::map<LatticePoint, std::size_t> counts;
  for (const LatticePoint& p : x.neighbors) ++counts[p];
  return counts;
}

// Runs `chunk(i, report)` for every chunk and merges with `merge`.
template <typename Chunk, typename Merge>
TrialReport run_chunks(std::size_t num_pairs, std::size_t jobs, TrialReport base,
                       Chunk chunk, Merge merge) {
  const std::size_t chunks = (num_pairs + kPairsPerChunk - 1) / kPairsPerChunk;
  std::vector<TrialReport> parts(chunks, base);
  auto work = [&](std::size_t worker, std::size_t workers) {
    for (std::size_t i = worker; i < chunks; i += workers) {
      const std::size_t begin = i * kPairsPerChunk;
      chunk(i, std::min(kPairsPerChunk, num_pairs - begin), parts[i]);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(chunks, 1));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  for (const TrialReport& part : parts) merge(base, part);
  return base;
}

}  // namespace

Vector lattice_feature(const LatticePoint& point) {
  Vector v(idx(point.size()));
  for (std::size_t i = 0; i < point.size(); ++i) v[idx(i)] = kLatticeScale * point[i];
  return v;
}

LatticePoint random_lattice_point(std::size_t d, Rng& rng) {
  const auto width = static_cast<std::uint64_t>(2 * kLatticeRadius + 1);
  while (true) {
    LatticePoint p(d);
    bool zero = true;
    for (int& coord : p) {
      coord = static_cast<int>(rng.below(width)) - kLatticeRadius;
      zero = zero && coord == 0;
    }
    if (!zero) return p;
  }
}

MultisetInstance random_instance(std::size_t d, std::size_t max_size, Rng& rng) {
  MultisetInstance x;
  x.center = random_lattice_point(d, rng);
  const std::size_t size = 1 + rng.below(std::max<std::size_t>(max_size, 1));
  for (std::size_t i = 0; i < size; ++i) {
    // Repeats are common on purpose: multiplicity is what softmax loses.
    if (i > 0 && rng.below(3) == 0) {
      x.neighbors.push_back(x.neighbors[rng.below(i)]);
    } else {
      x.neighbors.push_back(random_lattice_point(d, rng));
    }
  }
  normalize(x);
  return x;
}

bool multiplicities_proportional(const MultisetInstance& a,
                                 const MultisetInstance& b) {
  const auto ca = multiplicities(a);
  const auto cb = multiplicities(b);
  if (ca.size() != cb.size()) return false;
  // m_a(x) / m_b(x) constant over a common support, compared as
  // m_a(x) * n_b == m_b(x) * n_a with n the multiset sizes.
  const std::size_t na = a.neighbors.size();
  const std::size_t nb = b.neighbors.size();
  for (const auto& [point, count] : ca) {
    const auto it = cb.find(point);
    if (it == cb.end() || count * nb != it->second * na) return false;
  }
  return true;
}

std::string to_string(CoefficientSource source) {
  switch (source) {
    case CoefficientSource::kRandomIid: return "RANDOM_IID";
    case CoefficientSource::kFagcnTanh: return "FAGCN_TANH";
    case CoefficientSource::kLmgcEq14: return "LMGC_EQ14";
    case CoefficientSource::kGatv2Softmax: return "GATV2_SOFTMAX";
  }
  return "UNKNOWN";
}

MultisetAggregator::MultisetAggregator(CoefficientSource source, std::size_t heads,
                                       std::size_t d, std::size_t c,
                                       std::uint64_t seed)
    : source_(source) {
  if (heads == 0 || d == 0 || c == 0) {
    throw InvalidArgument("aggregator needs K, d, c > 0");
  }
  if (source == CoefficientSource::kFagcnTanh) heads = 1;
  Rng rng(seed);
  std::vector<DenseMatrix> w;
  for (std::size_t k = 0; k < heads; ++k) w.push_back(normal_matrix(idx(d), idx(c), rng));
  stack_ = WeightStack(std::move(w));
  std::vector<Vector> attention;
  switch (source) {
    case CoefficientSource::kRandomIid:
      scheme_ = CoefficientScheme::random_iid(heads, 0);
      break;
    case CoefficientSource::kFagcnTanh:
      scheme_ = CoefficientScheme::fagcn(normal_vector(2 * d, rng));
      break;
    case CoefficientSource::kLmgcEq14:
      for (std::size_t k = 0; k < heads; ++k) attention.push_back(normal_vector(2 * heads * c, rng));
      scheme_ = CoefficientScheme::lmgc_eq14(std::move(attention));
      break;
    case CoefficientSource::kGatv2Softmax:
      for (std::size_t k = 0; k < heads; ++k) attention.push_back(normal_vector(c, rng));
      scheme_ = CoefficientScheme::gatv2(std::move(attention));
      break;
  }
  key_ = rng.next();
}

double MultisetAggregator::keyed_coefficient(std::size_t k,
                                             const LatticePoint& center,
                                             const LatticePoint& neighbor) const {
  std::uint64_t state = key_ ^ (0x9E3779B97F4A7C15ULL * (k + 1));
  std::uint64_t hash = splitmix64(state);
  auto mix = [&](std::int64_t value) {
    state = hash ^ static_cast<std::uint64_t>(value);
    hash = splitmix64(state);
  };
  for (int v : center) mix(v);
  mix(std::numeric_limits<std::int64_t>::min());
  for (int v : neighbor) mix(v);
  Rng rng(hash);
  return rng.normal();
}

Vector MultisetAggregator::operator()(const MultisetInstance& instance) const {
  const std::size_t d = stack_.in_channels();
  if (instance.center.size() != d || instance.neighbors.empty()) {
    throw InvalidArgument("instance does not match the aggregator");
  }
  if (source_ == CoefficientSource::kRandomIid) {
    Vector out = Vector::Zero(idx(stack_.out_channels()));
    for (const LatticePoint& x : instance.neighbors) {
      const Vector feature = lattice_feature(x);
      for (std::size_t k = 0; k < stack_.size(); ++k) {
        out += keyed_coefficient(k, instance.center, x) *
               (stack_[k].transpose() * feature);
      }
    }
    return out;
  }
  const std::size_t m = instance.neighbors.size();
  std::vector<Edge> edges;
  Signal x(idx(m + 1), idx(d));
  x.row(0) = lattice_feature(instance.center).transpose();
  for (std::size_t i = 0; i < m; ++i) {
    edges.push_back(Edge{0, i + 1});
    x.row(idx(i + 1)) = lattice_feature(instance.neighbors[i]).transpose();
  }
  const Graph star(m + 1, std::move(edges));
  const ComputationalGraphSet graphs = compute_coefficients(scheme_, x, star, stack_);
  return lmgc_forward(graphs, stack_, x).row(0).transpose();
}

double parallel_ratio(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw InvalidArgument("parallel_ratio: size mismatch");
  DenseMatrix m(2, a.size());
  m.row(0) = a.transpose();
  m.row(1) = b.transpose();
  const Vector s = Eigen::JacobiSVD<DenseMatrix>(m).singularValues();
  if (s.size() < 2 || s[0] == 0.0) return 0.0;
  return s[1] / s[0];
}

TrialReport injectivity_trial(std::size_t num_pairs, std::size_t heads,
                              std::size_t d, std::size_t c, std::uint64_t seed,
                              CoefficientSource source, std::size_t jobs) {
  if (heads == 0) throw InvalidArgument("injectivity_trial: K must be >= 1");
  const MultisetAggregator f(source, heads, d, c, derive_seed(seed, 0));
  TrialReport base{"injectivity/" + to_string(source), f.heads(), d, c};
  base.metric = std::numeric_limits<double>::infinity();
  auto chunk = [&](std::size_t index, std::size_t count, TrialReport& out) {
    Rng rng(derive_seed(seed, 1 + index));
    for (std::size_t t = 0; t < count; ++t) {
      const MultisetInstance a = random_instance(d, 4, rng);
      const MultisetInstance b = mutate(a, d, rng);
      const Vector fa = f(a);
      const Vector fb = f(b);
      const double scale = std::max(fa.norm(), fb.norm());
      const double gap = (fa - fb).norm();
      const double separation = scale > 0.0 ? gap / scale : 0.0;
      ++out.trials;
      if (gap <= kCollisionThreshold * scale) ++out.violations;
      out.metric = std::min(out.metric, separation);
    }
  };
  auto merge = [](TrialReport& into, const TrialReport& part) {
    into.trials += part.trials;
    into.violations += part.violations;
    into.metric = std::min(into.metric, part.metric);
  };
  return run_chunks(num_pairs, jobs, base, chunk, merge);
}

double multiplicity_gap(CoefficientSource source, std::size_t heads,
                        std::size_t d, std::size_t c, std::uint64_t seed) {
  const MultisetAggregator f(source, heads, d, c, derive_seed(seed, 0));
  Rng rng(derive_seed(seed, 1));
  MultisetInstance once{random_lattice_point(d, rng), {random_lattice_point(d, rng)}};
  MultisetInstance twice = once;
  twice.neighbors.push_back(once.neighbors.front());
  const Vector a = f(once);
  const Vector b = f(twice);
  const double scale = std::max(a.norm(), b.norm());
  return scale > 0.0 ? (a - b).norm() / scale : 0.0;
}

TrialReport independence_trial(std::size_t num_pairs, std::size_t heads,
                               std::size_t d, std::size_t c, std::uint64_t seed,
                               std::size_t jobs) {
  if (heads < 2) {
    throw InvalidArgument("independence_trial: requires K > 1, got K = " +
                          std::to_string(heads));
  }
  const MultisetAggregator f(CoefficientSource::kRandomIid, heads, d, c,
                             derive_seed(seed, 0));
  TrialReport base{"independence", heads, d, c};
  base.metric = std::numeric_limits<double>::infinity();
  auto chunk = [&](std::size_t index, std::size_t count, TrialReport& out) {
    Rng rng(derive_seed(seed, 1 + index));
    while (out.trials < count) {
      const MultisetInstance a = random_instance(d, 4, rng);
      const MultisetInstance b =
          rng.below(2) == 0 ? mutate(a, d, rng) : random_instance(d, 4, rng);
      if (multiplicities_proportional(a, b)) {
        ++out.excluded;
        continue;
      }
      const double ratio = parallel_ratio(f(a), f(b));
      ++out.trials;
      if (ratio < kParallelThreshold) ++out.violations;
      out.metric = std::min(out.metric, ratio);
    }
  };
  auto merge = [](TrialReport& into, const TrialReport& part) {
    into.trials += part.trials;
    into.violations += part.violations;
    into.excluded += part.excluded;
    into.metric = std::min(into.metric, part.metric);
  };
  return run_chunks(num_pairs, jobs, base, chunk, merge);
}

double doubled_multiset_ratio(std::size_t heads, std::size_t d, std::size_t c,
                              std::uint64_t seed) {
  const MultisetAggregator f(CoefficientSource::kRandomIid, heads, d, c,
                             derive_seed(seed, 0));
  Rng rng(derive_seed(seed, 1));
  const MultisetInstance single = random_instance(d, 3, rng);
  MultisetInstance doubled = single;
  doubled.neighbors.insert(doubled.neighbors.end(), single.neighbors.begin(),
                           single.neighbors.end());
  normalize(doubled);
  return parallel_ratio(f(doubled), f(single));
}

double single_graph_parallel_ratio(std::size_t d, std::size_t c,
                                   std::uint64_t seed) {
  const MultisetAggregator f(CoefficientSource::kRandomIid, 1, d, c,
                             derive_seed(seed, 0));
  Rng rng(derive_seed(seed, 1));
  LatticePoint v(d);
  for (int& coord : v) {
    coord = static_cast<int>(rng.below(4)) - 2;
    if (coord >= 0) ++coord;  // nonzero in [-2, 2], so 2 v stays in the pool
  }
  LatticePoint doubled = v;
  for (int& coord : doubled) coord *= 2;
  const MultisetInstance a{random_lattice_point(d, rng), {v}};
  const MultisetInstance b{random_lattice_point(d, rng), {doubled}};
  return parallel_ratio(f(a), f(b));
}

std::vector<DominanceRow> sca_dominance_report(std::span<const std::size_t> depths,
                                               std::size_t trials,
                                               std::uint64_t seed) {
  std::size_t max_depth = 0;
  for (std::size_t depth : depths) {
    if (depth == 0) throw InvalidArgument("sca_dominance_report: depths must be >= 1");
    max_depth = std::max(max_depth, depth);
  }
  std::vector<DominanceRow> rows;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const Graph g = generate_erdos_renyi(12, 0.3, rng);
    const SpectralBasis basis = spectral_basis(g);
    const Vector mu = adjacency_eigenvalues(basis);
    std::vector<double> weights(max_depth);
    for (double& w : weights) w = rng.normal();

    const DominanceRatio first =
        sca_repeated_gcn(std::span<const double>(weights).first(1), basis).dominance;
    for (std::size_t depth : depths) {
      const std::span<const double> used = std::span<const double>(weights).first(depth);
      const RepeatedGcnResponse rep = sca_repeated_gcn(used, basis);

      WeightStack stack;
      for (double w : used) {
        const DenseMatrix v = DenseMatrix::Constant(1, 1, w);
        const WeightStack layer = weight_stack_from_filter(gcn_as_mimo_filter(v, basis), basis);
        stack = stack.size() == 0 ? layer : compose(stack, layer);
      }
      double product = 1.0;
      for (double w : used) product *= w;
      const Vector closed = product * mu.array().pow(static_cast<double>(depth)).matrix();
      const Vector measured = filter_response(stack, basis, 0, 0).response;
      const double peak = closed.cwiseAbs().maxCoeff();

      DominanceRow row;
      row.trial = t;
      row.depth = depth;
      row.ratio = rep.dominance.ratio;
      row.closed_form = std::pow(first.ratio, static_cast<double>(depth));
      row.degenerate = first.degenerate || rep.dominance.degenerate;
      row.relative_error = row.degenerate
                               ? 0.0
                               : std::abs(row.ratio - row.closed_form) / row.closed_form;
      row.response_error = peak > 0.0 ? (measured - closed).cwiseAbs().maxCoeff() / peak : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

double shared_amplification_gap(const Graph& g, const DenseMatrix& v) {
  const SpectralBasis basis = spectral_basis(g);
  const WeightStack stack = weight_stack_from_filter(gcn_as_mimo_filter(v, basis), basis);
  std::optional<Vector> reference;
  double gap = 0.0;
  for (Eigen::Index p = 0; p < v.rows(); ++p) {
    for (Eigen::Index q = 0; q < v.cols(); ++q) {
      if (v(p, q) == 0.0) continue;
      Vector curve = filter_response(stack, basis, static_cast<std::size_t>(p),
                                     static_cast<std::size_t>(q)).response;
      curve.normalize();
      if (!reference) {
        reference = curve;
        continue;
      }
      if (curve.dot(*reference) < 0.0) curve = -curve;
      gap = std::max(gap, (curve - *reference).cwiseAbs().maxCoeff());
    }
  }
  return gap;
}

TrialReport equivalence_trial(std::size_t instances, std::uint64_t seed,
                              double tolerance) {
  TrialReport report{"equivalence"};
  for (std::size_t t = 0; t < instances; ++t) {
    Rng rng(derive_seed(seed, t));
    const std::size_t n = 3 + rng.below(18);
    const std::size_t d = 1 + rng.below(8);
    const std::size_t c = 1 + rng.below(8);
    const Graph g = generate_erdos_renyi(n, 0.4, rng);
    const SpectralBasis basis = spectral_basis(g);
    std::vector<DenseMatrix> slices;
    for (std::size_t i = 0; i < n; ++i) slices.push_back(normal_matrix(idx(c), idx(d), rng));
    const FilterTensor theta(std::move(slices), basis.id);
    const Signal x = normal_matrix(idx(n), idx(d), rng);

    const Signal direct = mimo_gc(theta, x, basis);
    const Signal forms[] = {
        mimo_gc_pairwise(weight_stack_from_filter(theta, basis), x, basis),
        mimo_gc_oracle(theta, x, basis), mimo_gc_kronecker(theta, x, basis)};
    double diff = 0.0;
    for (const Signal& other : forms) diff = std::max(diff, (direct - other).cwiseAbs().maxCoeff());
    ++report.trials;
    if (!(diff <= tolerance)) ++report.violations;
    report.metric = std::max(report.metric, diff);
    report.d = std::max(report.d, d);
    report.c = std::max(report.c, c);
  }
  return report;
}

TrialReport universality_filter_trial(std::size_t instances, std::size_t n,
                                      std::uint64_t seed, double tolerance) {
  TrialReport report{"universality", 0, n, n};
  for (std::size_t t = 0; t < instances; ++t) {
    Rng rng(derive_seed(seed, t));
    const Graph g = generate_erdos_renyi(n, 0.3, rng);
    const SpectralBasis basis = spectral_basis(g);
    Signal x;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 100) throw NumericError("no well-conditioned signal after 100 draws");
      x = normal_matrix(idx(n), idx(n), rng);
      if (graph_fourier(basis, x).cwiseAbs().minCoeff() > 1e-3) break;
      ++report.excluded;
    }
    const Signal y = normal_matrix(idx(n), idx(n), rng);
    const FilterTensor theta = universality_filter(x, y, basis);
    const double residual = (mimo_gc(theta, x, basis) - y).norm() / y.norm();
    ++report.trials;
    if (!(residual <= tolerance)) ++report.violations;
    report.metric = std::max(report.metric, residual);
  }
  return report;
}

TrialReport polynomial_trial(std::size_t instances, std::uint64_t seed,
                             double tolerance) {
  TrialReport report{"polynomial"};
  for (std::size_t t = 0; t < instances; ++t) {
    Rng rng(derive_seed(seed, t));
    const std::size_t n = 4 + rng.below(13);
    const std::size_t d = 1 + rng.below(6);
    const std::size_t c = 1 + rng.below(6);
    const std::size_t degree = 1 + rng.below(3);
    const Graph g = generate_erdos_renyi(n, 0.4, rng);
    const SpectralBasis basis = spectral_basis(g);
    std::vector<DenseMatrix> v_list;
    for (std::size_t k = 0; k <= degree; ++k) v_list.push_back(normal_matrix(idx(d), idx(c), rng));
    const Signal x = normal_matrix(idx(n), idx(d), rng);
    const Signal poly = mimo_polynomial(normalized_adjacency(g), x, v_list);
    const Signal gc = mimo_gc(polynomial_as_mimo_filter(v_list, basis), x, basis);
    const double diff = (poly - gc).cwiseAbs().maxCoeff();
    ++report.trials;
    if (!(diff <= tolerance)) ++report.violations;
    report.metric = std::max(report.metric, diff);
  }
  return report;
}

TrialReport gcn_trial(std::size_t instances, std::uint64_t seed, double tolerance) {
  TrialReport report{"gcn"};
  for (std::size_t t = 0; t < instances; ++t) {
    Rng rng(derive_seed(seed, t));
    const std::size_t n = 4 + rng.below(13);
    const std::size_t d = 1 + rng.below(6);
    const std::size_t c = 1 + rng.below(6);
    const Graph g = generate_erdos_renyi(n, 0.4, rng);
    const SpectralBasis basis = spectral_basis(g);
    const DenseMatrix v = normal_matrix(idx(d), idx(c), rng);
    const Signal x = normal_matrix(idx(n), idx(d), rng);
    const Signal gcn = normalized_adjacency(g) * x * v;
    const Signal gc = mimo_gc(gcn_as_mimo_filter(v, basis), x, basis);
    const double diff = (gcn - gc).cwiseAbs().maxCoeff();
    ++report.trials;
    if (!(diff <= tolerance)) ++report.violations;
    report.metric = std::max(report.metric, diff);
  }
  return report;
}

}  // namespace mimogc
