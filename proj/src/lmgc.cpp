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

#include "mimogc/lmgc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mimogc/errors.hpp"
#include "mimogc/rng.hpp"

namespace mimogc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

double leaky_relu(double value, double slope) {
  return value > 0.0 ? value : slope * value;
}

double degree_norm(const Graph& g, std::size_t i, std::size_t j) {
  return 1.0 / std::sqrt(static_cast<double>(g.degree(i)) *
                         static_cast<double>(g.degree(j)));
}

std::vector<DenseMatrix> empty_graphs(std::size_t count, std::size_t n) {
  return std::vector<DenseMatrix>(count, DenseMatrix::Zero(idx(n), idx(n)));
}

}  // namespace

std::string_view to_string(CoefficientVariant variant) {
  switch (variant) {
    case CoefficientVariant::kGcnNorm: return "GCN_NORM";
    case CoefficientVariant::kGatv2Softmax: return "GATV2_SOFTMAX";
    case CoefficientVariant::kFagcnTanh: return "FAGCN_TANH";
    case CoefficientVariant::kAcmFixed: return "ACM_FIXED";
    case CoefficientVariant::kLmgcEq14: return "LMGC_EQ14";
    case CoefficientVariant::kRandomIid: return "RANDOM_IID";
  }
  return "UNKNOWN";
}

std::optional<CoefficientVariant> parse_variant(std::string_view name) {
  for (auto variant :
       {CoefficientVariant::kGcnNorm, CoefficientVariant::kGatv2Softmax,
        CoefficientVariant::kFagcnTanh, CoefficientVariant::kAcmFixed,
        CoefficientVariant::kLmgcEq14, CoefficientVariant::kRandomIid}) {
    if (to_string(variant) == name) return variant;
  }
  return std::nullopt;
}

CoefficientScheme CoefficientScheme::gcn_norm() {
  return CoefficientScheme{};
}

CoefficientScheme CoefficientScheme::gatv2(std::vector<Vector> attention) {
  CoefficientScheme s;
  s.variant = CoefficientVariant::kGatv2Softmax;
  s.heads = attention.size();
  s.attention = std::move(attention);
  return s;
}

CoefficientScheme CoefficientScheme::fagcn(Vector attention) {
  CoefficientScheme s;
  s.variant = CoefficientVariant::kFagcnTanh;
  s.heads = 1;
  s.attention.push_back(std::move(attention));
  return s;
}

CoefficientScheme CoefficientScheme::acm(bool identity_channel) {
  CoefficientScheme s;
  s.variant = CoefficientVariant::kAcmFixed;
  s.heads = identity_channel ? 3 : 2;
  s.acm_identity = identity_channel;
  return s;
}

CoefficientScheme CoefficientScheme::lmgc_eq14(std::vector<Vector> attention) {
  CoefficientScheme s;
  s.variant = CoefficientVariant::kLmgcEq14;
  s.heads = attention.size();
  s.attention = std::move(attention);
  return s;
}

CoefficientScheme CoefficientScheme::random_iid(std::size_t heads,
                                                std::uint64_t seed) {
  CoefficientScheme s;
  s.variant = CoefficientVariant::kRandomIid;
  s.heads = heads;
  s.seed = seed;
  return s;
}

void CoefficientScheme::validate(std::size_t in_channels,
                                 std::size_t out_channels) const {
  const auto fail = [this](const std::string& why) {
    throw InvalidArgument(std::string(to_string(variant)) + ": " + why);
  };
  if (heads == 0) fail("needs at least one computational graph");
  auto check_vectors = [&](std::size_t count, std::size_t length) {
    if (attention.size() != count) {
      fail("expected " + std::to_string(count) + " attention vectors, got " +
           std::to_string(attention.size()));
    }
    for (const Vector& v : attention) {
      if (static_cast<std::size_t>(v.size()) != length) {
        fail("attention vector length " + std::to_string(v.size()) +
             ", expected " + std::to_string(length));
      }
      if (!v.allFinite()) fail("non-finite attention vector");
    }
  };
  switch (variant) {
    case CoefficientVariant::kGcnNorm:
      if (heads != 1) fail("uses exactly one computational graph");
      break;
    case CoefficientVariant::kGatv2Softmax:
      check_vectors(heads, out_channels);
      break;
    case CoefficientVariant::kFagcnTanh:
      if (heads != 1) fail("uses exactly one computational graph");
      check_vectors(1, 2 * in_channels);
      break;
    case CoefficientVariant::kAcmFixed:
      if (heads != (acm_identity ? 3U : 2U)) {
        fail("uses A_sym, L_sym and optionally I");
      }
      break;
    case CoefficientVariant::kLmgcEq14:
      check_vectors(heads, 2 * heads * out_channels);
      break;
    case CoefficientVariant::kRandomIid:
      break;
  }
}

bool ComputationalGraphSet::well_formed() const {
  const std::size_t n = graph.num_nodes();
  for (const DenseMatrix& a : coefficients) {
    if (static_cast<std::size_t>(a.rows()) != n ||
        static_cast<std::size_t>(a.cols()) != n || !a.allFinite()) {
      return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (a(idx(i), idx(j)) == 0.0) continue;
        if (i == j ? !allows_diagonal : !graph.has_edge(i, j)) return false;
      }
    }
  }
  return true;
}

ComputationalGraphSet compute_coefficients(const CoefficientScheme& scheme,
                                           const Signal& x, const Graph& g,
                                           const WeightStack& stack) {
  const std::size_t n = g.num_nodes();
  if (static_cast<std::size_t>(x.rows()) != n) {
    throw InvalidArgument("compute_coefficients: signal has " +
                          std::to_string(x.rows()) + " rows for " +
                          std::to_string(n) + " nodes");
  }
  if (stack.size() != scheme.heads) {
    throw InvalidArgument("compute_coefficients: scheme has " +
                          std::to_string(scheme.heads) + " heads, stack has " +
                          std::to_string(stack.size()));
  }
  if (static_cast<std::size_t>(x.cols()) != stack.in_channels()) {
    throw InvalidArgument("compute_coefficients: channel mismatch");
  }
  scheme.validate(stack.in_channels(), stack.out_channels());

  ComputationalGraphSet out;
  out.graph = g;
  out.coefficients = empty_graphs(scheme.heads, n);

  switch (scheme.variant) {
    case CoefficientVariant::kGcnNorm: {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : g.neighbors(i)) {
          out.coefficients[0](idx(i), idx(j)) = degree_norm(g, i, j);
        }
      }
      break;
    }
    case CoefficientVariant::kGatv2Softmax: {
      for (std::size_t k = 0; k < scheme.heads; ++k) {
        const DenseMatrix h = x * stack[k];
        const Vector& v = scheme.attention[k];
        for (std::size_t i = 0; i < n; ++i) {
          const auto& nbrs = g.neighbors(i);
          if (nbrs.empty()) continue;
          std::vector<double> scores;
          scores.reserve(nbrs.size());
          for (std::size_t j : nbrs) {
            double s = 0.0;
            for (Eigen::Index q = 0; q < h.cols(); ++q) {
              s += v[q] *
                   leaky_relu(h(idx(i), q) + h(idx(j), q), scheme.leaky_slope);
            }
            scores.push_back(s);
          }
          const double peak = *std::max_element(scores.begin(), scores.end());
          double total = 0.0;
          for (double& s : scores) {
            s = std::exp(s - peak);
            total += s;
          }
          for (std::size_t m = 0; m < nbrs.size(); ++m) {
            out.coefficients[k](idx(i), idx(nbrs[m])) = scores[m] / total;
          }
        }
      }
      break;
    }
    case CoefficientVariant::kFagcnTanh: {
      const Vector& v = scheme.attention[0];
      const Eigen::Index d = x.cols();
      const Vector self_part = x * v.head(d);
      const Vector other_part = x * v.tail(d);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : g.neighbors(i)) {
          out.coefficients[0](idx(i), idx(j)) =
              std::tanh(self_part[idx(i)] + other_part[idx(j)]) *
              degree_norm(g, i, j);
        }
      }
      break;
    }
    case CoefficientVariant::kAcmFixed: {
      out.allows_diagonal = true;
      out.coefficients[0] = normalized_adjacency(g);
      out.coefficients[1] = laplacian(g);
      if (scheme.acm_identity) {
        out.coefficients[2] = DenseMatrix::Identity(idx(n), idx(n));
      }
      break;
    }
    case CoefficientVariant::kLmgcEq14: {
      const std::size_t heads = scheme.heads;
      const Eigen::Index c = idx(stack.out_channels());
      DenseMatrix h(idx(n), idx(heads) * c);
      for (std::size_t m = 0; m < heads; ++m) {
        h.middleCols(idx(m) * c, c) = x * stack[m];
      }
      const Eigen::Index width = h.cols();
      Vector z(2 * width);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : g.neighbors(i)) {
          for (Eigen::Index t = 0; t < width; ++t) {
            z[t] = leaky_relu(h(idx(i), t), scheme.leaky_slope);
            z[width + t] = leaky_relu(h(idx(j), t), scheme.leaky_slope);
          }
          for (std::size_t k = 0; k < heads; ++k) {
            out.coefficients[k](idx(i), idx(j)) =
                std::tanh(scheme.attention[k].dot(z));
          }
        }
      }
      break;
    }
    case CoefficientVariant::kRandomIid: {
      Rng rng(scheme.seed);
      for (std::size_t k = 0; k < scheme.heads; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j : g.neighbors(i)) {
            out.coefficients[k](idx(i), idx(j)) = rng.normal();
          }
        }
      }
      break;
    }
  }
  return out;
}

Signal lmgc_forward(const ComputationalGraphSet& graphs, const WeightStack& stack,
                    const Signal& x) {
  if (graphs.size() != stack.size()) {
    throw InvalidArgument("lmgc_forward: graph count and stack size differ");
  }
  if (static_cast<std::size_t>(x.rows()) != graphs.graph.num_nodes() ||
      static_cast<std::size_t>(x.cols()) != stack.in_channels()) {
    throw InvalidArgument("lmgc_forward: signal shape mismatch");
  }
  Signal out = Signal::Zero(x.rows(), idx(stack.out_channels()));
  for (std::size_t k = 0; k < stack.size(); ++k) {
    out.noalias() += graphs.coefficients[k] * (x * stack[k]);
  }
  return out;
}

Signal lmgc_forward(const LmgcLayer& layer, const Signal& x, const Graph& g) {
  return lmgc_forward(compute_coefficients(layer.scheme, x, g, layer.stack),
                      layer.stack, x);
}

DenseMatrix pairwise_transform(const WeightStack& stack,
                               const ComputationalGraphSet& graphs,
                               std::size_t i, std::size_t j) {
  const std::size_t n = graphs.graph.num_nodes();
  if (i >= n || j >= n) {
    throw InvalidArgument("pairwise_transform: node index out of range");
  }
  if (i == j ? !graphs.allows_diagonal : !graphs.graph.has_edge(i, j)) {
    throw InvalidArgument("pairwise_transform: (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") is not an edge");
  }
  if (graphs.size() != stack.size()) {
    throw InvalidArgument("pairwise_transform: graph count and stack size differ");
  }
  DenseMatrix sum =
      DenseMatrix::Zero(idx(stack.out_channels()), idx(stack.in_channels()));
  for (std::size_t k = 0; k < stack.size(); ++k) {
    sum += graphs.coefficients[k](idx(i), idx(j)) * stack[k].transpose();
  }
  return sum;
}

Signal lmgc_forward_nodewise(const ComputationalGraphSet& graphs,
                             const WeightStack& stack, const Signal& x) {
  const std::size_t n = graphs.graph.num_nodes();
  if (static_cast<std::size_t>(x.rows()) != n ||
      static_cast<std::size_t>(x.cols()) != stack.in_channels()) {
    throw InvalidArgument("lmgc_forward_nodewise: signal shape mismatch");
  }
  Signal out = Signal::Zero(x.rows(), idx(stack.out_channels()));
  for (std::size_t i = 0; i < n; ++i) {
    Vector row = Vector::Zero(idx(stack.out_channels()));
    if (graphs.allows_diagonal) {
      row += pairwise_transform(stack, graphs, i, i) * x.row(idx(i)).transpose();
    }
    for (std::size_t j : graphs.graph.neighbors(i)) {
      row += pairwise_transform(stack, graphs, i, j) * x.row(idx(j)).transpose();
    }
    out.row(idx(i)) = row.transpose();
  }
  return out;
}

Signal gin_forward(const Signal& x, const Graph& g, const GinMlp& mlp,
                   double eps) {
  const std::size_t n = g.num_nodes();
  if (static_cast<std::size_t>(x.rows()) != n || mlp.w1.rows() != x.cols() ||
      mlp.b1.size() != mlp.w1.cols() || mlp.w2.rows() != mlp.w1.cols() ||
      mlp.b2.size() != mlp.w2.cols()) {
    throw InvalidArgument("gin_forward: shape mismatch");
  }
  Signal aggregated = (1.0 + eps) * x;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : g.neighbors(i)) aggregated.row(idx(i)) += x.row(idx(j));
  }
  DenseMatrix hidden = aggregated * mlp.w1;
  hidden.rowwise() += mlp.b1.transpose();
  hidden = hidden.cwiseMax(0.0);
  Signal out = hidden * mlp.w2;
  out.rowwise() += mlp.b2.transpose();
  return out;
}

}  // namespace mimogc
