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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mimogc/rng.hpp"

namespace mimogc {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
/// An n x channels node-feature matrix (X or Y).
using Signal = Eigen::MatrixXd;

/// Unordered node pair, stored with u < v.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  /// Builds a graph on `n` nodes. Pairs may be given in either orientation;
  /// duplicates are merged. Self-loops and out-of-range indices throw.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  /// Sorted edge set, each edge with u < v.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Sorted neighbor list of node i.
  const std::vector<std::size_t>& neighbors(std::size_t i) const;
  std::size_t degree(std::size_t i) const { return neighbors(i).size(); }
  bool has_edge(std::size_t i, std::size_t j) const;

  /// Dense symmetric 0/1 adjacency with zero diagonal.
  DenseMatrix adjacency() const;

  /// Relabels node i as perm[i].
  Graph permuted(std::span<const std::size_t> perm) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

/// Maximum number of rejected samples before generate_erdos_renyi gives up.
inline constexpr int kErdosRenyiAttempts = 1000;

/// Samples G(n, p) and rejects until the sample is connected. Candidate pairs
/// (i, j), i < j, are visited in lexicographic order and each consumes one
/// uniform draw. Throws NumericError("connectivity unreachable") after
/// kErdosRenyiAttempts rejected samples.
Graph generate_erdos_renyi(std::size_t n, double p, Rng& rng);
Graph generate_erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// D^{-1/2} A D^{-1/2}. Throws InvalidArgument on an isolated node.
DenseMatrix normalized_adjacency(const Graph& g);
/// I - D^{-1/2} A D^{-1/2}.
DenseMatrix laplacian(const Graph& g);

/// True iff a breadth-first search from node 0 reaches every node.
bool is_connected(const Graph& g);

/// Edge-list text: first line n, then one "i j" pair per line, 0-indexed.
std::string format_edge_list(const Graph& g);
Graph parse_edge_list(std::string_view text);
void save_edge_list(const Graph& g, const std::filesystem::path& path);
Graph load_edge_list(const std::filesystem::path& path);

}  // namespace mimogc
