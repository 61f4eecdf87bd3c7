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

#include "mimogc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <queue>
#include <sstream>

#include "mimogc/errors.hpp"

namespace mimogc {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), neighbors_(n) {
  for (Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InvalidArgument("edge (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ") out of range for " +
                            std::to_string(n) + " nodes");
    }
    if (e.u == e.v) {
      throw InvalidArgument("self-loop at node " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const Edge& e : edges_) {
    neighbors_[e.u].push_back(e.v);
    neighbors_[e.v].push_back(e.u);
  }
  for (auto& list : neighbors_) std::sort(list.begin(), list.end());
}

const std::vector<std::size_t>& Graph::neighbors(std::size_t i) const {
  if (i >= n_) throw InvalidArgument("node index out of range");
  return neighbors_[i];
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) return false;
  const auto& list = neighbors_[i];
  return std::binary_search(list.begin(), list.end(), j);
}

DenseMatrix Graph::adjacency() const {
  DenseMatrix a = DenseMatrix::Zero(n_, n_);
  for (const Edge& e : edges_) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

Graph Graph::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw InvalidArgument("permutation size mismatch");
  std::vector<bool> seen(n_, false);
  for (std::size_t target : perm) {
    if (target >= n_ || seen[target]) {
      throw InvalidArgument("not a permutation");
    }
    seen[target] = true;
  }
  std::vector<Edge> relabeled;
  relabeled.reserve(edges_.size());
  for (const Edge& e : edges_) relabeled.push_back({perm[e.u], perm[e.v]});
  return Graph(n_, std::move(relabeled));
}

Graph generate_erdos_renyi(std::size_t n, double p, Rng& rng) {
  if (n < 2) throw InvalidArgument("erdos-renyi: need n >= 2");
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidArgument("erdos-renyi: edge probability must be in (0, 1]");
  }
  for (int attempt = 0; attempt < kErdosRenyiAttempts; ++attempt) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.bernoulli(p)) edges.push_back({i, j});
      }
    }
    Graph g(n, std::move(edges));
    if (is_connected(g)) return g;
  }
  throw NumericError("connectivity unreachable: no connected sample in " +
                     std::to_string(kErdosRenyiAttempts) + " attempts");
}

Graph generate_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  return generate_erdos_renyi(n, p, rng);
}

namespace {

Vector inverse_sqrt_degrees(const Graph& g) {
  Vector scale(g.num_nodes());
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    const std::size_t deg = g.degree(i);
    if (deg == 0) {
      throw InvalidArgument("isolated node " + std::to_string(i));
    }
    scale[i] = 1.0 / std::sqrt(static_cast<double>(deg));
  }
  return scale;
}

}  // namespace

DenseMatrix normalized_adjacency(const Graph& g) {
  const Vector scale = inverse_sqrt_degrees(g);
  DenseMatrix a = DenseMatrix::Zero(g.num_nodes(), g.num_nodes());
  for (const Edge& e : g.edges()) {
    const double w = scale[e.u] * scale[e.v];
    a(e.u, e.v) = w;
    a(e.v, e.u) = w;
  }
  return a;
}

DenseMatrix laplacian(const Graph& g) {
  const std::size_t n = g.num_nodes();
  return DenseMatrix::Identity(n, n) - normalized_adjacency(g);
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n == 0) return true;
  std::vector<bool> visited(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  visited[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t node = frontier.front();
    frontier.pop();
    for (std::size_t next : g.neighbors(node)) {
      if (!visited[next]) {
        visited[next] = true;
        ++reached;
        frontier.push(next);
      }
    }
  }
  return reached == n;
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.num_nodes() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                 line[pos] == '\r')) {
      ++pos;
    }
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' &&
           line[pos] != '\r') {
      ++pos;
    }
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

std::size_t parse_index(std::string_view field, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" +
                               std::string(field) + "'");
  }
  return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (!n) {
      if (fields.size() != 1) {
        throw ParseError(line_no, "expected node count on the first line");
      }
      n = parse_index(fields[0], line_no);
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected 'i j'");
    }
    const std::size_t u = parse_index(fields[0], line_no);
    const std::size_t v = parse_index(fields[1], line_no);
    if (u >= *n || v >= *n) {
      throw ParseError(line_no, "node index out of range");
    }
    if (u == v) throw ParseError(line_no, "self-loop");
    edges.push_back({u, v});
    if (end == text.size()) break;
  }
  if (!n) throw ParseError(1, "missing node count");
  return Graph(*n, std::move(edges));
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << format_edge_list(g);
  if (!out) throw Error("failed writing " + path.string());
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str());
}

}  // namespace mimogc
