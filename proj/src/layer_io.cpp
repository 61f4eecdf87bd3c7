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

#include "mimogc/layer_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mimogc/errors.hpp"

namespace mimogc {

namespace {

using nlohmann::json;

json tensor(const std::string& name, const DenseMatrix& m) {
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return json{{"name", name}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

DenseMatrix read_tensor(const json& t) {
  const auto rows = t.at("rows").get<Eigen::Index>();
  const auto cols = t.at("cols").get<Eigen::Index>();
  const auto data = t.at("data").get<std::vector<double>>();
  if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != data.size()) {
    throw ParseError(1, "tensor " + t.at("name").get<std::string>() +
                            " has inconsistent shape");
  }
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = data[static_cast<std::size_t>(i * cols + j)];
  }
  return m;
}

}  // namespace

std::string layer_to_json(const LmgcLayer& layer) {
  const CoefficientScheme& s = layer.scheme;
  json tensors = json::array();
  for (std::size_t k = 0; k < layer.stack.size(); ++k) {
    tensors.push_back(tensor("W" + std::to_string(k + 1), layer.stack[k]));
  }
  for (std::size_t k = 0; k < s.attention.size(); ++k) {
    tensors.push_back(tensor("v" + std::to_string(k + 1), s.attention[k]));
  }
  json doc{{"variant", std::string(to_string(s.variant))},
           {"K", s.heads},
           {"leaky_slope", s.leaky_slope},
           {"seed", s.seed},
           {"acm_identity", s.acm_identity},
           {"tensors", tensors}};
  return doc.dump(2) + "\n";
}

LmgcLayer layer_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, e.what());
  }
  try {
    const auto name = doc.at("variant").get<std::string>();
    const auto variant = parse_variant(name);
    if (!variant) throw ParseError(1, "unknown variant " + name);
    CoefficientScheme scheme;
    scheme.variant = *variant;
    scheme.heads = doc.at("K").get<std::size_t>();
    scheme.leaky_slope = doc.value("leaky_slope", kLeakySlope);
    scheme.seed = doc.value("seed", std::uint64_t{0});
    scheme.acm_identity = doc.value("acm_identity", false);

    std::map<std::string, DenseMatrix> named;
    for (const json& t : doc.at("tensors")) {
      named.emplace(t.at("name").get<std::string>(), read_tensor(t));
    }
    std::vector<DenseMatrix> weights;
    for (std::size_t k = 1; named.count("W" + std::to_string(k)) != 0; ++k) {
      weights.push_back(named.at("W" + std::to_string(k)));
    }
    for (std::size_t k = 1; named.count("v" + std::to_string(k)) != 0; ++k) {
      const DenseMatrix& v = named.at("v" + std::to_string(k));
      if (v.cols() != 1) throw InvalidArgument("attention vectors must be columns");
      scheme.attention.emplace_back(v.col(0));
    }
    LmgcLayer layer{WeightStack(std::move(weights)), std::move(scheme)};
    if (layer.stack.size() != layer.scheme.heads) {
      throw InvalidArgument("K = " + std::to_string(layer.scheme.heads) + " but " +
                            std::to_string(layer.stack.size()) + " weight matrices");
    }
    layer.scheme.validate(layer.stack.in_channels(), layer.stack.out_channels());
    return layer;
  } catch (const json::exception& e) {
    throw ParseError(1, e.what());
  }
}

void save_layer(const LmgcLayer& layer, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << layer_to_json(layer);
  if (!out) throw Error("failed writing " + path.string());
}

LmgcLayer load_layer(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return layer_from_json(buffer.str());
}

}  // namespace mimogc
