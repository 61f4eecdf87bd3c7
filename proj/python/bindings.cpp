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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <utility>
#include <vector>

#include "mimogc/convolution.hpp"
#include "mimogc/errors.hpp"
#include "mimogc/graph.hpp"
#include "mimogc/layer_io.hpp"
#include "mimogc/lmgc.hpp"
#include "mimogc/spectral.hpp"
#include "mimogc/universality.hpp"
#include "mimogc/verify.hpp"

namespace py = pybind11;
using namespace mimogc;

namespace {

Graph make_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

std::vector<std::pair<std::size_t, std::size_t>> edge_pairs(const Graph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

py::dict trial_dict(const TrialResult& r) {
  py::dict d;
  d["method"] = std::string(to_string(r.method));
  d["lr"] = r.lr;
  d["seed"] = r.seed;
  d["steps"] = r.steps;
  d["min_mse"] = r.min_mse;
  d["initial_mse"] = r.initial_mse;
  d["final_mse"] = r.final_mse;
  d["wall_seconds"] = r.wall_seconds;
  d["diverged"] = r.diverged;
  d["trace"] = r.trace;
  return d;
}

py::dict report_dict(const TrialReport& r) {
  py::dict d;
  d["kind"] = r.kind;
  d["K"] = r.heads;
  d["d"] = r.d;
  d["c"] = r.c;
  d["trials"] = r.trials;
  d["violations"] = r.violations;
  d["excluded"] = r.excluded;
  d["metric"] = r.metric;
  return d;
}

Method method_from(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw InvalidArgument("unknown method '" + name + "'");
  return *m;
}

CoefficientSource source_from(const std::string& name) {
  for (auto s : {CoefficientSource::kRandomIid, CoefficientSource::kFagcnTanh,
                 CoefficientSource::kLmgcEq14, CoefficientSource::kGatv2Softmax}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument("unknown coefficient source '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_mimogc, m) {
  m.doc() = "MIMO graph convolutions and localized MIMO graph convolutions";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("edges", &edge_pairs)
      .def("neighbors", &Graph::neighbors, py::arg("i"))
      .def("has_edge", &Graph::has_edge)
      .def("adjacency", &Graph::adjacency)
      .def("__eq__", &Graph::operator==)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_nodes()) +
               ", edges=" + std::to_string(g.num_edges()) + ")";
      });

  m.def("erdos_renyi", py::overload_cast<std::size_t, double, std::uint64_t>(&generate_erdos_renyi),
        py::arg("n"), py::arg("p"), py::arg("seed"),
        "Connected G(n, p) sample by rejection.");
  m.def("normalized_adjacency", &normalized_adjacency);
  m.def("laplacian", &laplacian);
  m.def("is_connected", &is_connected);
  m.def("parse_edge_list", [](const std::string& text) { return parse_edge_list(text); });
  m.def("format_edge_list", &format_edge_list);

  py::class_<SpectralBasis>(m, "SpectralBasis")
      .def_readonly("eigenvalues", &SpectralBasis::eigenvalues)
      .def_readonly("vectors", &SpectralBasis::vectors)
      .def_property_readonly("size", &SpectralBasis::size);
  m.def("spectral_basis", &spectral_basis, py::arg("graph"));
  m.def("eigendecompose_symmetric",
        [](const DenseMatrix& a) { return eigendecompose_symmetric(a); });
  m.def("graph_fourier", &graph_fourier);
  m.def("inverse_fourier", &inverse_fourier);

  // Filters cross the boundary as lists: W^(k) matrices (d x c) for weight
  // stacks and Theta_i slices (c x d) for filter tensors.
  m.def("mimo_gc",
        [](const std::vector<DenseMatrix>& weights, const Signal& x, const SpectralBasis& b) {
          return mimo_gc(WeightStack(weights), x, b);
        },
        py::arg("weights"), py::arg("x"), py::arg("basis"));
  m.def("mimo_gc_pairwise",
        [](const std::vector<DenseMatrix>& weights, const Signal& x, const SpectralBasis& b) {
          return mimo_gc_pairwise(WeightStack(weights), x, b);
        });
  m.def("mimo_gc_oracle",
        [](const std::vector<DenseMatrix>& weights, const Signal& x, const SpectralBasis& b) {
          return mimo_gc_oracle(filter_from_weight_stack(WeightStack(weights), b), x, b);
        });
  m.def("universality_weights",
        [](const Signal& x, const Signal& y, const SpectralBasis& b) {
          return weight_stack_from_filter(universality_filter(x, y, b), b).matrices();
        },
        py::arg("x"), py::arg("y"), py::arg("basis"),
        "Weight stack whose convolution maps x onto y.");
  m.def("mimo_polynomial", [](const DenseMatrix& a, const Signal& x,
                              const std::vector<DenseMatrix>& v) { return mimo_polynomial(a, x, v); });
  m.def("polynomial_weights",
        [](const std::vector<DenseMatrix>& v, const SpectralBasis& b) {
          return polynomial_as_mimo_filter(v, b).matrices();
        });

  py::class_<LmgcLayer>(m, "LmgcLayer")
      .def_property_readonly("variant",
                             [](const LmgcLayer& l) { return std::string(to_string(l.scheme.variant)); })
      .def_property_readonly("heads", &LmgcLayer::heads)
      .def_property_readonly("weights", [](const LmgcLayer& l) { return l.stack.matrices(); })
      .def("forward", [](const LmgcLayer& l, const Signal& x, const Graph& g) {
        return lmgc_forward(l, x, g);
      })
      .def("coefficients", [](const LmgcLayer& l, const Signal& x, const Graph& g) {
        return compute_coefficients(l.scheme, x, g, l.stack).coefficients;
      })
      .def("to_json", &layer_to_json);
  m.def("layer_from_json", &layer_from_json);
  m.def("load_layer", &load_layer);
  m.def("gcn_layer", [](const DenseMatrix& w) {
    return LmgcLayer{WeightStack({w}), CoefficientScheme::gcn_norm()};
  });
  m.def("lmgc_layer",
        [](const std::vector<DenseMatrix>& weights, const std::vector<Vector>& attention) {
          return LmgcLayer{WeightStack(weights), CoefficientScheme::lmgc_eq14(attention)};
        },
        py::arg("weights"), py::arg("attention"));

  m.def("methods", [] {
    std::vector<std::string> names;
    for (Method method : kAllMethods) names.emplace_back(to_string(method));
    return names;
  });
  m.def("run_universality",
        [](const std::string& method, std::size_t steps, double lr, std::uint64_t seed,
           std::size_t n, std::size_t channels, double p, bool record_trace) {
          UniversalityConfig config;
          config.n = n;
          config.d = channels;
          config.c = channels;
          config.p = p;
          config.steps = steps;
          config.lr = lr;
          config.seed = seed;
          config.record_trace = record_trace;
          const Method parsed = method_from(method);
          TrialResult r;
          {
            py::gil_scoped_release release;
            r = run_universality_experiment(parsed, config);
          }
          return trial_dict(r);
        },
        py::arg("method"), py::arg("steps") = 40000, py::arg("lr") = 0.01, py::arg("seed") = 0,
        py::arg("n") = 16, py::arg("channels") = 16, py::arg("p") = 0.1,
        py::arg("record_trace") = false);

  m.def("injectivity_trial",
        [](std::size_t pairs, std::size_t heads, std::size_t d, std::size_t c, std::uint64_t seed,
           const std::string& source, std::size_t jobs) {
          return report_dict(injectivity_trial(pairs, heads, d, c, seed, source_from(source), jobs));
        },
        py::arg("pairs"), py::arg("heads"), py::arg("d") = 4, py::arg("c") = 4,
        py::arg("seed") = 0, py::arg("source") = "RANDOM_IID", py::arg("jobs") = 1);
  m.def("independence_trial",
        [](std::size_t pairs, std::size_t heads, std::size_t d, std::size_t c, std::uint64_t seed,
           std::size_t jobs) {
          return report_dict(independence_trial(pairs, heads, d, c, seed, jobs));
        },
        py::arg("pairs"), py::arg("heads") = 2, py::arg("d") = 4, py::arg("c") = 4,
        py::arg("seed") = 0, py::arg("jobs") = 1);
  m.def("multiplicity_gap",
        [](const std::string& source, std::size_t heads, std::size_t d, std::size_t c,
           std::uint64_t seed) { return multiplicity_gap(source_from(source), heads, d, c, seed); });
}
