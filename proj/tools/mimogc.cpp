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

// mimogc: experiments and checks for MIMO graph convolutions.
//
// Exit codes: 0 success, 1 usage error, 2 verification violation,
// 3 numeric failure.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mimogc/convolution.hpp"
#include "mimogc/errors.hpp"
#include "mimogc/graph.hpp"
#include "mimogc/plot.hpp"
#include "mimogc/rng.hpp"
#include "mimogc/spectral.hpp"
#include "mimogc/universality.hpp"
#include "mimogc/verify.hpp"

namespace fs = std::filesystem;
using namespace mimogc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitNumeric = 3;

struct UsageError : Error {
  using Error::Error;
};

std::string sci(double value, int digits = 3) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(digits) << value;
  return out.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
}

DenseMatrix gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

// ---------------------------------------------------------------- universality

struct UniversalityArgs {
  std::string method = "all";
  std::vector<double> lrs;
  std::size_t steps = 40000;
  std::size_t seeds = 3;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::size_t n = 16;
  std::size_t channels = 16;
  double p = 0.1;
  std::string out = "out/universality";
};

int cmd_universality(const UniversalityArgs& args) {
  std::vector<Method> methods;
  if (args.method == "all") {
    methods.assign(kAllMethods.begin(), kAllMethods.end());
  } else if (auto m = parse_method(args.method)) {
    methods.push_back(*m);
  } else {
    throw UsageError("invalid method '" + args.method +
                     "' (expected gatv2, fagcn, acm, gin, lmgc or all)");
  }
  std::vector<double> lrs = args.lrs;
  if (lrs.empty()) lrs.assign(kLearningRateGrid.begin(), kLearningRateGrid.end());
  for (double lr : lrs) {
    if (!(lr > 0.0)) throw UsageError("learning rates must be positive");
  }
  if (args.seeds == 0) throw UsageError("--seeds must be at least 1");

  UniversalityConfig base;
  base.n = args.n;
  base.d = args.channels;
  base.c = args.channels;
  base.p = args.p;
  base.steps = args.steps;
  base.seed = args.seed;

  fs::create_directories(args.out);
  const auto trials = run_universality_grid(methods, lrs, args.seeds, base, args.jobs);

  std::vector<std::vector<std::string>> rows;
  for (const TrialResult& t : trials) {
    rows.push_back({std::string(to_string(t.method)), format_double(t.lr),
                    std::to_string(t.seed), std::to_string(t.steps),
                    format_double(t.min_mse), format_double(t.wall_seconds),
                    format_double(t.initial_mse), format_double(t.final_mse),
                    t.diverged ? "1" : "0"});
  }
  write_csv(fs::path(args.out) / "results.csv",
            {"method", "lr", "seed", "steps", "min_mse", "wall_seconds",
             "initial_mse", "final_mse", "diverged"},
            rows);

  std::vector<TrialResult> best = best_per_seed(trials);
  std::map<Method, std::vector<double>> per_method;
  for (const TrialResult& t : best) per_method[t.method].push_back(t.min_mse);
  std::vector<std::pair<double, Method>> order;
  for (const auto& [m, values] : per_method) {
    double mean = 0.0;
    for (double v : values) mean += v;
    order.emplace_back(mean / static_cast<double>(values.size()), m);
  }
  std::sort(order.begin(), order.end());

  std::ostringstream summary;
  summary << "universality task: n=" << base.n << " d=c=" << base.d << " p=" << base.p
          << " steps=" << base.steps << " seeds=" << args.seeds << "\n";
  summary << "best learning rate per seed, methods sorted by mean min MSE\n\n";
  summary << std::left << std::setw(8) << "method" << std::setw(12) << "mean"
          << std::setw(12) << "std" << "per seed (lr)\n";
  for (const auto& [mean, m] : order) {
    const auto& values = per_method[m];
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sd = values.size() > 1
                          ? std::sqrt(var / static_cast<double>(values.size() - 1))
                          : 0.0;
    summary << std::left << std::setw(8) << to_string(m) << std::setw(12) << sci(mean, 2)
            << std::setw(12) << sci(sd, 2);
    for (const TrialResult& t : best) {
      if (t.method != m) continue;
      summary << sci(t.min_mse, 2) << " (" << t.lr << ")"
              << (t.diverged ? " diverged" : "") << "  ";
    }
    summary << "\n";
  }
  write_text(fs::path(args.out) / "summary.txt", summary.str());
  std::cout << summary.str();

  std::vector<PlotSeries> series;
  for (const auto& [mean, m] : order) {
    PlotSeries s{std::string(to_string(m)), {}, {}};
    for (const TrialResult& t : best) {
      if (t.method != m) continue;
      s.x.push_back(static_cast<double>(t.seed));
      s.y.push_back(std::log10(std::max(t.min_mse, 1e-300)));
    }
    series.push_back(std::move(s));
  }
  write_svg(fs::path(args.out) / "min_mse.svg", "log10 min MSE per seed", series);
  return kExitOk;
}

// ---------------------------------------------------------------- spectra

struct SpectraArgs {
  std::string graph_file;
  std::vector<double> er;
  std::uint64_t seed = 0;
  std::size_t depth = 16;
  std::string out = "out/spectra";
};

PlotSeries response_series(const std::string& label, const SpectralResponse& r) {
  return PlotSeries{label,
                    std::vector<double>(r.eigenvalues.data(),
                                        r.eigenvalues.data() + r.eigenvalues.size()),
                    std::vector<double>(r.response.data(),
                                        r.response.data() + r.response.size())};
}

int cmd_spectra(const SpectraArgs& args) {
  Rng rng(derive_seed(args.seed, 0));
  Graph g;
  if (!args.graph_file.empty()) {
    g = load_edge_list(args.graph_file);
  } else {
    const double n = args.er[0];
    if (n < 1 || n != std::floor(n)) throw UsageError("--er needs an integer node count");
    if (!(args.er[1] >= 0.0 && args.er[1] <= 1.0)) throw UsageError("--er p must lie in [0, 1]");
    g = generate_erdos_renyi(static_cast<std::size_t>(n), args.er[1], rng);
  }
  if (args.depth == 0) throw UsageError("--depth must be at least 1");
  const SpectralBasis basis = spectral_basis(g);
  fs::create_directories(args.out);
  const fs::path out(args.out);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    rows.push_back({std::to_string(k),
                    format_double(basis.eigenvalues[static_cast<Eigen::Index>(k)])});
  }
  write_csv(out / "results.csv", {"index", "eigenvalue"}, rows);

  constexpr std::size_t kChannels = 2;
  const auto ch = static_cast<Eigen::Index>(kChannels);
  std::vector<std::vector<std::string>> response_rows;
  auto plot_stack = [&](const std::string& kind, const WeightStack& stack,
                        const std::string& title) {
    std::vector<PlotSeries> series;
    for (std::size_t p = 0; p < kChannels; ++p) {
      for (std::size_t q = 0; q < kChannels; ++q) {
        const SpectralResponse r = filter_response(stack, basis, p, q);
        for (Eigen::Index k = 0; k < r.response.size(); ++k) {
          response_rows.push_back({kind, std::to_string(p), std::to_string(q),
                                   format_double(r.eigenvalues[k]),
                                   format_double(r.response[k])});
        }
        series.push_back(response_series(std::to_string(p) + "->" + std::to_string(q), r));
      }
    }
    write_svg(out / (kind + ".svg"), title, series);
  };

  std::vector<DenseMatrix> random_w;
  for (std::size_t k = 0; k < basis.size(); ++k) random_w.push_back(gaussian(ch, ch, rng));
  plot_stack("random", WeightStack(std::move(random_w)), "random MIMO filter");

  std::vector<DenseMatrix> cheb;
  for (int k = 0; k < 4; ++k) cheb.push_back(gaussian(ch, ch, rng));
  plot_stack("chebyshev", chebyshev_as_mimo_filter(cheb, basis),
             "Chebyshev filter, degree 3");

  const DenseMatrix v = gaussian(ch, ch, rng);
  plot_stack("gcn", weight_stack_from_filter(gcn_as_mimo_filter(v, basis), basis),
             "GCN filter");

  std::vector<double> weights(args.depth);
  for (double& w : weights) w = rng.normal();
  const RepeatedGcnResponse rep = sca_repeated_gcn(weights, basis);
  SpectralResponse scaled = rep.response;
  const double peak = scaled.response.cwiseAbs().maxCoeff();
  if (peak > 0.0) scaled.response /= peak;
  for (Eigen::Index k = 0; k < scaled.response.size(); ++k) {
    response_rows.push_back({"repeated_gcn", "0", "0", format_double(scaled.eigenvalues[k]),
                             format_double(scaled.response[k])});
  }
  write_svg(out / "repeated_gcn.svg",
            "repeated GCN, depth " + std::to_string(args.depth) + " (normalized)",
            {response_series("depth " + std::to_string(args.depth), scaled)});
  write_csv(out / "responses.csv", {"kind", "in", "out", "eigenvalue", "response"},
            response_rows);

  std::ostringstream summary;
  summary << "nodes " << g.num_nodes() << ", edges " << g.num_edges() << "\n";
  summary << "eigenvalues in [" << basis.eigenvalues.minCoeff() << ", "
          << basis.eigenvalues.maxCoeff() << "], min gap " << sci(min_eigengap(basis))
          << "\n";
  summary << "repeated GCN depth " << args.depth << ": dominance ratio "
          << sci(rep.dominance.ratio) << (rep.dominance.degenerate ? " (degenerate)" : "")
          << "\n";
  write_text(out / "summary.txt", summary.str());
  std::cout << summary.str();
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string kind;
  std::optional<std::size_t> pairs;
  std::optional<std::size_t> heads;
  std::size_t d = 4;
  std::size_t c = 4;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out = "out/verify";
};

int cmd_verify(const VerifyArgs& args) {
  std::vector<TrialReport> reports;
  std::ostringstream notes;
  bool violated = false;

  if (args.kind == "equivalence") {
    reports.push_back(equivalence_trial(args.pairs.value_or(100), args.seed));
  } else if (args.kind == "injectivity") {
    const std::size_t pairs = args.pairs.value_or(1000);
    std::vector<std::size_t> ks = args.heads ? std::vector<std::size_t>{*args.heads}
                                             : std::vector<std::size_t>{1, 4};
    for (std::size_t k : ks) {
      if (k == 0) throw UsageError("--heads must be at least 1");
      reports.push_back(injectivity_trial(pairs, k, args.d, args.c, args.seed,
                                          CoefficientSource::kRandomIid, args.jobs));
      reports.push_back(injectivity_trial(pairs, k, args.d, args.c, args.seed,
                                          CoefficientSource::kLmgcEq14, args.jobs));
    }
    reports.push_back(injectivity_trial(pairs, 1, args.d, args.c, args.seed,
                                        CoefficientSource::kFagcnTanh, args.jobs));
    const std::size_t k = ks.back();
    const double gap = multiplicity_gap(CoefficientSource::kGatv2Softmax, k, args.d,
                                        args.c, args.seed);
    notes << "softmax multiplicity counterexample {{x}} vs {{x, x}}: relative gap "
          << sci(gap) << (gap <= 1e-12 ? " (collides, as expected)" : " (NO collision)")
          << "\n";
    violated = violated || gap > 1e-12;
  } else if (args.kind == "independence") {
    const std::size_t k = args.heads.value_or(2);
    if (k < 2) {
      throw UsageError("independence requires K > 1 (got --heads " + std::to_string(k) + ")");
    }
    reports.push_back(independence_trial(args.pairs.value_or(1000), k, args.d, args.c,
                                         args.seed, args.jobs));
    const double doubled = doubled_multiset_ratio(k, args.d, args.c, args.seed);
    notes << "X1 = 2 X2 control: sigma ratio " << sci(doubled)
          << (doubled < kParallelThreshold ? " (parallel, as expected)" : " (NOT parallel)")
          << "\n";
    violated = violated || doubled >= kParallelThreshold;
  } else {
    throw UsageError("invalid --kind '" + args.kind +
                     "' (expected injectivity, independence or equivalence)");
  }

  fs::create_directories(args.out);
  std::vector<std::vector<std::string>> rows;
  std::ostringstream summary;
  for (const TrialReport& r : reports) {
    rows.push_back({r.kind, std::to_string(r.heads), std::to_string(r.d),
                    std::to_string(r.c), std::to_string(r.trials),
                    std::to_string(r.violations), format_double(r.metric)});
    summary << r.kind << " K=" << r.heads << " d=" << r.d << " c=" << r.c << ": "
            << r.trials << " checked, " << r.violations << " violations";
    if (r.excluded > 0) summary << ", " << r.excluded << " excluded";
    summary << ", metric " << sci(r.metric) << "\n";
    violated = violated || r.violations > 0;
  }
  summary << notes.str();
  write_csv(fs::path(args.out) / "results.csv",
            {"trial_kind", "K", "d", "c", "pairs", "violations", "min_separation"}, rows);
  write_text(fs::path(args.out) / "summary.txt", summary.str());
  std::cout << summary.str();
  return violated ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIMO graph convolution experiments and checks"};
  app.require_subcommand(1);

  UniversalityArgs uni;
  auto* u = app.add_subcommand("universality", "fit Y from X with one layer per method");
  u->add_option("--method", uni.method, "gatv2, fagcn, acm, gin, lmgc or all")
      ->capture_default_str();
  u->add_option("--lr", uni.lrs, "learning rates (default 0.03 0.01 0.003)");
  u->add_option("--steps", uni.steps, "Adam steps")->capture_default_str();
  u->add_option("--seeds", uni.seeds, "number of seeds")->capture_default_str();
  u->add_option("--seed", uni.seed, "first seed")->capture_default_str();
  u->add_option("--jobs", uni.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  u->add_option("--nodes", uni.n, "graph size n")->capture_default_str()->check(CLI::PositiveNumber);
  u->add_option("--channels", uni.channels, "d = c")->capture_default_str()->check(CLI::PositiveNumber);
  u->add_option("--p", uni.p, "edge probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  u->add_option("--out", uni.out, "output directory")->capture_default_str();

  SpectraArgs spec;
  auto* s = app.add_subcommand("spectra", "eigenvalues and filter responses of a graph");
  auto* file_opt = s->add_option("--graph-file", spec.graph_file, "edge list file")
                       ->check(CLI::ExistingFile);
  auto* er_opt = s->add_option("--er", spec.er, "random graph: n p")->expected(2);
  file_opt->excludes(er_opt);
  s->add_option("--seed", spec.seed, "random seed")->capture_default_str();
  s->add_option("--depth", spec.depth, "repeated GCN depth")->capture_default_str();
  s->add_option("--out", spec.out, "output directory")->capture_default_str();

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "randomized property checks");
  v->add_option("--kind", ver.kind, "injectivity, independence or equivalence")->required();
  v->add_option("--pairs", ver.pairs, "pairs (instances for equivalence)");
  v->add_option("--heads", ver.heads, "number of computational graphs K");
  v->add_option("--d", ver.d, "input channels")->capture_default_str()->check(CLI::PositiveNumber);
  v->add_option("--c", ver.c, "output channels")->capture_default_str()->check(CLI::PositiveNumber);
  v->add_option("--seed", ver.seed, "random seed")->capture_default_str();
  v->add_option("--jobs", ver.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  v->add_option("--out", ver.out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*u) return cmd_universality(uni);
    if (*s) {
      if (spec.graph_file.empty() && spec.er.empty()) {
        throw UsageError("spectra needs --graph-file or --er n p");
      }
      return cmd_spectra(spec);
    }
    if (*v) return cmd_verify(ver);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
