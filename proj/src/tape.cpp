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

#include "mimogc/tape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "mimogc/errors.hpp"

namespace mimogc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require(bool ok, const char* op, const std::string& why) {
  if (!ok) throw InvalidArgument(std::string(op) + ": " + why);
}

std::string shape(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Var Tape::push(DenseMatrix value, bool needs_grad,
               std::function<void(Tape&, std::size_t)> backprop) {
  nodes_.push_back(Node{std::move(value), DenseMatrix(), needs_grad,
                        needs_grad ? std::move(backprop) : nullptr});
  return Var{nodes_.size() - 1};
}

DenseMatrix& Tape::adjoint(std::size_t id) {
  Node& node = nodes_[id];
  if (node.adjoint.size() == 0 && node.value.size() != 0) {
    node.adjoint = DenseMatrix::Zero(node.value.rows(), node.value.cols());
  }
  return node.adjoint;
}

Var Tape::parameter(const DenseMatrix& value) {
  return push(value, true, [](Tape&, std::size_t) {});
}

Var Tape::constant(const DenseMatrix& value) {
  return push(value, false, nullptr);
}

Var Tape::matmul(Var a, Var b) {
  require(value(a).cols() == value(b).rows(), "matmul",
          shape(value(a)) + " times " + shape(value(b)));
  return push(value(a) * value(b), needs(a) || needs(b),
              [a, b](Tape& t, std::size_t self) {
                const DenseMatrix& g = t.nodes_[self].adjoint;
                if (t.needs(a)) t.adjoint(a.id).noalias() += g * t.value(b).transpose();
                if (t.needs(b)) t.adjoint(b.id).noalias() += t.value(a).transpose() * g;
              });
}

Var Tape::add(Var a, Var b) {
  require(value(a).rows() == value(b).rows() && value(a).cols() == value(b).cols(),
          "add", shape(value(a)) + " plus " + shape(value(b)));
  return push(value(a) + value(b), needs(a) || needs(b),
              [a, b](Tape& t, std::size_t self) {
                const DenseMatrix& g = t.nodes_[self].adjoint;
                if (t.needs(a)) t.adjoint(a.id) += g;
                if (t.needs(b)) t.adjoint(b.id) += g;
              });
}

Var Tape::scale(Var a, double factor) {
  return push(factor * value(a), needs(a), [a, factor](Tape& t, std::size_t self) {
    const DenseMatrix& g = t.nodes_[self].adjoint;
    t.adjoint(a.id) += factor * g;
  });
}

Var Tape::add_row(Var a, Var bias) {
  require(value(bias).rows() == 1 && value(bias).cols() == value(a).cols(),
          "add_row", "bias " + shape(value(bias)) + " for " + shape(value(a)));
  DenseMatrix out = value(a);
  out.rowwise() += value(bias).row(0);
  return push(std::move(out), needs(a) || needs(bias),
              [a, bias](Tape& t, std::size_t self) {
                const DenseMatrix& g = t.nodes_[self].adjoint;
                if (t.needs(a)) t.adjoint(a.id) += g;
                if (t.needs(bias)) t.adjoint(bias.id) += g.colwise().sum();
              });
}

Var Tape::concat_cols(std::span<const Var> parts) {
  require(!parts.empty(), "concat_cols", "no inputs");
  const Eigen::Index rows = value(parts[0]).rows();
  Eigen::Index cols = 0;
  bool grad = false;
  for (Var p : parts) {
    require(value(p).rows() == rows, "concat_cols", "row counts differ");
    cols += value(p).cols();
    grad = grad || needs(p);
  }
  DenseMatrix out(rows, cols);
  Eigen::Index at = 0;
  for (Var p : parts) {
    out.middleCols(at, value(p).cols()) = value(p);
    at += value(p).cols();
  }
  std::vector<Var> inputs(parts.begin(), parts.end());
  return push(std::move(out), grad, [inputs](Tape& t, std::size_t self) {
    const DenseMatrix& g = t.nodes_[self].adjoint;
    Eigen::Index at = 0;
    for (Var p : inputs) {
      const Eigen::Index w = t.value(p).cols();
      if (t.needs(p)) t.adjoint(p.id) += g.middleCols(at, w);
      at += w;
    }
  });
}

Var Tape::slice_cols(Var a, std::size_t start, std::size_t count) {
  require(start + count <= static_cast<std::size_t>(value(a).cols()), "slice_cols",
          "range past " + shape(value(a)));
  return push(value(a).middleCols(idx(start), idx(count)), needs(a),
              [a, start, count](Tape& t, std::size_t self) {
                const DenseMatrix& g = t.nodes_[self].adjoint;
                t.adjoint(a.id).middleCols(idx(start), idx(count)) += g;
              });
}

Var Tape::gather_rows(Var a, std::span<const std::size_t> index) {
  const DenseMatrix& src = value(a);
  DenseMatrix out(idx(index.size()), src.cols());
  for (std::size_t e = 0; e < index.size(); ++e) {
    require(index[e] < static_cast<std::size_t>(src.rows()), "gather_rows",
            "row index out of range");
    out.row(idx(e)) = src.row(idx(index[e]));
  }
  std::vector<std::size_t> rows(index.begin(), index.end());
  return push(std::move(out), needs(a), [a, rows](Tape& t, std::size_t self) {
    const DenseMatrix& g = t.nodes_[self].adjoint;
    DenseMatrix& ga = t.adjoint(a.id);
    for (std::size_t e = 0; e < rows.size(); ++e) ga.row(idx(rows[e])) += g.row(idx(e));
  });
}

Var Tape::scatter_rows(Var a, std::span<const std::size_t> index,
                       std::size_t rows) {
  const DenseMatrix& src = value(a);
  require(index.size() == static_cast<std::size_t>(src.rows()), "scatter_rows",
          "index length differs from row count");
  DenseMatrix out = DenseMatrix::Zero(idx(rows), src.cols());
  for (std::size_t e = 0; e < index.size(); ++e) {
    require(index[e] < rows, "scatter_rows", "target row out of range");
    out.row(idx(index[e])) += src.row(idx(e));
  }
  std::vector<std::size_t> targets(index.begin(), index.end());
  return push(std::move(out), needs(a), [a, targets](Tape& t, std::size_t self) {
    const DenseMatrix& g = t.nodes_[self].adjoint;
    DenseMatrix& ga = t.adjoint(a.id);
    for (std::size_t e = 0; e < targets.size(); ++e) {
      ga.row(idx(e)) += g.row(idx(targets[e]));
    }
  });
}

Var Tape::scale_rows(Var a, Var w) {
  require(value(w).cols() == 1 && value(w).rows() == value(a).rows(), "scale_rows",
          "weights " + shape(value(w)) + " for " + shape(value(a)));
  DenseMatrix out = value(w).col(0).asDiagonal() * value(a);
  return push(std::move(out), needs(a) || needs(w), [a, w](Tape& t, std::size_t self) {
    const DenseMatrix& g = t.nodes_[self].adjoint;
    if (t.needs(a)) t.adjoint(a.id) += t.value(w).col(0).asDiagonal() * g;
    if (t.needs(w)) {
      t.adjoint(w.id).col(0) += g.cwiseProduct(t.value(a)).rowwise().sum();
    }
  });
}

Var Tape::tanh(Var a) {
  DenseMatrix out = value(a).array().tanh().matrix();
  return push(std::move(out), needs(a), [a](Tape& t, std::size_t self) {
    const Node& node = t.nodes_[self];
    const DenseMatrix g =
        (node.adjoint.array() * (1.0 - node.value.array().square())).matrix();
    t.adjoint(a.id) += g;
  });
}

Var Tape::leaky_relu(Var a, double slope) {
  const DenseMatrix& x = value(a);
  DenseMatrix out = x.unaryExpr([slope](double v) { return v > 0.0 ? v : slope * v; });
  return push(std::move(out), needs(a), [a, slope](Tape& t, std::size_t self) {
    const DenseMatrix& g = t.nodes_[self].adjoint;
    const DenseMatrix& x = t.value(a);
    DenseMatrix& ga = t.adjoint(a.id);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      ga.data()[i] += (x.data()[i] > 0.0 ? 1.0 : slope) * g.data()[i];
    }
  });
}

Var Tape::relu(Var a) { return leaky_relu(a, 0.0); }

Var Tape::segment_softmax(Var scores, std::span<const std::size_t> segment) {
  const DenseMatrix& s = value(scores);
  require(s.cols() == 1 && static_cast<std::size_t>(s.rows()) == segment.size(),
          "segment_softmax", "scores must be a column with one segment id per row");
  std::size_t groups = 0;
  for (std::size_t g : segment) groups = std::max(groups, g + 1);
  std::vector<double> peak(groups, -std::numeric_limits<double>::infinity());
  for (std::size_t e = 0; e < segment.size(); ++e) {
    peak[segment[e]] = std::max(peak[segment[e]], s(idx(e), 0));
  }
  DenseMatrix out(s.rows(), 1);
  std::vector<double> total(groups, 0.0);
  for (std::size_t e = 0; e < segment.size(); ++e) {
    out(idx(e), 0) = std::exp(s(idx(e), 0) - peak[segment[e]]);
    total[segment[e]] += out(idx(e), 0);
  }
  for (std::size_t e = 0; e < segment.size(); ++e) out(idx(e), 0) /= total[segment[e]];

  std::vector<std::size_t> seg(segment.begin(), segment.end());
  return push(std::move(out), needs(scores),
              [scores, seg, groups](Tape& t, std::size_t self) {
                const Node& node = t.nodes_[self];
                const DenseMatrix& y = node.value;
                const DenseMatrix& g = node.adjoint;
                // d s_e = y_e (g_e - sum_{e' in seg(e)} y_e' g_e')
                std::vector<double> inner(groups, 0.0);
                for (std::size_t e = 0; e < seg.size(); ++e) {
                  inner[seg[e]] += y(idx(e), 0) * g(idx(e), 0);
                }
                DenseMatrix& gs = t.adjoint(scores.id);
                for (std::size_t e = 0; e < seg.size(); ++e) {
                  gs(idx(e), 0) += y(idx(e), 0) * (g(idx(e), 0) - inner[seg[e]]);
                }
              });
}

Var Tape::mse(Var pred, const DenseMatrix& target) {
  const DenseMatrix& p = value(pred);
  require(p.rows() == target.rows() && p.cols() == target.cols() && p.size() > 0,
          "mse", "prediction " + shape(p) + " against target " + shape(target));
  const double count = static_cast<double>(p.size());
  DenseMatrix out(1, 1);
  out(0, 0) = (p - target).squaredNorm() / count;
  return push(std::move(out), needs(pred),
              [pred, target, count](Tape& t, std::size_t self) {
                const double g = t.nodes_[self].adjoint(0, 0);
                t.adjoint(pred.id) += (2.0 * g / count) * (t.value(pred) - target);
              });
}

Var Tape::weighted_sum(Var a, const DenseMatrix& weights) {
  const DenseMatrix& x = value(a);
  require(x.rows() == weights.rows() && x.cols() == weights.cols(), "weighted_sum",
          "weights " + shape(weights) + " for " + shape(x));
  DenseMatrix out(1, 1);
  out(0, 0) = x.cwiseProduct(weights).sum();
  return push(std::move(out), needs(a), [a, weights](Tape& t, std::size_t self) {
    t.adjoint(a.id) += t.nodes_[self].adjoint(0, 0) * weights;
  });
}

DenseMatrix Tape::gradient(Var v) const {
  const Node& node = nodes_.at(v.id);
  if (node.adjoint.size() == 0) {
    return DenseMatrix::Zero(node.value.rows(), node.value.cols());
  }
  return node.adjoint;
}

void Tape::backward(Var loss) {
  const DenseMatrix& l = value(loss);
  if (l.rows() != 1 || l.cols() != 1) {
    throw InvalidArgument("backward: loss must be scalar, got " + shape(l));
  }
  for (Node& node : nodes_) node.adjoint.resize(0, 0);
  if (!nodes_[loss.id].needs_grad) return;
  adjoint(loss.id)(0, 0) = 1.0;
  for (std::size_t id = loss.id + 1; id-- > 0;) {
    Node& node = nodes_[id];
    if (!node.needs_grad || node.adjoint.size() == 0) continue;
    node.backprop(*this, id);
  }
}

}  // namespace mimogc
