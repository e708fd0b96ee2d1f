// Copyright 2026 The hyperneg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hyperneg/tape.hpp"

#include <algorithm>
#include <cmath>

#include "hyperneg/error.hpp"

namespace hyperneg {
namespace {

void RequireSameShape(const char* op, const Matrix& a, const Matrix& b) {
  if (!a.SameShape(b)) {
    throw ShapeError(std::string(op) + " shape mismatch: " + a.ShapeString() +
                     " vs " + b.ShapeString());
  }
}

void AddInto(Matrix& dst, const Matrix& src) {
  auto d = dst.values();
  auto s = src.values();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += s[i];
}

// dst += a * b^T
void AddMatMulNT(Matrix& dst, const Matrix& a, const Matrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ar = a.row(i).data();
    double* dr = dst.row(i).data();
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double* br = b.row(j).data();
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += ar[k] * br[k];
      dr[j] += acc;
    }
  }
}

// dst += a^T * b
void AddMatMulTN(Matrix& dst, const Matrix& a, const Matrix& b) {
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double* ar = a.row(k).data();
    const double* br = b.row(k).data();
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = ar[i];
      if (aki == 0.0) continue;
      double* dr = dst.row(i).data();
      for (std::size_t j = 0; j < b.cols(); ++j) dr[j] += aki * br[j];
    }
  }
}

void CheckGroups(const char* op, const RowGroups& groups, std::size_t rows) {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) {
      throw InvalidArgument(std::string(op) + ": group " + std::to_string(g) +
                            " is empty");
    }
    for (NodeId r : groups[g]) {
      if (r >= rows) {
        throw ShapeError(std::string(op) + ": row index " + std::to_string(r) +
                         " out of range for " + std::to_string(rows) + " rows");
      }
    }
  }
}

}  // namespace

Var Tape::Push(const char* op, Matrix value, BackwardFn backward) {
  if (!value.AllFinite()) {
    throw NumericError(std::string("non-finite value produced by ") + op);
  }
  if (nodes_.size() >= UINT32_MAX - 1) throw ShapeError("tape is full");
  nodes_.push_back(Node{std::move(value), Matrix(), std::move(backward), nullptr});
  backward_done_ = false;
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Var Tape::Constant(Matrix value) { return Push("constant", std::move(value), nullptr); }

Var Tape::Bind(const Parameter& parameter) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].parameter == &parameter) return Var{static_cast<std::uint32_t>(i)};
  }
  Var v = Push(parameter.name.c_str(), parameter.value, nullptr);
  nodes_[v.id].parameter = &parameter;
  return v;
}

Var Tape::MatMul(Var a, Var b) {
  Var out = Push("matmul", hyperneg::MatMul(V(a), V(b)), nullptr);
  nodes_[out.id].backward = [a, b, out](Tape& t) {
    AddMatMulNT(t.G(a), t.G(out), t.V(b));  // dA = dC * B^T
    AddMatMulTN(t.G(b), t.V(a), t.G(out));  // dB = A^T * dC
  };
  return out;
}

Var Tape::Transpose(Var a) {
  Var o = Push("transpose", hyperneg::Transpose(V(a)), nullptr);
  nodes_[o.id].backward = [a, o](Tape& t) {
    AddInto(t.G(a), hyperneg::Transpose(t.G(o)));
  };
  return o;
}

Var Tape::Add(Var a, Var b) {
  RequireSameShape("add", V(a), V(b));
  Matrix out = V(a);
  AddInto(out, V(b));
  Var o = Push("add", std::move(out), nullptr);
  nodes_[o.id].backward = [a, b, o](Tape& t) {
    AddInto(t.G(a), t.G(o));
    AddInto(t.G(b), t.G(o));
  };
  return o;
}

Var Tape::Sub(Var a, Var b) {
  RequireSameShape("sub", V(a), V(b));
  Matrix out = V(a);
  auto ov = out.values();
  auto bv = V(b).values();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] -= bv[i];
  Var o = Push("sub", std::move(out), nullptr);
  nodes_[o.id].backward = [a, b, o](Tape& t) {
    AddInto(t.G(a), t.G(o));
    auto gb = t.G(b).values();
    auto go = t.G(o).values();
    for (std::size_t i = 0; i < gb.size(); ++i) gb[i] -= go[i];
  };
  return o;
}

Var Tape::AddRow(Var a, Var row) {
  const Matrix& av = V(a);
  const Matrix& rv = V(row);
  if (rv.rows() != 1 || rv.cols() != av.cols()) {
    throw ShapeError("add_row shape mismatch: " + av.ShapeString() + " + " +
                     rv.ShapeString());
  }
  Matrix out = av;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto r = out.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += rv(0, j);
  }
  Var o = Push("add_row", std::move(out), nullptr);
  nodes_[o.id].backward = [a, row, o](Tape& t) {
    const Matrix& go = t.G(o);
    AddInto(t.G(a), go);
    Matrix& gr = t.G(row);
    for (std::size_t i = 0; i < go.rows(); ++i) {
      for (std::size_t j = 0; j < go.cols(); ++j) gr(0, j) += go(i, j);
    }
  };
  return o;
}

Var Tape::Scale(Var a, double factor) {
  Matrix out = V(a);
  for (double& x : out.values()) x *= factor;
  Var o = Push("scale", std::move(out), nullptr);
  nodes_[o.id].backward = [a, o, factor](Tape& t) {
    auto ga = t.G(a).values();
    auto go = t.G(o).values();
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += factor * go[i];
  };
  return o;
}

Var Tape::ScaleRows(Var a, std::span<const double> factors) {
  const Matrix& av = V(a);
  if (factors.size() != av.rows()) {
    throw ShapeError("scale_rows: " + std::to_string(factors.size()) +
                     " factors for " + av.ShapeString());
  }
  Matrix out = av;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (double& x : out.row(i)) x *= factors[i];
  }
  std::vector<double> f(factors.begin(), factors.end());
  Var o = Push("scale_rows", std::move(out), nullptr);
  nodes_[o.id].backward = [a, o, f = std::move(f)](Tape& t) {
    Matrix& ga = t.G(a);
    const Matrix& go = t.G(o);
    for (std::size_t i = 0; i < ga.rows(); ++i) {
      for (std::size_t j = 0; j < ga.cols(); ++j) ga(i, j) += f[i] * go(i, j);
    }
  };
  return o;
}

Var Tape::SpMM(const SparseIncidence& h, Var x, bool transpose_h) {
  const SparseIncidence* hp = &h;
  Var o = Push("spmm", hyperneg::SpMM(h, V(x), transpose_h), nullptr);
  nodes_[o.id].backward = [hp, x, o, transpose_h](Tape& t) {
    AddInto(t.G(x), hyperneg::SpMM(*hp, t.G(o), !transpose_h));
  };
  return o;
}

Var Tape::Relu(Var a) {
  Matrix out = V(a);
  for (double& x : out.values()) x = x > 0.0 ? x : 0.0;
  Var o = Push("relu", std::move(out), nullptr);
  nodes_[o.id].backward = [a, o](Tape& t) {
    auto ga = t.G(a).values();
    auto go = t.G(o).values();
    auto av = t.V(a).values();
    for (std::size_t i = 0; i < ga.size(); ++i) {
      if (av[i] > 0.0) ga[i] += go[i];
    }
  };
  return o;
}

Var Tape::Sigmoid(Var a) {
  Matrix out = V(a);
  for (double& x : out.values()) {
    x = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
  }
  Var o = Push("sigmoid", std::move(out), nullptr);
  nodes_[o.id].backward = [a, o](Tape& t) {
    auto ga = t.G(a).values();
    auto go = t.G(o).values();
    auto ov = t.V(o).values();
    for (std::size_t i = 0; i < ga.size(); ++i) {
      ga[i] += go[i] * ov[i] * (1.0 - ov[i]);
    }
  };
  return o;
}

Var Tape::SoftmaxRows(Var a) {
  Matrix out = V(a);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto r = out.row(i);
    if (r.empty()) continue;
    const double peak = *std::max_element(r.begin(), r.end());
    double total = 0.0;
    for (double& x : r) {
      x = std::exp(x - peak);
      total += x;
    }
    for (double& x : r) x /= total;
  }
  Var o = Push("softmax_rows", std::move(out), nullptr);
  nodes_[o.id].backward = [a, o](Tape& t) {
    Matrix& ga = t.G(a);
    const Matrix& go = t.G(o);
    const Matrix& s = t.V(o);
    for (std::size_t i = 0; i < s.rows(); ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < s.cols(); ++j) dot += go(i, j) * s(i, j);
      for (std::size_t j = 0; j < s.cols(); ++j) {
        ga(i, j) += s(i, j) * (go(i, j) - dot);
      }
    }
  };
  return o;
}

Var Tape::GatherRows(Var a, std::span<const NodeId> rows) {
  const Matrix& av = V(a);
  Matrix out(rows.size(), av.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= av.rows()) {
      throw ShapeError("gather_rows: index " + std::to_string(rows[i]) +
                       " out of range for " + av.ShapeString());
    }
    std::copy(av.row(rows[i]).begin(), av.row(rows[i]).end(), out.row(i).begin());
  }
  std::vector<NodeId> idx(rows.begin(), rows.end());
  Var o = Push("gather_rows", std::move(out), nullptr);
  nodes_[o.id].backward = [a, o, idx = std::move(idx)](Tape& t) {
    Matrix& ga = t.G(a);
    const Matrix& go = t.G(o);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto dst = ga.row(idx[i]);
      auto src = go.row(i);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
    }
  };
  return o;
}

Var Tape::ConcatRows(Var top, Var bottom) {
  const Matrix& tv = V(top);
  const Matrix& bv = V(bottom);
  if (tv.cols() != bv.cols()) {
    throw ShapeError("concat_rows shape mismatch: " + tv.ShapeString() +
                     " over " + bv.ShapeString());
  }
  std::vector<double> data(tv.values().begin(), tv.values().end());
  data.insert(data.end(), bv.values().begin(), bv.values().end());
  const std::size_t split = tv.size();
  Var o = Push("concat_rows", Matrix(tv.rows() + bv.rows(), tv.cols(), std::move(data)),
               nullptr);
  nodes_[o.id].backward = [top, bottom, o, split](Tape& t) {
    auto go = t.G(o).values();
    auto gt = t.G(top).values();
    auto gb = t.G(bottom).values();
    for (std::size_t i = 0; i < gt.size(); ++i) gt[i] += go[i];
    for (std::size_t i = 0; i < gb.size(); ++i) gb[i] += go[split + i];
  };
  return o;
}

Var Tape::Convex(Var a, Var b, double alpha) {
  RequireSameShape("convex", V(a), V(b));
  const double keep = 1.0 - alpha;
  Matrix out = V(a);
  auto ov = out.values();
  auto bv = V(b).values();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = keep * ov[i] + alpha * bv[i];
  Var o = Push("convex", std::move(out), nullptr);
  nodes_[o.id].backward = [a, b, o, keep, alpha](Tape& t) {
    auto go = t.G(o).values();
    auto ga = t.G(a).values();
    auto gb = t.G(b).values();
    for (std::size_t i = 0; i < go.size(); ++i) {
      ga[i] += keep * go[i];
      gb[i] += alpha * go[i];
    }
  };
  return o;
}

Var Tape::SegmentSum(Var x, const RowGroups& groups) {
  const Matrix& xv = V(x);
  CheckGroups("segment_sum", groups, xv.rows());
  Matrix out(groups.size(), xv.cols());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto dst = out.row(g);
    for (NodeId r : groups[g]) {
      auto src = xv.row(r);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
    }
  }
  const RowGroups* gp = &groups;
  Var o = Push("segment_sum", std::move(out), nullptr);
  nodes_[o.id].backward = [x, o, gp](Tape& t) {
    Matrix& gx = t.G(x);
    const Matrix& go = t.G(o);
    for (std::size_t g = 0; g < gp->size(); ++g) {
      auto src = go.row(g);
      for (NodeId r : (*gp)[g]) {
        auto dst = gx.row(r);
        for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
      }
    }
  };
  return o;
}

Var Tape::SegmentMean(Var x, const RowGroups& groups) {
  const Matrix& xv = V(x);
  CheckGroups("segment_mean", groups, xv.rows());
  Matrix out(groups.size(), xv.cols());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto dst = out.row(g);
    for (NodeId r : groups[g]) {
      auto src = xv.row(r);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
    }
    const double inv = 1.0 / static_cast<double>(groups[g].size());
    for (double& d : dst) d *= inv;
  }
  const RowGroups* gp = &groups;
  Var o = Push("segment_mean", std::move(out), nullptr);
  nodes_[o.id].backward = [x, o, gp](Tape& t) {
    Matrix& gx = t.G(x);
    const Matrix& go = t.G(o);
    for (std::size_t g = 0; g < gp->size(); ++g) {
      auto src = go.row(g);
      const double inv = 1.0 / static_cast<double>((*gp)[g].size());
      for (NodeId r : (*gp)[g]) {
        auto dst = gx.row(r);
        for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += inv * src[j];
      }
    }
  };
  return o;
}

Var Tape::SegmentMaxMin(Var x, const RowGroups& groups) {
  const Matrix& xv = V(x);
  CheckGroups("segment_maxmin", groups, xv.rows());
  const std::size_t h = xv.cols();
  Matrix out(groups.size(), h);
  // Row of x that won the max / min for each (group, dimension).
  std::vector<NodeId> argmax(groups.size() * h);
  std::vector<NodeId> argmin(groups.size() * h);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto members = groups[g];
    for (std::size_t j = 0; j < h; ++j) {
      NodeId hi = members[0];
      NodeId lo = members[0];
      for (std::size_t k = 1; k < members.size(); ++k) {
        const NodeId r = members[k];
        const double value = xv(r, j);
        // Strict comparisons keep the earliest member on ties; among equal
        // members at different positions prefer the lower row index.
        if (value > xv(hi, j) || (value == xv(hi, j) && r < hi)) hi = r;
        if (value < xv(lo, j) || (value == xv(lo, j) && r < lo)) lo = r;
      }
      argmax[g * h + j] = hi;
      argmin[g * h + j] = lo;
      out(g, j) = xv(hi, j) - xv(lo, j);
    }
  }
  Var o = Push("segment_maxmin", std::move(out), nullptr);
  nodes_[o.id].backward = [x, o, h, argmax = std::move(argmax),
                           argmin = std::move(argmin)](Tape& t) {
    Matrix& gx = t.G(x);
    const Matrix& go = t.G(o);
    for (std::size_t g = 0; g < go.rows(); ++g) {
      for (std::size_t j = 0; j < h; ++j) {
        gx(argmax[g * h + j], j) += go(g, j);
        gx(argmin[g * h + j], j) -= go(g, j);
      }
    }
  };
  return o;
}

Var Tape::Sum(Var a) {
  double total = 0.0;
  for (double x : V(a).values()) total += x;
  Var o = Push("sum", Matrix(1, 1, total), nullptr);
  nodes_[o.id].backward = [a, o](Tape& t) {
    const double g = t.G(o)(0, 0);
    for (double& x : t.G(a).values()) x += g;
  };
  return o;
}

Var Tape::SumSquares(Var a) {
  Var o = Push("sum_squares", Matrix(1, 1, V(a).SquaredNorm()), nullptr);
  nodes_[o.id].backward = [a, o](Tape& t) {
    const double g = t.G(o)(0, 0);
    auto ga = t.G(a).values();
    auto av = t.V(a).values();
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += 2.0 * g * av[i];
  };
  return o;
}

Var Tape::BinaryCrossEntropy(Var probabilities, std::span<const double> labels) {
  const Matrix& p = V(probabilities);
  if (p.size() == 0) throw InvalidArgument("binary cross-entropy on an empty batch");
  if (p.size() != labels.size()) {
    throw ShapeError("binary cross-entropy: " + std::to_string(labels.size()) +
                     " labels for " + p.ShapeString() + " probabilities");
  }
  for (double y : labels) {
    if (y != 0.0 && y != 1.0) throw InvalidArgument("binary cross-entropy labels must be 0 or 1");
  }
  const double n = static_cast<double>(labels.size());
  double total = 0.0;
  auto pv = p.values();
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const double q = std::clamp(pv[i], kProbabilityFloor, 1.0 - kProbabilityFloor);
    total += labels[i] * std::log(q) + (1.0 - labels[i]) * std::log(1.0 - q);
  }
  std::vector<double> y(labels.begin(), labels.end());
  Var o = Push("binary_cross_entropy", Matrix(1, 1, -total / n), nullptr);
  nodes_[o.id].backward = [probabilities, o, n, y = std::move(y)](Tape& t) {
    const double g = t.G(o)(0, 0);
    auto gp = t.G(probabilities).values();
    auto pv = t.V(probabilities).values();
    for (std::size_t i = 0; i < gp.size(); ++i) {
      const double q = pv[i];
      // Clamped probabilities receive no gradient.
      if (q < kProbabilityFloor || q > 1.0 - kProbabilityFloor) continue;
      gp[i] += -g * (y[i] / q - (1.0 - y[i]) / (1.0 - q)) / n;
    }
  };
  return o;
}

Var Tape::StopGradient(Var a) { return Push("stop_gradient", V(a), nullptr); }

void Tape::Backward(Var loss) {
  const Matrix& lv = nodes_.at(loss.id).value;
  if (lv.rows() != 1 || lv.cols() != 1) {
    throw ShapeError("backward needs a scalar loss, got " + lv.ShapeString());
  }
  for (auto& node : nodes_) node.grad = Matrix(node.value.rows(), node.value.cols());
  nodes_[loss.id].grad(0, 0) = 1.0;
  for (std::size_t i = loss.id + 1; i-- > 0;) {
    if (nodes_[i].backward) nodes_[i].backward(*this);
  }
  backward_done_ = true;
}

Matrix Tape::Gradient(const Parameter& parameter) const {
  if (backward_done_) {
    for (const auto& node : nodes_) {
      if (node.parameter == &parameter) return node.grad;
    }
  }
  return Matrix(parameter.value.rows(), parameter.value.cols());
}

}  // namespace hyperneg
