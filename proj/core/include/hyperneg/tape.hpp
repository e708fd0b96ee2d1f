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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hyperneg/tensor.hpp"

namespace hyperneg {

// A named learnable matrix. The tape refers to parameters by address, so a
// Parameter must outlive every tape it has been bound to.
struct Parameter {
  std::string name;
  Matrix value;
};

// Handle to a value recorded on a Tape.
struct Var {
  std::uint32_t id = UINT32_MAX;
  bool valid() const { return id != UINT32_MAX; }
};

// Reverse-mode gradient tape over the fixed primitive set used by the
// prediction pipeline. Each primitive stores its forward value and a closure
// that scatters the output gradient into its inputs. Backward visits the
// recorded nodes in exact reverse order.
//
// A tape is single-threaded; run one per worker. Sparse operands and row
// groups passed to SpMM / Segment* are referenced, not copied, and must stay
// alive until Backward() returns.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;
  Tape(Tape&&) = default;
  Tape& operator=(Tape&&) = default;

  Var Constant(Matrix value);
  // Binds a learnable leaf. Binding the same parameter twice returns the
  // same node.
  Var Bind(const Parameter& parameter);

  // The reference is invalidated when the tape records another node.
  const Matrix& value(Var v) const { return nodes_.at(v.id).value; }
  // Only meaningful after Backward().
  const Matrix& grad(Var v) const { return nodes_.at(v.id).grad; }
  std::size_t size() const { return nodes_.size(); }

  Var MatMul(Var a, Var b);
  Var Transpose(Var a);
  Var Add(Var a, Var b);
  Var Sub(Var a, Var b);
  // a + 1 x c row broadcast over every row of a.
  Var AddRow(Var a, Var row);
  Var Scale(Var a, double factor);
  // Multiplies row r of a by the constant factors[r].
  Var ScaleRows(Var a, std::span<const double> factors);
  Var SpMM(const SparseIncidence& h, Var x, bool transpose_h);
  Var Relu(Var a);
  Var Sigmoid(Var a);
  // Row-wise softmax with max subtraction.
  Var SoftmaxRows(Var a);
  Var GatherRows(Var a, std::span<const NodeId> rows);
  Var ConcatRows(Var top, Var bottom);
  // (1 - alpha) * a + alpha * b.
  Var Convex(Var a, Var b, double alpha);

  // Per-group reductions over rows of x; output has one row per group.
  Var SegmentSum(Var x, const RowGroups& groups);
  Var SegmentMean(Var x, const RowGroups& groups);
  // Per-dimension max minus per-dimension min. Ties route the gradient to the
  // lowest-index member of the group.
  Var SegmentMaxMin(Var x, const RowGroups& groups);

  Var Sum(Var a);
  Var SumSquares(Var a);
  // Mean binary cross-entropy of probabilities against 0/1 labels, with
  // probabilities clamped to [kProbabilityFloor, 1 - kProbabilityFloor].
  Var BinaryCrossEntropy(Var probabilities, std::span<const double> labels);
  // Forward copy that blocks gradient flow.
  Var StopGradient(Var a);

  // Seeds d(loss)/d(loss) = 1 and propagates to every node. Requires a 1x1
  // loss.
  void Backward(Var loss);

  // Gradient accumulated for a bound parameter; zeros of the parameter's
  // shape if it was never bound or is unreachable from the loss.
  Matrix Gradient(const Parameter& parameter) const;

  static constexpr double kProbabilityFloor = 1e-12;

 private:
  using BackwardFn = std::function<void(Tape&)>;

  struct Node {
    Matrix value;
    Matrix grad;
    BackwardFn backward;
    const Parameter* parameter = nullptr;
  };

  Var Push(const char* op, Matrix value, BackwardFn backward);
  Matrix& G(Var v) { return nodes_[v.id].grad; }
  const Matrix& V(Var v) const { return nodes_[v.id].value; }

  std::vector<Node> nodes_;
  bool backward_done_ = false;
};

}  // namespace hyperneg
