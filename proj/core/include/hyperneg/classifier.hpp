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
#include <span>
#include <vector>

#include "hyperneg/tape.hpp"
#include "hyperneg/tensor.hpp"

namespace hyperneg {

// Two-layer MLP head: y = sigmoid(W2 relu(W1 e + b1) + b2).
struct ClassifierParams {
  Parameter w1;  // hidden x h
  Parameter b1;  // 1 x hidden
  Parameter w2;  // 1 x hidden
  Parameter b2;  // 1 x 1

  std::size_t input_dim() const { return w1.value.cols(); }
  std::size_t hidden_dim() const { return w1.value.rows(); }
};

ClassifierParams InitClassifierParams(std::size_t input_dim, std::size_t hidden_dim,
                                      std::uint64_t seed);
ClassifierParams ZeroClassifierParams(std::size_t input_dim, std::size_t hidden_dim);

// Batched: one probability per row of `embeddings` (B x h -> B x 1).
Var Classify(Tape& tape, Var embeddings, const ClassifierParams& params);
double Classify(std::span<const double> embedding, const ClassifierParams& params);

// Mean binary cross-entropy plus l2 * sum of squared parameter entries.
Var PredictionLoss(Tape& tape, Var probabilities, std::span<const double> labels,
                   std::span<const Var> parameters, double l2);
// Tape-free value of the same loss; `squared_norm` is sum ||theta||^2.
double PredictionLoss(std::span<const double> probabilities,
                      std::span<const double> labels, double squared_norm, double l2);

}  // namespace hyperneg
