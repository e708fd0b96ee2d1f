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

#include "hyperneg/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperneg/error.hpp"
#include "hyperneg/rng.hpp"

namespace hyperneg {
namespace {

Matrix Glorot(std::size_t rows, std::size_t cols, Rng& rng) {
  const double s = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> dist(-s, s);
  Matrix m(rows, cols);
  for (double& x : m.values()) x = dist(rng);
  return m;
}

}  // namespace

ClassifierParams InitClassifierParams(std::size_t input_dim, std::size_t hidden_dim,
                                      std::uint64_t seed) {
  if (input_dim == 0 || hidden_dim == 0) {
    throw ConfigError("classifier dimensions must be positive");
  }
  Rng rng = MakeRng(seed, /*stream=*/0xc1a5);
  ClassifierParams p = ZeroClassifierParams(input_dim, hidden_dim);
  p.w1.value = Glorot(hidden_dim, input_dim, rng);
  p.w2.value = Glorot(1, hidden_dim, rng);
  return p;
}

ClassifierParams ZeroClassifierParams(std::size_t input_dim, std::size_t hidden_dim) {
  return ClassifierParams{
      {"classifier.w1", Matrix(hidden_dim, input_dim)},
      {"classifier.b1", Matrix(1, hidden_dim)},
      {"classifier.w2", Matrix(1, hidden_dim)},
      {"classifier.b2", Matrix(1, 1)},
  };
}

Var Classify(Tape& tape, Var embeddings, const ClassifierParams& params) {
  if (tape.value(embeddings).cols() != params.input_dim()) {
    throw ShapeError("classifier expects " + std::to_string(params.input_dim()) +
                     "-dim embeddings, got " + tape.value(embeddings).ShapeString());
  }
  Var hidden = tape.MatMul(embeddings, tape.Transpose(tape.Bind(params.w1)));
  hidden = tape.Relu(tape.AddRow(hidden, tape.Bind(params.b1)));
  Var logits = tape.MatMul(hidden, tape.Transpose(tape.Bind(params.w2)));
  logits = tape.AddRow(logits, tape.Bind(params.b2));
  return tape.Sigmoid(logits);
}

double Classify(std::span<const double> embedding, const ClassifierParams& params) {
  Tape tape;
  Matrix row(1, embedding.size(), {embedding.begin(), embedding.end()});
  return tape.value(Classify(tape, tape.Constant(std::move(row)), params))(0, 0);
}

Var PredictionLoss(Tape& tape, Var probabilities, std::span<const double> labels,
                   std::span<const Var> parameters, double l2) {
  for (double y : labels) {
    if (y != 0.0 && y != 1.0) throw InvalidArgument("labels must be 0 or 1");
  }
  Var loss = tape.BinaryCrossEntropy(probabilities, labels);
  if (l2 != 0.0) {
    for (Var p : parameters) loss = tape.Add(loss, tape.Scale(tape.SumSquares(p), l2));
  }
  return loss;
}

double PredictionLoss(std::span<const double> probabilities,
                      std::span<const double> labels, double squared_norm, double l2) {
  if (probabilities.empty()) throw InvalidArgument("loss on an empty batch");
  if (probabilities.size() != labels.size()) {
    throw ShapeError("loss: probability and label counts differ");
  }
  for (double y : labels) {
    if (y != 0.0 && y != 1.0) throw InvalidArgument("loss labels must be 0 or 1");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double q = std::clamp(probabilities[i], Tape::kProbabilityFloor,
                                1.0 - Tape::kProbabilityFloor);
    total += labels[i] * std::log(q) + (1.0 - labels[i]) * std::log(1.0 - q);
  }
  return -total / static_cast<double>(labels.size()) + l2 * squared_norm;
}

}  // namespace hyperneg
