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

#include "hyperneg/encoder.hpp"

#include <cmath>
#include <random>

#include "hyperneg/error.hpp"
#include "hyperneg/rng.hpp"

namespace hyperneg {

void EncoderConfig::Validate() const {
  if (dims.empty()) throw ConfigError("encoder needs at least one layer");
  for (std::size_t d : dims) {
    if (d == 0) throw ConfigError("encoder layer width must be positive");
  }
}

std::string EncoderConfig::Tag() const {
  std::string tag = "k" + std::to_string(layers()) + "-h" +
                    std::to_string(embedding_dim());
  tag += normalization == Normalization::kSymmetricDegree ? "-sym" : "-mean";
  tag += combine == Combine::kReplace ? "-replace" : "-residual";
  if (bias) tag += "-bias";
  return tag;
}

EncoderParams InitEncoderParams(const EncoderConfig& config,
                                std::size_t input_dim, std::uint64_t seed) {
  config.Validate();
  if (input_dim == 0) throw ConfigError("encoder input dimension must be positive");
  Rng rng = MakeRng(seed, /*stream=*/0xe11c);
  EncoderParams params;
  std::size_t fan_in = input_dim;
  for (std::size_t k = 0; k < config.layers(); ++k) {
    const std::size_t fan_out = config.dims[k];
    const double s = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-s, s);
    Matrix w(fan_in, fan_out);
    for (double& x : w.values()) x = dist(rng);
    params.weights.push_back({"encoder.w" + std::to_string(k), std::move(w)});
    if (config.bias) {
      params.biases.push_back({"encoder.b" + std::to_string(k), Matrix(1, fan_out)});
    }
    fan_in = fan_out;
  }
  return params;
}

Propagation::Propagation(SparseIncidence incidence, Normalization normalization)
    : incidence_(std::move(incidence)),
      node_in_(incidence_.nodes(), 0.0),
      edge_(incidence_.edges(), 0.0),
      node_out_(incidence_.nodes(), 0.0) {
  for (std::size_t j = 0; j < incidence_.edges(); ++j) {
    edge_[j] = 1.0 / static_cast<double>(incidence_.order(j));
  }
  for (std::size_t i = 0; i < incidence_.nodes(); ++i) {
    const std::size_t degree = incidence_.degree(i);
    if (degree == 0) {
      ++isolated_;
      continue;
    }
    const double d = static_cast<double>(degree);
    if (normalization == Normalization::kSymmetricDegree) {
      node_in_[i] = 1.0 / std::sqrt(d);
      node_out_[i] = node_in_[i];
    } else {
      node_in_[i] = 1.0;
      node_out_[i] = 1.0 / d;
    }
  }
}

Var Propagation::Apply(Tape& tape, Var x) const {
  Var t = tape.ScaleRows(x, node_in_);
  t = tape.SpMM(incidence_, t, /*transpose_h=*/true);
  t = tape.ScaleRows(t, edge_);
  t = tape.SpMM(incidence_, t, /*transpose_h=*/false);
  return tape.ScaleRows(t, node_out_);
}

Matrix Propagation::Apply(const Matrix& x) const {
  Tape tape;
  return tape.value(Apply(tape, tape.Constant(x)));
}

Var Encode(Tape& tape, const Propagation& propagation, Var features,
           const EncoderParams& params, const EncoderConfig& config) {
  config.Validate();
  if (params.weights.size() != config.layers() ||
      (config.bias && params.biases.size() != config.layers())) {
    throw ShapeError("encoder params do not match the configured layer count");
  }
  Var v = features;
  for (std::size_t k = 0; k < config.layers(); ++k) {
    const Matrix& w = params.weights[k].value;
    const std::size_t in_dim = tape.value(v).cols();
    if (w.rows() != in_dim || w.cols() != config.dims[k]) {
      throw ShapeError("encoder layer " + std::to_string(k) + " weight is " +
                       w.ShapeString() + ", expected " + std::to_string(in_dim) +
                       "x" + std::to_string(config.dims[k]));
    }
    // P (V W) == (P V) W; projecting first keeps the sparse pass narrow.
    Var z = propagation.Apply(tape, tape.MatMul(v, tape.Bind(params.weights[k])));
    if (config.bias) z = tape.AddRow(z, tape.Bind(params.biases[k]));
    if (k + 1 < config.layers()) z = tape.Relu(z);
    if (config.combine == Combine::kResidual && in_dim == config.dims[k]) {
      z = tape.Add(z, v);
    }
    v = z;
  }
  return v;
}

Matrix Encode(const Propagation& propagation, const Matrix& features,
              const EncoderParams& params, const EncoderConfig& config) {
  Tape tape;
  return tape.value(Encode(tape, propagation, tape.Constant(features), params, config));
}

}  // namespace hyperneg
