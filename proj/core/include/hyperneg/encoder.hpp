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
#include <string>
#include <vector>

#include "hyperneg/tape.hpp"
#include "hyperneg/tensor.hpp"

namespace hyperneg {

enum class Normalization {
  // Dv^-1/2 H De^-1 H^T Dv^-1/2 (spectral hypergraph convolution).
  kSymmetricDegree,
  // Dv^-1 H De^-1 H^T (node -> hyperedge mean, hyperedge -> node mean).
  kRowMean,
};

enum class Combine { kReplace, kResidual };

struct EncoderConfig {
  // Output width of each layer; the last entry is the embedding dim h.
  std::vector<std::size_t> dims{64, 64};
  Normalization normalization = Normalization::kSymmetricDegree;
  Combine combine = Combine::kReplace;
  bool bias = false;

  std::size_t layers() const { return dims.size(); }
  std::size_t embedding_dim() const { return dims.empty() ? 0 : dims.back(); }
  void Validate() const;
  // Compact label, e.g. "k2-h64-sym-replace".
  std::string Tag() const;
};

struct EncoderParams {
  std::vector<Parameter> weights;  // layer k: dims[k-1] x dims[k]
  std::vector<Parameter> biases;   // 1 x dims[k]; empty when bias is off
};

// Glorot-uniform weights, s = sqrt(6 / (fan_in + fan_out)); zero biases.
EncoderParams InitEncoderParams(const EncoderConfig& config,
                                std::size_t input_dim, std::uint64_t seed);

// The fixed node -> hyperedge -> node smoothing operator for one incidence
// matrix. Nodes of degree 0 get a zero normalization factor.
class Propagation {
 public:
  Propagation(SparseIncidence incidence, Normalization normalization);

  Var Apply(Tape& tape, Var x) const;
  Matrix Apply(const Matrix& x) const;

  const SparseIncidence& incidence() const { return incidence_; }
  std::size_t isolated_nodes() const { return isolated_; }

 private:
  SparseIncidence incidence_;
  std::vector<double> node_in_;   // applied before H^T
  std::vector<double> edge_;      // De^-1
  std::vector<double> node_out_;  // applied after H
  std::size_t isolated_ = 0;
};

// V^0 = X; V^k = act(P V^{k-1} W_k [+ b_k]) [+ V^{k-1} for residual layers
// whose width is unchanged]. ReLU on every layer but the last.
Var Encode(Tape& tape, const Propagation& propagation, Var features,
           const EncoderParams& params, const EncoderConfig& config);

// Tape-free forward pass.
Matrix Encode(const Propagation& propagation, const Matrix& features,
              const EncoderParams& params, const EncoderConfig& config);

}  // namespace hyperneg
