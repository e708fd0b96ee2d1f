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
#include <string_view>
#include <vector>

#include "hyperneg/aggregator.hpp"
#include "hyperneg/classifier.hpp"
#include "hyperneg/encoder.hpp"
#include "hyperneg/hypergraph.hpp"
#include "hyperneg/metrics.hpp"
#include "hyperneg/sampler.hpp"

namespace hyperneg {

struct ModelConfig {
  EncoderConfig encoder;
  AggregatorKind aggregator = AggregatorKind::kMaxMin;
  // Width of the classifier's hidden layer; 0 means "same as h".
  std::size_t classifier_hidden = 0;

  std::size_t hidden_dim() const {
    return classifier_hidden ? classifier_hidden : encoder.embedding_dim();
  }
};

struct Model {
  ModelConfig config;
  EncoderParams encoder;
  ClassifierParams classifier;

  std::vector<Parameter*> Parameters();
  std::vector<const Parameter*> Parameters() const;
  double SquaredNorm() const;
};

Model InitModel(const ModelConfig& config, std::size_t input_dim, std::uint64_t seed);

enum class OptimizerKind { kSgd, kAdam };
std::string_view OptimizerName(OptimizerKind kind);
OptimizerKind ParseOptimizer(std::string_view name);

struct TrainConfig {
  std::size_t epochs = 300;
  std::size_t batch_size = 256;
  double learning_rate = 1e-3;
  double l2 = 0.0;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  std::size_t patience = 30;
  std::uint64_t seed = 0;
  // Only the classifier is updated.
  bool freeze_encoder = false;

  void Validate() const;
};

// Plain gradient descent.
class Sgd {
 public:
  explicit Sgd(double learning_rate) : learning_rate_(learning_rate) {}
  void Step(std::span<Parameter* const> params, std::span<const Matrix> grads);

 private:
  double learning_rate_;
};

// Adam with bias correction (beta1 = 0.9, beta2 = 0.999, eps = 1e-8).
class Adam {
 public:
  explicit Adam(double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
                double epsilon = 1e-8)
      : learning_rate_(learning_rate), beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {}
  void Step(std::span<Parameter* const> params, std::span<const Matrix> grads);

 private:
  double learning_rate_;
  double beta1_;
  double beta2_;
  double epsilon_;
  std::size_t step_ = 0;
  std::vector<Matrix> first_;
  std::vector<Matrix> second_;
};

// Candidate hyperedges with 0/1 labels.
struct CandidateSet {
  RowGroups hyperedges;
  std::vector<double> labels;

  std::size_t size() const { return labels.size(); }
};

// Held-out positives followed by one negative each.
CandidateSet MakeCandidates(const Hypergraph& g, std::span<const std::size_t> positives,
                            const GraphNegatives& negatives);

// Everything that stays fixed across epochs and across sampler settings for
// one (dataset, split, seed): the training-only graph and its propagation
// operator, and the balanced validation and test candidate sets.
struct TrainingData {
  const Hypergraph* graph = nullptr;
  Split split;
  Hypergraph train_graph;
  // Training plus validation hyperedges; MNS/CNS@V build from it.
  Hypergraph train_val_graph;
  Propagation propagation;
  SizeDistribution train_sizes;
  CandidateSet validation;
  CandidateSet test;
};

// Validation negatives use `validation_strategy` (SNS, MNS or CNS); test
// negatives are always SNS with orders matched to the test positives. Both are
// rejected against every observed hyperedge of `g`.
TrainingData PrepareTrainingData(const Hypergraph& g, const Split& split,
                                 Normalization normalization,
                                 SamplerStrategy validation_strategy,
                                 std::uint64_t seed);

struct EpochRecord {
  std::size_t epoch = 0;
  double loss = 0.0;
  double validation_auc = 0.0;
};

struct TrainState {
  Model best;
  std::size_t best_epoch = 0;
  double best_validation_auc = -1.0;
  std::vector<EpochRecord> history;
};

// Mini-batch training with early stopping on validation AUC. Returns the
// checkpoint of the best epoch.
TrainState Train(const TrainingData& data, Model model, const SamplerConfig& sampler,
                 const TrainConfig& config);

// Probability for each candidate hyperedge.
std::vector<double> Score(const Model& model, const Propagation& propagation,
                          const Matrix& features, const RowGroups& candidates);

EvalReport Evaluate(const Model& model, const TrainingData& data,
                    const CandidateSet& candidates);

// Classifier-only fit on fixed embeddings (full batch). Returns the training
// AUC after each epoch.
std::vector<double> FitClassifier(const Matrix& embeddings, std::span<const double> labels,
                                  ClassifierParams& params, const TrainConfig& config);

}  // namespace hyperneg
