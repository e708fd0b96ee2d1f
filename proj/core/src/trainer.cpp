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

#include "hyperneg/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hyperneg/error.hpp"
#include "hyperneg/rng.hpp"

namespace hyperneg {
namespace {

constexpr std::uint64_t kShuffleStream = 0x51;
constexpr std::uint64_t kNegativeStream = 0x52;
constexpr std::uint64_t kInjectStream = 0x53;
constexpr std::uint64_t kValidationStream = 0x71;
constexpr std::uint64_t kTestStream = 0x72;

std::vector<std::size_t> OrdersOf(const Hypergraph& g, std::span<const std::size_t> edges) {
  std::vector<std::size_t> orders;
  orders.reserve(edges.size());
  for (std::size_t j : edges) orders.push_back(g.edge(j).size());
  return orders;
}

GraphNegatives HeuristicNegatives(SamplerStrategy strategy, const Hypergraph& source,
                                  const EdgeIndex& observed,
                                  std::span<const std::size_t> orders, Rng& rng) {
  GraphNegatives out;
  out.sets.reserve(orders.size());
  for (std::size_t order : orders) {
    if (strategy == SamplerStrategy::kMNS) {
      out.sets.push_back(SampleMotif(source, observed, std::max<std::size_t>(order, 2), rng));
    } else {
      out.sets.push_back(SampleClique(source, observed, rng));
    }
  }
  return out;
}

GraphNegatives TrainingNegatives(const TrainingData& data, SamplerStrategy strategy,
                                 std::size_t count, Rng& rng) {
  const Hypergraph& train = data.train_graph;
  switch (strategy) {
    case SamplerStrategy::kMNS:
    case SamplerStrategy::kCNS: {
      std::vector<std::size_t> orders(count);
      for (auto& o : orders) o = data.train_sizes.Sample(rng);
      return HeuristicNegatives(strategy, train, train.index(), orders, rng);
    }
    default:
      return SampleSized(train.node_count(), train.index(), data.train_sizes, count, rng);
  }
}

template <typename Optimizer>
void ApplyStep(Optimizer& opt, const Tape& tape, std::span<Parameter* const> params) {
  std::vector<Matrix> grads;
  grads.reserve(params.size());
  for (const Parameter* p : params) grads.push_back(tape.Gradient(*p));
  opt.Step(params, grads);
}

}  // namespace

std::vector<Parameter*> Model::Parameters() {
  std::vector<Parameter*> out;
  for (auto& w : encoder.weights) out.push_back(&w);
  for (auto& b : encoder.biases) out.push_back(&b);
  out.push_back(&classifier.w1);
  out.push_back(&classifier.b1);
  out.push_back(&classifier.w2);
  out.push_back(&classifier.b2);
  return out;
}

std::vector<const Parameter*> Model::Parameters() const {
  std::vector<const Parameter*> out;
  for (const auto& w : encoder.weights) out.push_back(&w);
  for (const auto& b : encoder.biases) out.push_back(&b);
  out.push_back(&classifier.w1);
  out.push_back(&classifier.b1);
  out.push_back(&classifier.w2);
  out.push_back(&classifier.b2);
  return out;
}

double Model::SquaredNorm() const {
  double total = 0.0;
  for (const Parameter* p : Parameters()) total += p->value.SquaredNorm();
  return total;
}

Model InitModel(const ModelConfig& config, std::size_t input_dim, std::uint64_t seed) {
  config.encoder.Validate();
  Model model;
  model.config = config;
  model.encoder = InitEncoderParams(config.encoder, input_dim, seed);
  model.classifier =
      InitClassifierParams(config.encoder.embedding_dim(), config.hidden_dim(), seed);
  return model;
}

std::string_view OptimizerName(OptimizerKind kind) {
  return kind == OptimizerKind::kAdam ? "adam" : "sgd";
}

OptimizerKind ParseOptimizer(std::string_view name) {
  if (name == "adam") return OptimizerKind::kAdam;
  if (name == "sgd") return OptimizerKind::kSgd;
  throw ConfigError("unknown optimizer '" + std::string(name) + "' (expected adam or sgd)");
}

void TrainConfig::Validate() const {
  if (epochs == 0) throw ConfigError("train.epochs must be positive");
  if (batch_size == 0) throw ConfigError("train.batch must be positive");
  if (!(learning_rate > 0.0)) throw ConfigError("train.lr must be positive");
  if (!(l2 >= 0.0)) throw ConfigError("train.lambda must be non-negative");
  if (patience == 0) throw ConfigError("train.patience must be positive");
}

void Sgd::Step(std::span<Parameter* const> params, std::span<const Matrix> grads) {
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto w = params[k]->value.values();
    auto g = grads[k].values();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= learning_rate_ * g[i];
  }
}

void Adam::Step(std::span<Parameter* const> params, std::span<const Matrix> grads) {
  if (first_.empty()) {
    for (const Parameter* p : params) {
      first_.emplace_back(p->value.rows(), p->value.cols());
      second_.emplace_back(p->value.rows(), p->value.cols());
    }
  }
  ++step_;
  const double correction1 = 1.0 - std::pow(beta1_, static_cast<double>(step_));
  const double correction2 = 1.0 - std::pow(beta2_, static_cast<double>(step_));
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto w = params[k]->value.values();
    auto g = grads[k].values();
    auto m = first_[k].values();
    auto v = second_[k].values();
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = beta1_ * m[i] + (1.0 - beta1_) * g[i];
      v[i] = beta2_ * v[i] + (1.0 - beta2_) * g[i] * g[i];
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      w[i] -= learning_rate_ * m_hat / (std::sqrt(v_hat) + epsilon_);
    }
  }
}

CandidateSet MakeCandidates(const Hypergraph& g, std::span<const std::size_t> positives,
                            const GraphNegatives& negatives) {
  CandidateSet set;
  for (std::size_t j : positives) {
    set.hyperedges.Add(g.edge(j));
    set.labels.push_back(1.0);
  }
  for (const auto& s : negatives.sets) {
    set.hyperedges.Add(s);
    set.labels.push_back(0.0);
  }
  return set;
}

TrainingData PrepareTrainingData(const Hypergraph& g, const Split& split,
                                 Normalization normalization,
                                 SamplerStrategy validation_strategy,
                                 std::uint64_t seed) {
  if (split.train.empty() || split.validation.empty() || split.test.empty()) {
    throw InvalidArgument("split has an empty part");
  }
  Hypergraph train = g.WithEdges(split.train);
  std::vector<std::size_t> train_val(split.train);
  train_val.insert(train_val.end(), split.validation.begin(), split.validation.end());
  Hypergraph train_val_graph = g.WithEdges(train_val);

  Rng val_rng = MakeRng(seed, kValidationStream);
  const auto val_orders = OrdersOf(g, split.validation);
  GraphNegatives val_negatives;
  switch (validation_strategy) {
    case SamplerStrategy::kSNS:
      val_negatives = SampleSizedMatching(g.node_count(), g.index(), val_orders, val_rng);
      break;
    case SamplerStrategy::kMNS:
    case SamplerStrategy::kCNS:
      val_negatives = HeuristicNegatives(validation_strategy, train_val_graph, g.index(),
                                         val_orders, val_rng);
      break;
    default:
      throw ConfigError("validation negatives must use SNS, MNS or CNS, not " +
                        std::string(StrategyName(validation_strategy)));
  }
  Rng test_rng = MakeRng(seed, kTestStream);
  const auto test_orders = OrdersOf(g, split.test);
  const GraphNegatives test_negatives =
      SampleSizedMatching(g.node_count(), g.index(), test_orders, test_rng);

  SizeDistribution sizes(train.edges());
  Propagation propagation(train.incidence(), normalization);
  CandidateSet validation = MakeCandidates(g, split.validation, val_negatives);
  CandidateSet test = MakeCandidates(g, split.test, test_negatives);
  return TrainingData{&g,
                      split,
                      std::move(train),
                      std::move(train_val_graph),
                      std::move(propagation),
                      std::move(sizes),
                      std::move(validation),
                      std::move(test)};
}

std::vector<double> Score(const Model& model, const Propagation& propagation,
                          const Matrix& features, const RowGroups& candidates) {
  Tape tape;
  Var v = Encode(tape, propagation, tape.Constant(features), model.encoder,
                 model.config.encoder);
  Var e = Aggregate(tape, v, candidates, model.config.aggregator);
  const Matrix& probs = tape.value(Classify(tape, e, model.classifier));
  return {probs.values().begin(), probs.values().end()};
}

EvalReport Evaluate(const Model& model, const TrainingData& data,
                    const CandidateSet& candidates) {
  const auto scores =
      Score(model, data.propagation, data.graph->features(), candidates.hyperedges);
  return EvaluateScores(scores, candidates.labels);
}

TrainState Train(const TrainingData& data, Model model, const SamplerConfig& sampler,
                 const TrainConfig& config) {
  config.Validate();
  sampler.Validate();
  const Hypergraph& train = data.train_graph;
  if (train.edge_count() == 0) throw InvalidArgument("no training hyperedges");

  std::vector<Parameter*> trainable;
  if (config.freeze_encoder) {
    trainable = {&model.classifier.w1, &model.classifier.b1, &model.classifier.w2,
                 &model.classifier.b2};
  } else {
    trainable = model.Parameters();
  }
  Adam adam(config.learning_rate);
  Sgd sgd(config.learning_rate);

  Rng shuffle_rng = MakeRng(config.seed, kShuffleStream);
  Rng negative_rng = MakeRng(config.seed, kNegativeStream);
  Rng inject_rng = MakeRng(config.seed, kInjectStream);

  std::vector<std::size_t> order(train.edge_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batch = std::min(config.batch_size, order.size());
  const double alpha = sampler.alpha.value_or(0.0);

  TrainState state;
  state.best = model;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      RowGroups positives;
      for (std::size_t k = start; k < end; ++k) positives.Add(train.edge(order[k]));
      const GraphNegatives negatives = TrainingNegatives(
          data, sampler.strategy, sampler.negatives_per_positive * (end - start),
          negative_rng);
      const RowGroups negative_groups = negatives.AsGroups();

      Tape tape;
      try {
        Var v = Encode(tape, data.propagation, tape.Constant(data.graph->features()),
                       model.encoder, model.config.encoder);
        Var pos = Aggregate(tape, v, positives, model.config.aggregator);
        Var neg = Aggregate(tape, v, negative_groups, model.config.aggregator);
        if (sampler.strategy == SamplerStrategy::kHNS) {
          neg = InjectHard(tape, neg, pos, alpha, sampler.stop_gradient).embeddings;
        } else if (sampler.strategy == SamplerStrategy::kRandomInject) {
          neg = InjectRandom(tape, neg, pos, alpha, inject_rng, sampler.stop_gradient)
                    .embeddings;
        }
        Var probs = Classify(tape, tape.ConcatRows(pos, neg), model.classifier);
        std::vector<double> labels(positives.size(), 1.0);
        labels.resize(positives.size() + negative_groups.size(), 0.0);
        std::vector<Var> bound;
        for (const Parameter* p : model.Parameters()) bound.push_back(tape.Bind(*p));
        Var loss = PredictionLoss(tape, probs, labels, bound, config.l2);
        tape.Backward(loss);
        loss_sum += tape.value(loss)(0, 0);
      } catch (const NumericError& e) {
        throw NumericError("training diverged at epoch " + std::to_string(epoch) + " (" +
                           e.what() + "); try a smaller learning rate (train.lr=" +
                           std::to_string(config.learning_rate) + ")");
      }
      ++batches;
      if (config.optimizer == OptimizerKind::kAdam) {
        ApplyStep(adam, tape, trainable);
      } else {
        ApplyStep(sgd, tape, trainable);
      }
    }
    const double val_auc = Evaluate(model, data, data.validation).auc;
    state.history.push_back({epoch, loss_sum / static_cast<double>(batches), val_auc});
    if (val_auc > state.best_validation_auc) {
      state.best_validation_auc = val_auc;
      state.best_epoch = epoch;
      state.best = model;
    } else if (epoch - state.best_epoch >= config.patience) {
      break;
    }
  }
  return state;
}

std::vector<double> FitClassifier(const Matrix& embeddings, std::span<const double> labels,
                                  ClassifierParams& params, const TrainConfig& config) {
  config.Validate();
  std::vector<Parameter*> trainable{&params.w1, &params.b1, &params.w2, &params.b2};
  Adam adam(config.learning_rate);
  Sgd sgd(config.learning_rate);
  std::vector<double> auc_history;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    Tape tape;
    Var probs = Classify(tape, tape.Constant(embeddings), params);
    std::vector<Var> bound;
    for (const Parameter* p : trainable) bound.push_back(tape.Bind(*p));
    Var loss = PredictionLoss(tape, probs, labels, bound, config.l2);
    tape.Backward(loss);
    if (config.optimizer == OptimizerKind::kAdam) {
      ApplyStep(adam, tape, trainable);
    } else {
      ApplyStep(sgd, tape, trainable);
    }
    Tape eval;
    const Matrix& p = eval.value(Classify(eval, eval.Constant(embeddings), params));
    auc_history.push_back(EvaluateScores(p.values(), labels).auc);
  }
  return auc_history;
}

}  // namespace hyperneg
