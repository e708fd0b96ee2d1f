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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hyperneg/error.hpp"
#include "hyperneg/trainer.hpp"
#include "test_support.hpp"

namespace hyperneg {
namespace {

using testing::RandomMatrix;

class TrainerTest : public ::testing::Test {
 protected:
  TrainerTest()
      : graph_(testing::PlantedHypergraph(4, 8, 90, 3)),
        data_(PrepareTrainingData(graph_, SplitEdges(graph_.edge_count(), {}, 1),
                                  Normalization::kSymmetricDegree, SamplerStrategy::kSNS, 1)) {
    model_config_.encoder.dims = {8, 8};
    train_config_.epochs = 8;
    train_config_.batch_size = 16;
    train_config_.learning_rate = 0.01;
    train_config_.patience = 100;
  }

  Model FreshModel(std::uint64_t seed = 0) const {
    return InitModel(model_config_, graph_.feature_dim(), seed);
  }

  static SamplerConfig Sampler(SamplerStrategy s, std::optional<double> alpha = std::nullopt) {
    SamplerConfig c;
    c.strategy = s;
    c.alpha = alpha;
    return c;
  }

  Hypergraph graph_;
  TrainingData data_;
  ModelConfig model_config_;
  TrainConfig train_config_;
};

TEST_F(TrainerTest, PreparedDataIsBalancedAndLeakFree) {
  EXPECT_EQ(data_.train_graph.edge_count(), data_.split.train.size());
  EXPECT_EQ(data_.propagation.incidence().edges(), data_.split.train.size());
  for (const CandidateSet* set : {&data_.validation, &data_.test}) {
    const auto positives = std::count(set->labels.begin(), set->labels.end(), 1.0);
    EXPECT_EQ(static_cast<std::size_t>(positives) * 2, set->size());
    for (std::size_t q = 0; q < set->size(); ++q) {
      if (set->labels[q] == 0.0) {
        EXPECT_FALSE(graph_.index().Contains(set->hyperedges[q]));
      }
    }
  }
  // Negatives are order-matched to the held-out positives.
  const std::size_t half = data_.test.size() / 2;
  for (std::size_t q = 0; q < half; ++q) {
    EXPECT_EQ(data_.test.hyperedges[q].size(), data_.test.hyperedges[q + half].size());
  }
}

TEST_F(TrainerTest, SameSeedGivesIdenticalHistory) {
  const auto a = Train(data_, FreshModel(), Sampler(SamplerStrategy::kHNS, 0.3), train_config_);
  const auto b = Train(data_, FreshModel(), Sampler(SamplerStrategy::kHNS, 0.3), train_config_);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    EXPECT_EQ(a.history[i].loss, b.history[i].loss);
    EXPECT_EQ(a.history[i].validation_auc, b.history[i].validation_auc);
  }
}

TEST_F(TrainerTest, AlphaZeroMatchesWithoutInjection) {
  const auto hns = Train(data_, FreshModel(), Sampler(SamplerStrategy::kHNS, 0.0), train_config_);
  const auto plain = Train(data_, FreshModel(), Sampler(SamplerStrategy::kWithout), train_config_);
  ASSERT_EQ(hns.history.size(), plain.history.size());
  for (std::size_t i = 0; i < hns.history.size(); ++i) {
    EXPECT_EQ(hns.history[i].loss, plain.history[i].loss);
    EXPECT_EQ(hns.history[i].validation_auc, plain.history[i].validation_auc);
  }
}

TEST_F(TrainerTest, BestCheckpointIsMaxOfHistory) {
  const auto state = Train(data_, FreshModel(), Sampler(SamplerStrategy::kSNS), train_config_);
  double best = -1.0;
  std::size_t best_epoch = 0;
  for (const auto& r : state.history) {
    if (r.validation_auc > best) {
      best = r.validation_auc;
      best_epoch = r.epoch;
    }
  }
  EXPECT_EQ(state.best_validation_auc, best);
  EXPECT_EQ(state.best_epoch, best_epoch);
  EXPECT_EQ(Evaluate(state.best, data_, data_.validation).auc, best);
}

TEST_F(TrainerTest, EarlyStoppingHonorsPatience) {
  train_config_.epochs = 200;
  train_config_.patience = 3;
  train_config_.learning_rate = 1e-9;
  const auto state = Train(data_, FreshModel(), Sampler(SamplerStrategy::kSNS), train_config_);
  EXPECT_LT(state.history.size(), 200u);
  EXPECT_EQ(state.history.size(), state.best_epoch + 3);
}

TEST_F(TrainerTest, HugePenaltyShrinksParameters) {
  train_config_.l2 = 1e6;
  train_config_.epochs = 5;
  const Model init = FreshModel();
  const auto state = Train(data_, init, Sampler(SamplerStrategy::kSNS), train_config_);
  EXPECT_LT(state.best.SquaredNorm(), init.SquaredNorm());
}

TEST_F(TrainerTest, FrozenEncoderStaysFixed) {
  train_config_.freeze_encoder = true;
  const Model init = FreshModel();
  const auto state = Train(data_, init, Sampler(SamplerStrategy::kSNS), train_config_);
  EXPECT_EQ(state.best.encoder.weights[0].value, init.encoder.weights[0].value);
}

TEST_F(TrainerTest, HeuristicAndRandomStrategiesTrain) {
  train_config_.epochs = 2;
  for (auto s : {SamplerStrategy::kMNS, SamplerStrategy::kCNS}) {
    const auto state = Train(data_, FreshModel(), Sampler(s), train_config_);
    EXPECT_EQ(state.history.size(), 2u);
  }
  const auto state =
      Train(data_, FreshModel(), Sampler(SamplerStrategy::kRandomInject, 0.3), train_config_);
  EXPECT_EQ(state.history.size(), 2u);
}

TEST_F(TrainerTest, DivergenceReportsLearningRate) {
  train_config_.optimizer = OptimizerKind::kSgd;
  train_config_.learning_rate = 1e300;
  try {
    Train(data_, FreshModel(), Sampler(SamplerStrategy::kSNS), train_config_);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("learning rate"), std::string::npos) << e.what();
  }
}

TEST(TrainConfigTest, Validates) {
  TrainConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.learning_rate = 0.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.l2 = -1.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.epochs = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_EQ(ParseOptimizer(OptimizerName(OptimizerKind::kSgd)), OptimizerKind::kSgd);
}

TEST(OptimizerTest, AdamFirstStepMovesByLearningRate) {
  Parameter w{"w", Matrix::FromRows({{1.0, -2.0}})};
  std::vector<Parameter*> params{&w};
  const std::vector<Matrix> grads{Matrix::FromRows({{0.5, -3.0}})};
  Adam adam(0.1);
  adam.Step(params, grads);
  // Bias-corrected first step is lr * g / (|g| + eps).
  EXPECT_NEAR(w.value(0, 0), 1.0 - 0.1, 1e-7);
  EXPECT_NEAR(w.value(0, 1), -2.0 + 0.1, 1e-7);
}

TEST(OptimizerTest, SgdStepDecreasesSingleSampleLoss) {
  auto params = InitClassifierParams(4, 4, 3);
  const Matrix e = RandomMatrix(1, 4, 2);
  const std::vector<double> label{1.0};
  std::vector<Parameter*> all{&params.w1, &params.b1, &params.w2, &params.b2};
  auto loss_value = [&](Tape& t) {
    std::vector<Var> bound;
    for (auto* p : all) bound.push_back(t.Bind(*p));
    return PredictionLoss(t, Classify(t, t.Constant(e), params), label, bound, 0.0);
  };
  Tape t;
  Var loss = loss_value(t);
  t.Backward(loss);
  const double before = t.value(loss)(0, 0);
  std::vector<Matrix> grads;
  for (auto* p : all) grads.push_back(t.Gradient(*p));
  Sgd(1e-4).Step(all, grads);
  Tape after;
  EXPECT_LT(after.value(loss_value(after))(0, 0), before);
}

TEST(FitClassifierTest, SeparableEmbeddingsReachPerfectAuc) {
  Rng rng = MakeRng(8, 0);
  std::normal_distribution<double> noise(0.0, 0.3);
  Matrix e(60, 4);
  std::vector<double> labels(60);
  for (std::size_t q = 0; q < 60; ++q) {
    labels[q] = q % 2 == 0 ? 1.0 : 0.0;
    const double shift = labels[q] == 1.0 ? 2.0 : -2.0;
    for (std::size_t c = 0; c < 4; ++c) e(q, c) = shift + noise(rng);
  }
  auto params = InitClassifierParams(4, 4, 1);
  TrainConfig config;
  config.epochs = 200;
  config.learning_rate = 0.01;
  const auto history = FitClassifier(e, labels, params, config);
  ASSERT_EQ(history.size(), 200u);
  EXPECT_EQ(*std::max_element(history.begin(), history.end()), 1.0);
}

TEST(CandidateTest, LabelsFollowPositivesThenNegatives) {
  const Hypergraph g(5, {{0, 1}, {1, 2}, {3, 4}});
  GraphNegatives neg;
  neg.sets = {{0, 4}};
  const std::vector<std::size_t> pos{2, 0};
  const CandidateSet set = MakeCandidates(g, pos, neg);
  EXPECT_EQ(set.labels, (std::vector<double>{1, 1, 0}));
  EXPECT_EQ(set.hyperedges[0][0], 3u);
  EXPECT_EQ(set.hyperedges[2][1], 4u);
}

}  // namespace
}  // namespace hyperneg
