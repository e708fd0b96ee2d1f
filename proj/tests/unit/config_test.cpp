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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperneg/config.hpp"
#include "hyperneg/error.hpp"

namespace hyperneg {
namespace {

KeyValueDocument ParseText(const std::string& text) {
  std::istringstream in(text);
  return KeyValueDocument::Parse(in);
}

TEST(KeyValueDocumentTest, ParsesCommentsAndOverrides) {
  const auto doc = ParseText(
      "# comment\n"
      "\n"
      "  train.lr = 0.01  \n"
      "seeds=1,2\n"
      "train.lr = 0.02\n");
  ASSERT_EQ(doc.entries().size(), 2u);
  EXPECT_EQ(doc.Get("train.lr"), "0.02");
  EXPECT_EQ(doc.Get("seeds"), "1,2");
  EXPECT_FALSE(doc.Get("missing").has_value());
}

TEST(KeyValueDocumentTest, MalformedLineReportsLineNumber) {
  try {
    ParseText("a = 1\nno equals sign\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ParseText(" = 3\n"), ParseError);
}

TEST(ExperimentConfigTest, AppliesEveryKey) {
  ExperimentConfig c;
  c.Apply(ParseText(
      "dataset = data/x/hyperedges.txt\n"
      "encoder.dims = 16,16,8\n"
      "encoder.norm = row_mean\n"
      "encoder.combine = residual\n"
      "encoder.bias = true\n"
      "aggregator = mean\n"
      "classifier.hidden = 12\n"
      "train.epochs = 7\n"
      "train.batch = 32\n"
      "train.lr = 0.005\n"
      "train.lambda = 1e-4\n"
      "train.optimizer = sgd\n"
      "train.patience = 3\n"
      "sampler.train = MNS\n"
      "sampler.val = CNS\n"
      "sampler.alpha = 0.25\n"
      "sampler.ratio = 2\n"
      "sampler.stop_gradient = true\n"
      "sweep.alphas = 0, 0.5\n"
      "seeds = 4,9\n"
      "split.ratios = 0.8,0.1,0.1\n"
      "split.seed = 11\n"));
  EXPECT_EQ(c.model.encoder.dims, (std::vector<std::size_t>{16, 16, 8}));
  EXPECT_EQ(c.model.encoder.normalization, Normalization::kRowMean);
  EXPECT_EQ(c.model.encoder.combine, Combine::kResidual);
  EXPECT_TRUE(c.model.encoder.bias);
  EXPECT_EQ(c.model.hidden_dim(), 12u);
  EXPECT_EQ(c.train.epochs, 7u);
  EXPECT_EQ(c.train.batch_size, 32u);
  EXPECT_EQ(c.train.learning_rate, 0.005);
  EXPECT_EQ(c.train.l2, 1e-4);
  EXPECT_EQ(c.train.optimizer, OptimizerKind::kSgd);
  EXPECT_EQ(c.train_sampler, SamplerStrategy::kMNS);
  EXPECT_EQ(c.validation_sampler, SamplerStrategy::kCNS);
  EXPECT_EQ(c.alpha, 0.25);
  EXPECT_EQ(c.negatives_per_positive, 2u);
  EXPECT_TRUE(c.stop_gradient);
  EXPECT_EQ(c.alphas, (std::vector<double>{0.0, 0.5}));
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{4, 9}));
  EXPECT_EQ(c.split.train, 0.8);
  EXPECT_EQ(c.split_seed, 11u);
  EXPECT_EQ(c.ResolvedDatasetName(), "x");
  EXPECT_NO_THROW(c.Validate());
}

TEST(ExperimentConfigTest, EchoRoundTrips) {
  ExperimentConfig c;
  c.dataset = "/tmp/d/hyperedges.txt";
  c.train.learning_rate = 0.1 + 0.2;
  c.alphas = {0.0, 1.0 / 3.0};
  c.model.encoder.dims = {5, 3};
  ExperimentConfig back;
  for (const auto& [k, v] : c.Echo()) back.Apply(k, v);
  EXPECT_EQ(back.Echo(), c.Echo());
  EXPECT_EQ(back.train.learning_rate, c.train.learning_rate);
  EXPECT_EQ(back.alphas, c.alphas);
}

TEST(ExperimentConfigTest, RejectsBadValues) {
  ExperimentConfig c;
  EXPECT_THROW(c.Apply("train.bogus", "1"), ConfigError);
  EXPECT_THROW(c.Apply("train.epochs", "-3"), ConfigError);
  EXPECT_THROW(c.Apply("train.lr", "fast"), ConfigError);
  EXPECT_THROW(c.Apply("train.lr", "inf"), ConfigError);
  EXPECT_THROW(c.Apply("encoder.norm", "l2"), ConfigError);
  EXPECT_THROW(c.Apply("encoder.bias", "maybe"), ConfigError);
  EXPECT_THROW(c.Apply("split.ratios", "0.5,0.5"), ConfigError);
  EXPECT_THROW(c.Apply("dataset.header", "sometimes"), ConfigError);
}

TEST(ExperimentConfigTest, ValidateChecksRanges) {
  ExperimentConfig c;
  EXPECT_THROW(c.Validate(), ConfigError);  // no dataset
  c.dataset = "x.txt";
  EXPECT_NO_THROW(c.Validate());
  c.alpha = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
  c.alpha = 0.3;
  c.validation_sampler = SamplerStrategy::kHNS;
  EXPECT_THROW(c.Validate(), ConfigError);
  c.validation_sampler = SamplerStrategy::kSNS;
  c.alphas = {0.2, -0.1};
  EXPECT_THROW(c.Validate(), ConfigError);
  c.alphas = {0.2};
  c.seeds.clear();
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(ExperimentConfigTest, SamplerForSetsAlphaOnlyForInjectingStrategies) {
  ExperimentConfig c;
  c.alpha = 0.4;
  EXPECT_EQ(c.SamplerFor(SamplerStrategy::kHNS, std::nullopt, 3).alpha, 0.4);
  EXPECT_EQ(c.SamplerFor(SamplerStrategy::kHNS, 0.1, 3).alpha, 0.1);
  EXPECT_EQ(c.SamplerFor(SamplerStrategy::kHNS, 0.1, 3).seed, 3u);
  EXPECT_FALSE(c.SamplerFor(SamplerStrategy::kSNS, 0.1, 3).alpha.has_value());
}

TEST(LoadExperimentConfigTest, ResolvesPathsAgainstConfigDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "hyperneg_config_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "run.cfg";
  {
    std::ofstream out(path);
    out << "dataset = data/hyperedges.txt\nfeatures = feats.txt\n";
  }
  const ExperimentConfig c = LoadExperimentConfig(path);
  EXPECT_TRUE(c.dataset.is_absolute());
  EXPECT_EQ(c.dataset.filename(), "hyperedges.txt");
  EXPECT_EQ(c.dataset.parent_path().parent_path(),
            std::filesystem::absolute(dir).lexically_normal());
  EXPECT_EQ(c.feature_mode, FeatureMode::kFile);
  EXPECT_EQ(c.features, std::filesystem::absolute(dir / "feats.txt").lexically_normal());
  std::filesystem::remove_all(dir);
  EXPECT_THROW(LoadExperimentConfig(path), IoError);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.5), "0.5");
  EXPECT_EQ(FormatDouble(1.0), "1");
  EXPECT_EQ(std::stod(FormatDouble(0.1 + 0.2)), 0.1 + 0.2);
}

}  // namespace
}  // namespace hyperneg
