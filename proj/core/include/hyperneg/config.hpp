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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperneg/hypergraph.hpp"
#include "hyperneg/sampler.hpp"
#include "hyperneg/trainer.hpp"

namespace hyperneg {

// Flat `key = value` document. Lines starting with '#' are comments;
// later assignments to the same key win.
class KeyValueDocument {
 public:
  static KeyValueDocument Parse(std::istream& in, std::string_view source = "<config>");
  static KeyValueDocument Load(const std::filesystem::path& path);

  void Set(std::string key, std::string value);
  std::optional<std::string> Get(std::string_view key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct ExperimentConfig {
  std::filesystem::path dataset;
  // Defaults to the dataset file's parent directory name.
  std::string dataset_name;
  HeaderMode header = HeaderMode::kAuto;
  FeatureMode feature_mode = FeatureMode::kOneHot;
  std::filesystem::path features;

  SplitRatios split;
  std::uint64_t split_seed = 0;

  ModelConfig model;
  TrainConfig train;

  SamplerStrategy train_sampler = SamplerStrategy::kHNS;
  SamplerStrategy validation_sampler = SamplerStrategy::kSNS;
  double alpha = 0.3;
  std::size_t negatives_per_positive = 1;
  bool stop_gradient = false;

  std::vector<double> alphas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 1.0};
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};

  void Validate() const;
  // Canonical key/value pairs; feeding them back through Apply
  // reproduces this config.
  std::vector<std::pair<std::string, std::string>> Echo() const;
  void Apply(std::string_view key, std::string_view value);
  void Apply(const KeyValueDocument& doc);

  std::string ResolvedDatasetName() const;
  LoadOptions LoadOptionsFor() const;
  SamplerConfig SamplerFor(SamplerStrategy strategy, std::optional<double> alpha,
                           std::uint64_t seed) const;
  TrainConfig TrainFor(std::uint64_t seed) const;
};

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// Shortest round-trip decimal form of a double.
std::string FormatDouble(double value);

}  // namespace hyperneg
