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

#include "hyperneg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "hyperneg/aggregator.hpp"
#include "hyperneg/error.hpp"

namespace hyperneg {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string Quote(std::string_view key, std::string_view value) {
  return std::string(key) + " = '" + std::string(value) + "'";
}

std::uint64_t ParseUnsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(Quote(key, value) + ": expected a non-negative integer");
  }
  return out;
}

double ParseReal(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out)) {
    throw ConfigError(Quote(key, value) + ": expected a finite number");
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(Quote(key, value) + ": expected true or false");
}

std::vector<std::string_view> SplitList(std::string_view value) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = value.find(',');
    out.push_back(Trim(value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T, typename F>
std::string JoinList(const std::vector<T>& items, F format) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += format(items[i]);
  }
  return out;
}

std::string_view NormalizationName(Normalization n) {
  return n == Normalization::kSymmetricDegree ? "symmetric_degree" : "row_mean";
}

std::string_view CombineName(Combine c) {
  return c == Combine::kReplace ? "replace" : "residual";
}

std::string_view HeaderName(HeaderMode h) {
  switch (h) {
    case HeaderMode::kPresent:
      return "present";
    case HeaderMode::kAbsent:
      return "absent";
    default:
      return "auto";
  }
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

KeyValueDocument KeyValueDocument::Parse(std::istream& in, std::string_view source) {
  KeyValueDocument doc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    const std::string_view key = Trim(text.substr(0, eq));
    if (key.empty()) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": empty key");
    }
    doc.Set(std::string(key), std::string(Trim(text.substr(eq + 1))));
  }
  return doc;
}

KeyValueDocument KeyValueDocument::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  return Parse(in, path.string());
}

void KeyValueDocument::Set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> KeyValueDocument::Get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void ExperimentConfig::Apply(std::string_view key, std::string_view value) {
  if (key == "dataset") {
    dataset = std::filesystem::path(std::string(value));
  } else if (key == "dataset.name") {
    dataset_name = value;
  } else if (key == "dataset.header") {
    if (value == "auto") {
      header = HeaderMode::kAuto;
    } else if (value == "present") {
      header = HeaderMode::kPresent;
    } else if (value == "absent") {
      header = HeaderMode::kAbsent;
    } else {
      throw ConfigError(Quote(key, value) + ": expected auto, present or absent");
    }
  } else if (key == "features") {
    if (value.empty() || value == "onehot") {
      feature_mode = FeatureMode::kOneHot;
      features.clear();
    } else {
      feature_mode = FeatureMode::kFile;
      features = std::filesystem::path(std::string(value));
    }
  } else if (key == "split.ratios") {
    const auto parts = SplitList(value);
    if (parts.size() != 3) throw ConfigError(Quote(key, value) + ": expected three ratios");
    split = {ParseReal(key, parts[0]), ParseReal(key, parts[1]), ParseReal(key, parts[2])};
  } else if (key == "split.seed") {
    split_seed = ParseUnsigned(key, value);
  } else if (key == "encoder.dims") {
    model.encoder.dims.clear();
    for (auto part : SplitList(value)) model.encoder.dims.push_back(ParseUnsigned(key, part));
  } else if (key == "encoder.norm") {
    if (value == "symmetric_degree") {
      model.encoder.normalization = Normalization::kSymmetricDegree;
    } else if (value == "row_mean") {
      model.encoder.normalization = Normalization::kRowMean;
    } else {
      throw ConfigError(Quote(key, value) + ": expected symmetric_degree or row_mean");
    }
  } else if (key == "encoder.combine") {
    if (value == "replace") {
      model.encoder.combine = Combine::kReplace;
    } else if (value == "residual") {
      model.encoder.combine = Combine::kResidual;
    } else {
      throw ConfigError(Quote(key, value) + ": expected replace or residual");
    }
  } else if (key == "encoder.bias") {
    model.encoder.bias = ParseBool(key, value);
  } else if (key == "aggregator") {
    model.aggregator = ParseAggregator(value);
  } else if (key == "classifier.hidden") {
    model.classifier_hidden = ParseUnsigned(key, value);
  } else if (key == "train.epochs") {
    train.epochs = ParseUnsigned(key, value);
  } else if (key == "train.batch") {
    train.batch_size = ParseUnsigned(key, value);
  } else if (key == "train.lr") {
    train.learning_rate = ParseReal(key, value);
  } else if (key == "train.lambda") {
    train.l2 = ParseReal(key, value);
  } else if (key == "train.optimizer") {
    train.optimizer = ParseOptimizer(value);
  } else if (key == "train.patience") {
    train.patience = ParseUnsigned(key, value);
  } else if (key == "sampler.train") {
    train_sampler = ParseStrategy(value);
  } else if (key == "sampler.val") {
    validation_sampler = ParseStrategy(value);
  } else if (key == "sampler.alpha") {
    alpha = ParseReal(key, value);
  } else if (key == "sampler.ratio") {
    negatives_per_positive = ParseUnsigned(key, value);
  } else if (key == "sampler.stop_gradient") {
    stop_gradient = ParseBool(key, value);
  } else if (key == "sweep.alphas") {
    alphas.clear();
    for (auto part : SplitList(value)) alphas.push_back(ParseReal(key, part));
  } else if (key == "seeds") {
    seeds.clear();
    for (auto part : SplitList(value)) seeds.push_back(ParseUnsigned(key, part));
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void ExperimentConfig::Apply(const KeyValueDocument& doc) {
  for (const auto& [key, value] : doc.entries()) Apply(key, value);
}

void ExperimentConfig::Validate() const {
  if (dataset.empty()) throw ConfigError("'dataset' is required");
  if (feature_mode == FeatureMode::kFile && features.empty()) {
    throw ConfigError("'features' must name a file");
  }
  model.encoder.Validate();
  train.Validate();
  if (validation_sampler != SamplerStrategy::kSNS &&
      validation_sampler != SamplerStrategy::kMNS &&
      validation_sampler != SamplerStrategy::kCNS) {
    throw ConfigError("sampler.val must be SNS, MNS or CNS");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("sampler.alpha must lie in [0, 1]");
  if (negatives_per_positive == 0) throw ConfigError("sampler.ratio must be positive");
  if (alphas.empty()) throw ConfigError("sweep.alphas must not be empty");
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("sweep.alphas must lie in [0, 1]");
  }
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::Echo() const {
  const auto u = [](std::uint64_t v) { return std::to_string(v); };
  return {
      {"dataset", dataset.string()},
      {"dataset.name", ResolvedDatasetName()},
      {"dataset.header", std::string(HeaderName(header))},
      {"features", feature_mode == FeatureMode::kOneHot ? "onehot" : features.string()},
      {"split.ratios", FormatDouble(split.train) + "," + FormatDouble(split.validation) +
                           "," + FormatDouble(split.test)},
      {"split.seed", u(split_seed)},
      {"encoder.dims", JoinList(model.encoder.dims, u)},
      {"encoder.norm", std::string(NormalizationName(model.encoder.normalization))},
      {"encoder.combine", std::string(CombineName(model.encoder.combine))},
      {"encoder.bias", model.encoder.bias ? "true" : "false"},
      {"aggregator", std::string(AggregatorName(model.aggregator))},
      {"classifier.hidden", u(model.hidden_dim())},
      {"train.epochs", u(train.epochs)},
      {"train.batch", u(train.batch_size)},
      {"train.lr", FormatDouble(train.learning_rate)},
      {"train.lambda", FormatDouble(train.l2)},
      {"train.optimizer", std::string(OptimizerName(train.optimizer))},
      {"train.patience", u(train.patience)},
      {"sampler.train", std::string(StrategyName(train_sampler))},
      {"sampler.val", std::string(StrategyName(validation_sampler))},
      {"sampler.alpha", FormatDouble(alpha)},
      {"sampler.ratio", u(negatives_per_positive)},
      {"sampler.stop_gradient", stop_gradient ? "true" : "false"},
      {"sweep.alphas", JoinList(alphas, FormatDouble)},
      {"seeds", JoinList(seeds, u)},
  };
}

std::string ExperimentConfig::ResolvedDatasetName() const {
  if (!dataset_name.empty()) return dataset_name;
  const auto parent = dataset.parent_path().filename().string();
  return parent.empty() ? dataset.stem().string() : parent;
}

LoadOptions ExperimentConfig::LoadOptionsFor() const {
  LoadOptions options;
  options.header = header;
  options.feature_mode = feature_mode;
  if (feature_mode == FeatureMode::kFile) options.feature_path = features;
  return options;
}

SamplerConfig ExperimentConfig::SamplerFor(SamplerStrategy strategy,
                                           std::optional<double> a,
                                           std::uint64_t seed) const {
  SamplerConfig out;
  out.strategy = strategy;
  if (Injects(strategy)) out.alpha = a.value_or(alpha);
  out.seed = seed;
  out.negatives_per_positive = negatives_per_positive;
  out.stop_gradient = stop_gradient;
  return out;
}

TrainConfig ExperimentConfig::TrainFor(std::uint64_t seed) const {
  TrainConfig out = train;
  out.seed = seed;
  return out;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  ExperimentConfig config;
  config.Apply(KeyValueDocument::Load(path));
  const auto base = path.parent_path();
  if (!config.dataset.empty() && config.dataset.is_relative()) {
    config.dataset = std::filesystem::absolute(base / config.dataset).lexically_normal();
  }
  if (config.feature_mode == FeatureMode::kFile && config.features.is_relative()) {
    config.features = std::filesystem::absolute(base / config.features).lexically_normal();
  }
  return config;
}

}  // namespace hyperneg
