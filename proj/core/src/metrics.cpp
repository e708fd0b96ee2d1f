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

#include "hyperneg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hyperneg/error.hpp"

namespace hyperneg {
namespace {

void RequirePositive(const RankedResults& r, const char* metric) {
  if (r.positives() == 0) {
    throw InvalidArgument(std::string(metric) + " needs at least one positive");
  }
}

}  // namespace

RankedResults::RankedResults(std::span<const double> scores,
                             std::span<const double> labels)
    : scores_(scores.begin(), scores.end()), labels_(labels.begin(), labels.end()) {
  if (scores.size() != labels.size()) {
    throw InvalidArgument("score and label counts differ (" +
                          std::to_string(scores.size()) + " vs " +
                          std::to_string(labels.size()) + ")");
  }
  for (double y : labels_) {
    if (y != 0.0 && y != 1.0) throw InvalidArgument("labels must be 0 or 1");
  }
  for (double s : scores_) {
    if (std::isnan(s)) throw InvalidArgument("scores must not be NaN");
  }
  std::vector<std::size_t> order(scores_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    if (scores_[a] != scores_[b]) return scores_[a] > scores_[b];
    return labels_[a] < labels_[b];
  });
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (labels_[order[pos]] == 1.0) positive_ranks_.push_back(pos + 1);
  }
}

double Auc(const RankedResults& results) {
  const std::size_t p = results.positives();
  const std::size_t n = results.negatives();
  if (p == 0 || n == 0) throw InvalidArgument("AUC needs at least one positive and one negative");
  const auto scores = results.scores();
  const auto labels = results.labels();
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Sum of (tie-averaged) ascending ranks of the positives.
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    std::size_t block_positives = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      block_positives += labels[order[j]] == 1.0;
      ++j;
    }
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    rank_sum += mid_rank * static_cast<double>(block_positives);
    i = j;
  }
  const double pd = static_cast<double>(p);
  const double u = rank_sum - pd * (pd + 1.0) / 2.0;
  return u / (pd * static_cast<double>(n));
}

double Aupr(const RankedResults& results) {
  RequirePositive(results, "AUPR");
  const auto ranks = results.positive_ranks();
  double total = 0.0;
  for (std::size_t i = 1; i <= ranks.size(); ++i) {
    total += static_cast<double>(i) / static_cast<double>(ranks[i - 1]);
  }
  return total / static_cast<double>(ranks.size());
}

double AuprClosedForm(const RankedResults& results) {
  RequirePositive(results, "AUPR");
  const auto ranks = results.positive_ranks();
  double at = 0.0;
  double before = 0.0;
  for (std::size_t i = 1; i <= ranks.size(); ++i) {
    at += static_cast<double>(i) / static_cast<double>(ranks[i - 1]);
    if (i >= 2) {
      before += static_cast<double>(i - 1) / static_cast<double>(ranks[i - 1] - 1);
    }
  }
  return (at + before) / (2.0 * static_cast<double>(ranks.size()));
}

double Ndcg(const RankedResults& results) {
  RequirePositive(results, "NDCG");
  const auto ranks = results.positive_ranks();
  double dcg = 0.0;
  double ideal = 0.0;
  for (std::size_t i = 1; i <= ranks.size(); ++i) {
    dcg += 1.0 / std::log2(1.0 + static_cast<double>(ranks[i - 1]));
    ideal += 1.0 / std::log2(1.0 + static_cast<double>(i));
  }
  return dcg / ideal;
}

double Mrr(const RankedResults& results) {
  RequirePositive(results, "MRR");
  double total = 0.0;
  for (std::size_t r : results.positive_ranks()) total += 1.0 / static_cast<double>(r);
  return total / static_cast<double>(results.positives());
}

Confusion ConfusionAt(const RankedResults& results, double threshold) {
  Confusion c;
  const auto scores = results.scores();
  const auto labels = results.labels();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (labels[i] == 1.0) {
      predicted ? ++c.tp : ++c.fn;
    } else {
      predicted ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

EvalReport EvaluateScores(std::span<const double> scores, std::span<const double> labels) {
  const RankedResults ranked(scores, labels);
  EvalReport report;
  report.auc = Auc(ranked);
  report.aupr = Aupr(ranked);
  report.ndcg = Ndcg(ranked);
  report.mrr = Mrr(ranked);
  report.confusion = ConfusionAt(ranked, 0.5);
  return report;
}

}  // namespace hyperneg
