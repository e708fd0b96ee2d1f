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
#include <span>
#include <vector>

namespace hyperneg {

// Scores with 0/1 labels, plus the 1-based ranks of the positives when the
// items are ordered by descending score. Ties are broken pessimistically:
// within a block of equal scores every negative ranks above every positive.
class RankedResults {
 public:
  RankedResults(std::span<const double> scores, std::span<const double> labels);

  std::size_t size() const { return scores_.size(); }
  std::size_t positives() const { return positive_ranks_.size(); }
  std::size_t negatives() const { return size() - positives(); }
  std::span<const double> scores() const { return scores_; }
  std::span<const double> labels() const { return labels_; }
  // Ascending.
  std::span<const std::size_t> positive_ranks() const { return positive_ranks_; }

 private:
  std::vector<double> scores_;
  std::vector<double> labels_;
  std::vector<std::size_t> positive_ranks_;
};

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

// (t1 + t2 / 2) / (|P| |N|) with exact tie counting, via tie-averaged rank
// sums in O(N log N).
double Auc(const RankedResults& results);
// Average precision: (1 / |P|) sum_i i / r_i.
double Aupr(const RankedResults& results);
// Trapezoid closed form (1 / 2|P|) [sum_i i / r_i + sum_{i>=2} (i-1) / (r_i - 1)]:
// each recall step is bounded by the precision just before and just at the
// i-th positive, and the first step's left edge contributes zero.
double AuprClosedForm(const RankedResults& results);
double Ndcg(const RankedResults& results);
double Mrr(const RankedResults& results);
// Predicted positive iff score >= threshold.
Confusion ConfusionAt(const RankedResults& results, double threshold);

struct EvalReport {
  double auc = 0.0;
  double aupr = 0.0;
  double ndcg = 0.0;
  double mrr = 0.0;
  Confusion confusion;  // at threshold 0.5
};

EvalReport EvaluateScores(std::span<const double> scores, std::span<const double> labels);

}  // namespace hyperneg
