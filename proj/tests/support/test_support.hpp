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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "hyperneg/hypergraph.hpp"
#include "hyperneg/rng.hpp"
#include "hyperneg/tape.hpp"
#include "hyperneg/tensor.hpp"

namespace hyperneg::testing {

inline Matrix RandomMatrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                           double lo = -1.0, double hi = 1.0) {
  Rng rng = MakeRng(seed, 0x7e57);
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (double& x : m.values()) x = u(rng);
  return m;
}

inline Matrix NaiveMatMul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

inline double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  }
  return worst;
}

// Upper-tail p-value of Pearson's chi-squared statistic. Bins with zero
// expectation must have zero observations and are dropped.
inline double ChiSquaredPValue(std::span<const double> observed,
                               std::span<const double> expected) {
  double stat = 0.0;
  std::size_t bins = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] == 0.0) {
      if (observed[i] != 0.0) return 0.0;
      continue;
    }
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
    ++bins;
  }
  if (bins < 2) return 1.0;
  boost::math::chi_squared_distribution<double> dist(static_cast<double>(bins - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

struct MetricOracle {
  double auc = 0.0;
  double aupr = 0.0;
  double ndcg = 0.0;
  double mrr = 0.0;
};

// All-pairs AUC and list-walk ranking metrics. The list is sorted by
// descending score with negatives ahead of positives on ties.
inline MetricOracle BruteForceMetrics(std::span<const double> scores,
                                      std::span<const double> labels) {
  MetricOracle out;
  double t1 = 0.0, t2 = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1.0) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0.0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) t1 += 1.0;
      if (scores[i] == scores[j]) t2 += 1.0;
    }
  }
  if (pairs > 0) out.auc = (t1 + 0.5 * t2) / pairs;

  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return labels[a] < labels[b];
  });
  std::vector<double> ranks;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (labels[order[pos]] == 1.0) ranks.push_back(static_cast<double>(pos + 1));
  }
  if (ranks.empty()) return out;
  double precision_sum = 0.0, dcg = 0.0, ideal = 0.0, reciprocal = 0.0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    precision_sum += static_cast<double>(i + 1) / ranks[i];
    dcg += 1.0 / std::log2(1.0 + ranks[i]);
    ideal += 1.0 / std::log2(2.0 + static_cast<double>(i));
    reciprocal += 1.0 / ranks[i];
  }
  const double p = static_cast<double>(ranks.size());
  out.aupr = precision_sum / p;
  out.ndcg = dcg / ideal;
  out.mrr = reciprocal / p;
  return out;
}

// Builds a fresh tape, records the loss, and returns its scalar value.
using LossFn = std::function<Var(Tape&)>;

struct GradientCheck {
  double max_relative_error = 0.0;
  std::string worst;
  std::size_t checked = 0;
};

// Compares analytic gradients with central differences for every entry of
// `params`. Relative error is |a - n| / max(1, |a|, |n|).
inline GradientCheck CheckGradients(const LossFn& loss, std::span<Parameter* const> params,
                                    double eps = 1e-5) {
  Tape tape;
  Var out = loss(tape);
  tape.Backward(out);
  std::vector<Matrix> analytic;
  for (Parameter* p : params) analytic.push_back(tape.Gradient(*p));

  auto eval = [&] {
    Tape t;
    return t.value(loss(t))(0, 0);
  };
  GradientCheck result;
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto values = params[k]->value.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + eps;
      const double plus = eval();
      values[i] = saved - eps;
      const double minus = eval();
      values[i] = saved;
      const double numeric = (plus - minus) / (2.0 * eps);
      const double a = analytic[k].values()[i];
      const double rel =
          std::abs(a - numeric) / std::max({1.0, std::abs(a), std::abs(numeric)});
      ++result.checked;
      if (rel > result.max_relative_error) {
        result.max_relative_error = rel;
        result.worst = params[k]->name + "[" + std::to_string(i) + "]";
      }
    }
  }
  return result;
}

// Five-node example used for the MNS/CNS walkthrough: hyperedges {1,3,4},
// {4,5}, {1,2}, {2,3}. Node 0 is isolated so ids match the walkthrough.
inline Hypergraph HeuristicExampleGraph() {
  return Hypergraph(6, {{1, 3, 4}, {4, 5}, {1, 2}, {2, 3}});
}

// Communities of `block` nodes; hyperedges are drawn inside one community.
inline Hypergraph PlantedHypergraph(std::size_t communities, std::size_t block,
                                    std::size_t edges, std::uint64_t seed) {
  Rng rng = MakeRng(seed, 0x91a);
  std::uniform_int_distribution<std::size_t> pick_community(0, communities - 1);
  std::uniform_int_distribution<std::size_t> pick_order(2, 5);
  std::vector<std::vector<NodeId>> out;
  EdgeIndex seen;
  while (out.size() < edges) {
    const std::size_t c = pick_community(rng);
    const std::size_t k = std::min(pick_order(rng), block);
    std::vector<NodeId> members(block);
    for (std::size_t i = 0; i < block; ++i) members[i] = static_cast<NodeId>(c * block + i);
    std::shuffle(members.begin(), members.end(), rng);
    members.resize(k);
    std::sort(members.begin(), members.end());
    if (seen.Insert(members)) out.push_back(members);
  }
  return Hypergraph(communities * block, std::move(out));
}

}  // namespace hyperneg::testing
