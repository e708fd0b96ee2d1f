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
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "hyperneg/hypergraph.hpp"
#include "hyperneg/rng.hpp"
#include "hyperneg/tape.hpp"
#include "hyperneg/tensor.hpp"

namespace hyperneg {

enum class SamplerStrategy {
  kSNS,           // sized: uniform node draw
  kMNS,           // motif: merge neighboring hyperedges
  kCNS,           // clique: swap one node for a common neighbor
  kHNS,           // SNS negatives + attention-weighted positive injection
  kRandomInject,  // SNS negatives + injection of one random positive
  kWithout,       // SNS negatives, no injection
};

std::string_view StrategyName(SamplerStrategy strategy);
SamplerStrategy ParseStrategy(std::string_view name);
// True for the strategies that synthesize in embedding space.
bool Injects(SamplerStrategy strategy);

struct SamplerConfig {
  SamplerStrategy strategy = SamplerStrategy::kSNS;
  // Injection strength; set iff the strategy injects.
  std::optional<double> alpha;
  std::uint64_t seed = 0;
  std::size_t negatives_per_positive = 1;
  // Treat the synthesized positive as a constant during backprop.
  bool stop_gradient = false;

  void Validate() const;
};

// Graph-space negatives have at least this many members.
inline constexpr std::size_t kMinNegativeOrder = 2;

// Empirical distribution of hyperedge orders. Orders below
// kMinNegativeOrder are ignored.
class SizeDistribution {
 public:
  explicit SizeDistribution(const RowGroups& edges);
  explicit SizeDistribution(std::span<const std::size_t> sizes);

  std::size_t Sample(Rng& rng) const;
  std::size_t max_size() const { return counts_.size() - 1; }
  // counts()[k] = number of counted source hyperedges of order k.
  std::span<const std::size_t> counts() const { return counts_; }
  std::size_t total() const { return total_; }

 private:
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
  std::discrete_distribution<std::size_t>::param_type param_;
};

using NodeSet = std::vector<NodeId>;

// Negatives built in hyperedge space. Every set is sorted and absent from the
// index it was checked against.
struct GraphNegatives {
  std::vector<NodeSet> sets;
  RowGroups AsGroups() const;
};

inline constexpr std::size_t kSnsRejectionLimit = 1000;
inline constexpr std::size_t kHeuristicRetryLimit = 100;

// SNS: per sample, draw an order from `sizes`, then that many distinct nodes
// uniformly; redraw nodes while the set is observed or already emitted.
GraphNegatives SampleSized(std::size_t node_count, const EdgeIndex& observed,
                           const SizeDistribution& sizes, std::size_t count,
                           Rng& rng);
// SNS with a prescribed order per sample.
GraphNegatives SampleSizedMatching(std::size_t node_count, const EdgeIndex& observed,
                                   std::span<const std::size_t> orders, Rng& rng);

// Picks one of the candidate hyperedge indices; returns a position in the span.
using EdgePicker = std::function<std::size_t(std::span<const std::size_t>)>;

// One MNS growth from a fixed seed hyperedge. Starts from the seed (trimmed to
// target_size - 1 random members if it is not smaller than the target), then
// repeatedly unions a neighboring hyperedge that adds new nodes. When the
// last merge overshoots, a uniform subset of its new nodes is kept. Returns
// nullopt if no neighbor is available before reaching the target. Does not
// check membership in E.
std::optional<NodeSet> GrowMotif(const Hypergraph& g, std::size_t seed_edge,
                                  std::size_t target_size, Rng& rng,
                                  const EdgePicker& pick = {});
// MNS with uniform seed choice and rejection against `observed`.
NodeSet SampleMotif(const Hypergraph& g, const EdgeIndex& observed,
                    std::size_t target_size, Rng& rng);

// Nodes that share at least one hyperedge with every node in `nodes`,
// excluding `nodes` themselves. Empty input yields an empty set.
std::vector<NodeId> CommonNeighbors(const Hypergraph& g, std::span<const NodeId> nodes);
// One CNS move: drop `removed` from hyperedge `edge` and add a uniformly
// chosen common neighbor of the rest that is not already a member. nullopt
// when no candidate exists. Does not check membership in E.
std::optional<NodeSet> ReplaceWithCommonNeighbor(const Hypergraph& g, std::size_t edge,
                                                 NodeId removed, Rng& rng);
// CNS with uniform (edge, node) choice and rejection against `observed`.
NodeSet SampleClique(const Hypergraph& g, const EdgeIndex& observed, Rng& rng);

// Embedding-space negatives recorded on a tape.
struct InjectedNegatives {
  Var embeddings;  // m2 x h
  Var weights;     // m2 x m1, rows sum to 1
};

// HNS: s = softmax(easy * positives^T / sqrt(h)), e' = s * positives,
// out = (1 - alpha) * easy + alpha * e'.
InjectedNegatives InjectHard(Tape& tape, Var easy, Var positives, double alpha,
                             bool stop_gradient = false);
// Same convex combination with a one-hot weight row at a uniformly chosen
// positive.
InjectedNegatives InjectRandom(Tape& tape, Var easy, Var positives, double alpha,
                               Rng& rng, bool stop_gradient = false);

struct HardNegativeBatch {
  Matrix embeddings;                 // m2 x h
  Matrix weights;                    // m2 x m1
  std::vector<std::size_t> sources;  // easy-negative row behind each output row
};

HardNegativeBatch SynthesizeHardNegatives(const Matrix& easy, const Matrix& positives,
                                          double alpha);
HardNegativeBatch SynthesizeRandomNegatives(const Matrix& easy,
                                            const Matrix& positives, double alpha,
                                            Rng& rng);

}  // namespace hyperneg
