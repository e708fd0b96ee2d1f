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

#include "hyperneg/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hyperneg/error.hpp"

namespace hyperneg {
namespace {

void CheckInjectionInputs(const Matrix& easy, const Matrix& positives, double alpha) {
  if (positives.rows() == 0) {
    throw InvalidArgument("injection needs at least one positive embedding");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("injection strength alpha=" + std::to_string(alpha) +
                          " is outside [0, 1]");
  }
  if (easy.cols() != positives.cols()) {
    throw ShapeError("negative embeddings are " + easy.ShapeString() +
                     " but positive embeddings are " + positives.ShapeString());
  }
}

NodeSet DrawDistinct(std::size_t node_count, std::size_t k, Rng& rng) {
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(node_count - 1));
  NodeSet set;
  set.reserve(k);
  while (set.size() < k) {
    const NodeId v = pick(rng);
    if (std::find(set.begin(), set.end(), v) == set.end()) set.push_back(v);
  }
  std::sort(set.begin(), set.end());
  return set;
}

std::size_t PickIndex(std::size_t n, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Uniform k-subset of `items` (order of `items` is not preserved).
std::vector<NodeId> PickSubset(std::vector<NodeId> items, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + PickIndex(items.size() - i, rng);
    std::swap(items[i], items[j]);
  }
  items.resize(k);
  return items;
}

}  // namespace

std::string_view StrategyName(SamplerStrategy strategy) {
  switch (strategy) {
    case SamplerStrategy::kSNS:
      return "SNS";
    case SamplerStrategy::kMNS:
      return "MNS";
    case SamplerStrategy::kCNS:
      return "CNS";
    case SamplerStrategy::kHNS:
      return "HNS";
    case SamplerStrategy::kRandomInject:
      return "Random";
    case SamplerStrategy::kWithout:
      return "Without";
  }
  return "SNS";
}

SamplerStrategy ParseStrategy(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "SNS") return SamplerStrategy::kSNS;
  if (upper == "MNS") return SamplerStrategy::kMNS;
  if (upper == "CNS") return SamplerStrategy::kCNS;
  if (upper == "HNS") return SamplerStrategy::kHNS;
  if (upper == "RANDOM" || upper == "RANDOMINJECT") return SamplerStrategy::kRandomInject;
  if (upper == "WITHOUT") return SamplerStrategy::kWithout;
  throw ConfigError("unknown sampler strategy '" + std::string(name) +
                    "' (expected SNS, MNS, CNS, HNS, Random or Without)");
}

bool Injects(SamplerStrategy strategy) {
  return strategy == SamplerStrategy::kHNS ||
         strategy == SamplerStrategy::kRandomInject;
}

void SamplerConfig::Validate() const {
  if (negatives_per_positive < 1) {
    throw ConfigError("negatives per positive must be at least 1");
  }
  if (Injects(strategy)) {
    if (!alpha) {
      throw ConfigError(std::string(StrategyName(strategy)) +
                        " needs an injection strength alpha");
    }
    if (!(*alpha >= 0.0 && *alpha <= 1.0)) {
      throw ConfigError("alpha=" + std::to_string(*alpha) + " is outside [0, 1]");
    }
  } else if (alpha) {
    throw ConfigError(std::string(StrategyName(strategy)) +
                      " does not inject; alpha must not be set");
  }
}

SizeDistribution::SizeDistribution(const RowGroups& edges) {
  std::vector<std::size_t> sizes(edges.size());
  for (std::size_t j = 0; j < edges.size(); ++j) sizes[j] = edges[j].size();
  *this = SizeDistribution(sizes);
}

SizeDistribution::SizeDistribution(std::span<const std::size_t> sizes) {
  if (sizes.empty()) throw InvalidArgument("size distribution needs at least one hyperedge");
  const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
  counts_.assign(largest + 1, 0);
  for (std::size_t s : sizes) {
    if (s >= kMinNegativeOrder) {
      ++counts_[s];
      ++total_;
    }
  }
  if (total_ == 0) {
    throw InvalidArgument("size distribution needs a hyperedge with at least " +
                          std::to_string(kMinNegativeOrder) + " members");
  }
  param_ = std::discrete_distribution<std::size_t>::param_type(counts_.begin(), counts_.end());
}

std::size_t SizeDistribution::Sample(Rng& rng) const {
  std::discrete_distribution<std::size_t> dist(param_);
  return dist(rng);
}

RowGroups GraphNegatives::AsGroups() const {
  RowGroups groups;
  for (const auto& s : sets) groups.Add(s);
  return groups;
}

GraphNegatives SampleSizedMatching(std::size_t node_count, const EdgeIndex& observed,
                                   std::span<const std::size_t> orders, Rng& rng) {
  GraphNegatives out;
  out.sets.reserve(orders.size());
  EdgeIndex emitted;
  for (std::size_t order : orders) {
    if (order == 0 || order > node_count) {
      throw SamplingError("cannot draw a hyperedge of order " + std::to_string(order) +
                          " from " + std::to_string(node_count) + " nodes");
    }
    std::size_t rejections = 0;
    while (true) {
      NodeSet candidate = DrawDistinct(node_count, order, rng);
      if (!observed.Contains(candidate) && emitted.Insert(candidate)) {
        out.sets.push_back(std::move(candidate));
        break;
      }
      if (++rejections >= kSnsRejectionLimit) {
        throw SamplingError(
            "SNS rejected " + std::to_string(kSnsRejectionLimit) +
            " consecutive candidates of order " + std::to_string(order) +
            "; the hypergraph is too dense for the requested number of negatives");
      }
    }
  }
  return out;
}

GraphNegatives SampleSized(std::size_t node_count, const EdgeIndex& observed,
                           const SizeDistribution& sizes, std::size_t count,
                           Rng& rng) {
  if (count == 0) throw InvalidArgument("SNS count must be at least 1");
  std::vector<std::size_t> orders(count);
  for (auto& o : orders) o = sizes.Sample(rng);
  return SampleSizedMatching(node_count, observed, orders, rng);
}

std::optional<NodeSet> GrowMotif(const Hypergraph& g, std::size_t seed_edge,
                                  std::size_t target_size, Rng& rng,
                                  const EdgePicker& pick) {
  if (seed_edge >= g.edge_count()) {
    throw InvalidArgument("seed hyperedge " + std::to_string(seed_edge) + " out of range");
  }
  if (target_size < 2) throw InvalidArgument("MNS target size must be at least 2");
  const auto seed = g.edge(seed_edge);
  NodeSet current(seed.begin(), seed.end());
  if (current.size() >= target_size) {
    current = PickSubset(std::move(current), target_size - 1, rng);
  }
  std::vector<char> member(g.node_count(), 0);
  for (NodeId v : current) member[v] = 1;

  const auto& h = g.incidence();
  while (current.size() < target_size) {
    // Neighboring hyperedges that would contribute at least one new node.
    std::vector<std::size_t> candidates;
    std::vector<char> seen(g.edge_count(), 0);
    for (NodeId v : current) {
      for (std::uint32_t e : h.row(v)) {
        if (seen[e]) continue;
        seen[e] = 1;
        const auto nodes = g.edge(e);
        if (std::any_of(nodes.begin(), nodes.end(),
                        [&](NodeId u) { return !member[u]; })) {
          candidates.push_back(e);
        }
      }
    }
    if (candidates.empty()) return std::nullopt;
    std::sort(candidates.begin(), candidates.end());
    const std::size_t choice =
        pick ? pick(candidates) : PickIndex(candidates.size(), rng);
    if (choice >= candidates.size()) throw InvalidArgument("edge picker out of range");

    std::vector<NodeId> fresh;
    for (NodeId u : g.edge(candidates[choice])) {
      if (!member[u]) fresh.push_back(u);
    }
    const std::size_t room = target_size - current.size();
    if (fresh.size() > room) fresh = PickSubset(std::move(fresh), room, rng);
    for (NodeId u : fresh) {
      member[u] = 1;
      current.push_back(u);
    }
  }
  std::sort(current.begin(), current.end());
  return current;
}

NodeSet SampleMotif(const Hypergraph& g, const EdgeIndex& observed,
                    std::size_t target_size, Rng& rng) {
  if (g.edge_count() == 0) throw SamplingError("MNS on a hypergraph without hyperedges");
  for (std::size_t attempt = 0; attempt < kHeuristicRetryLimit; ++attempt) {
    const std::size_t seed = PickIndex(g.edge_count(), rng);
    auto grown = GrowMotif(g, seed, target_size, rng);
    if (grown && !observed.Contains(*grown)) return *grown;
  }
  throw SamplingError("MNS found no unobserved merge of order " +
                      std::to_string(target_size) + " after " +
                      std::to_string(kHeuristicRetryLimit) +
                      " seed hyperedges; the hypergraph has too few neighboring "
                      "hyperedges");
}

std::vector<NodeId> CommonNeighbors(const Hypergraph& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) return {};
  const auto& h = g.incidence();
  std::vector<std::uint32_t> hits(g.node_count(), 0);
  std::vector<std::uint32_t> stamp(g.node_count(), UINT32_MAX);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const NodeId u = nodes[k];
    for (std::uint32_t e : h.row(u)) {
      for (NodeId w : g.edge(e)) {
        if (w == u || stamp[w] == k) continue;
        stamp[w] = static_cast<std::uint32_t>(k);
        ++hits[w];
      }
    }
  }
  std::vector<NodeId> common;
  for (std::size_t w = 0; w < g.node_count(); ++w) {
    if (hits[w] == nodes.size() &&
        std::find(nodes.begin(), nodes.end(), static_cast<NodeId>(w)) == nodes.end()) {
      common.push_back(static_cast<NodeId>(w));
    }
  }
  return common;
}

std::optional<NodeSet> ReplaceWithCommonNeighbor(const Hypergraph& g, std::size_t edge,
                                                 NodeId removed, Rng& rng) {
  if (edge >= g.edge_count()) {
    throw InvalidArgument("hyperedge " + std::to_string(edge) + " out of range");
  }
  const auto members = g.edge(edge);
  if (std::find(members.begin(), members.end(), removed) == members.end()) {
    throw InvalidArgument("node " + std::to_string(removed) + " is not in hyperedge " +
                          std::to_string(edge));
  }
  NodeSet rest;
  for (NodeId v : members) {
    if (v != removed) rest.push_back(v);
  }
  std::vector<NodeId> candidates;
  for (NodeId w : CommonNeighbors(g, rest)) {
    if (w != removed) candidates.push_back(w);
  }
  if (candidates.empty()) return std::nullopt;
  rest.push_back(candidates[PickIndex(candidates.size(), rng)]);
  std::sort(rest.begin(), rest.end());
  return rest;
}

NodeSet SampleClique(const Hypergraph& g, const EdgeIndex& observed, Rng& rng) {
  if (g.edge_count() == 0) throw SamplingError("CNS on a hypergraph without hyperedges");
  for (std::size_t attempt = 0; attempt < kHeuristicRetryLimit; ++attempt) {
    const std::size_t e = PickIndex(g.edge_count(), rng);
    const auto members = g.edge(e);
    const NodeId v = members[PickIndex(members.size(), rng)];
    auto replaced = ReplaceWithCommonNeighbor(g, e, v, rng);
    if (replaced && !observed.Contains(*replaced)) return *replaced;
  }
  throw SamplingError("CNS found no unobserved replacement after " +
                      std::to_string(kHeuristicRetryLimit) +
                      " attempts; common-neighbor sets are empty or exhausted");
}

InjectedNegatives InjectHard(Tape& tape, Var easy, Var positives, double alpha,
                             bool stop_gradient) {
  CheckInjectionInputs(tape.value(easy), tape.value(positives), alpha);
  const double h = static_cast<double>(tape.value(positives).cols());
  Var scores = tape.MatMul(easy, tape.Transpose(positives));
  Var weights = tape.SoftmaxRows(tape.Scale(scores, 1.0 / std::sqrt(h)));
  Var synthesized = tape.MatMul(weights, positives);
  if (stop_gradient) synthesized = tape.StopGradient(synthesized);
  return {tape.Convex(easy, synthesized, alpha), weights};
}

InjectedNegatives InjectRandom(Tape& tape, Var easy, Var positives, double alpha,
                               Rng& rng, bool stop_gradient) {
  CheckInjectionInputs(tape.value(easy), tape.value(positives), alpha);
  const std::size_t m2 = tape.value(easy).rows();
  const std::size_t m1 = tape.value(positives).rows();
  Matrix one_hot(m2, m1);
  for (std::size_t i = 0; i < m2; ++i) one_hot(i, PickIndex(m1, rng)) = 1.0;
  Var weights = tape.Constant(std::move(one_hot));
  Var synthesized = tape.MatMul(weights, positives);
  if (stop_gradient) synthesized = tape.StopGradient(synthesized);
  return {tape.Convex(easy, synthesized, alpha), weights};
}

namespace {

HardNegativeBatch ToBatch(const Tape& tape, const InjectedNegatives& out) {
  HardNegativeBatch batch{tape.value(out.embeddings), tape.value(out.weights), {}};
  batch.sources.resize(batch.embeddings.rows());
  std::iota(batch.sources.begin(), batch.sources.end(), std::size_t{0});
  return batch;
}

}  // namespace

HardNegativeBatch SynthesizeHardNegatives(const Matrix& easy, const Matrix& positives,
                                          double alpha) {
  Tape tape;
  const auto out = InjectHard(tape, tape.Constant(easy), tape.Constant(positives), alpha);
  return ToBatch(tape, out);
}

HardNegativeBatch SynthesizeRandomNegatives(const Matrix& easy,
                                            const Matrix& positives, double alpha,
                                            Rng& rng) {
  Tape tape;
  const auto out =
      InjectRandom(tape, tape.Constant(easy), tape.Constant(positives), alpha, rng);
  return ToBatch(tape, out);
}

}  // namespace hyperneg
