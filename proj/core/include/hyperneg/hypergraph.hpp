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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "hyperneg/tensor.hpp"

namespace hyperneg {

// Hash set of canonical (sorted, duplicate-free) hyperedges.
class EdgeIndex {
 public:
  EdgeIndex() = default;
  explicit EdgeIndex(const RowGroups& edges);

  // `edge` must be sorted ascending.
  bool Contains(std::span<const NodeId> edge) const;
  // Returns false if the edge was already present.
  bool Insert(std::span<const NodeId> edge);
  std::size_t size() const { return set_.size(); }

 private:
  struct Hash {
    std::size_t operator()(const std::vector<NodeId>& edge) const;
  };
  std::unordered_set<std::vector<NodeId>, Hash> set_;
};

// Undirected hypergraph (V, E) with optional node features X (m x d).
// Immutable after construction; hyperedges are stored sorted and
// duplicate-free, and the incidence matrix is kept consistent with them.
class Hypergraph {
 public:
  Hypergraph() = default;
  // Canonicalizes each hyperedge (sort + drop repeated ids) and drops exact
  // duplicate hyperedges. Throws on empty hyperedges or ids >= nodes.
  Hypergraph(std::size_t nodes, const std::vector<std::vector<NodeId>>& edges,
             std::optional<Matrix> features = std::nullopt);

  std::size_t node_count() const { return incidence_.nodes(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const NodeId> edge(std::size_t j) const { return edges_[j]; }
  const RowGroups& edges() const { return edges_; }
  const SparseIncidence& incidence() const { return incidence_; }
  const EdgeIndex& index() const { return index_; }

  bool has_features() const { return features_.has_value(); }
  // Node features; one-hot identity when none were supplied.
  const Matrix& features() const;
  std::size_t feature_dim() const;

  // Node ids are sorted before lookup.
  bool Contains(std::vector<NodeId> edge) const;

  // Same nodes and features, restricted to the listed hyperedges.
  Hypergraph WithEdges(std::span<const std::size_t> edge_indices) const;

  std::size_t duplicate_edges_dropped() const { return duplicates_dropped_; }
  std::size_t repeated_ids_dropped() const { return repeated_ids_dropped_; }
  std::size_t singleton_edges() const;
  std::size_t isolated_nodes() const;

 private:
  RowGroups edges_;
  SparseIncidence incidence_;
  EdgeIndex index_;
  std::optional<Matrix> features_;
  std::shared_ptr<const Matrix> identity_;
  std::size_t duplicates_dropped_ = 0;
  std::size_t repeated_ids_dropped_ = 0;
};

enum class HeaderMode { kAuto, kPresent, kAbsent };
enum class FeatureMode { kOneHot, kFile };

struct LoadOptions {
  HeaderMode header = HeaderMode::kAuto;
  FeatureMode feature_mode = FeatureMode::kOneHot;
  std::optional<std::filesystem::path> feature_path;
  // Overrides the node count when no header is present; otherwise
  // max id + 1 is used.
  std::optional<std::size_t> node_count;
};

struct LoadReport {
  std::size_t empty_lines = 0;
  std::size_t duplicate_edges = 0;
  std::size_t repeated_ids = 0;
  std::size_t singleton_edges = 0;
  bool header_found = false;
};

// Hyperedge text format: one hyperedge per line, whitespace-separated 0-based
// node ids, optional first line "m n", '#' comment lines.
Hypergraph ParseHypergraph(std::istream& in, const LoadOptions& options = {},
                           LoadReport* report = nullptr);
Hypergraph LoadHypergraph(const std::filesystem::path& path,
                          const LoadOptions& options = {},
                          LoadReport* report = nullptr);
// Whitespace-separated floats, one row per node.
Matrix ParseFeatures(std::istream& in, std::size_t nodes);
Matrix LoadFeatures(const std::filesystem::path& path, std::size_t nodes);

// Canonical serialization: header "m n" then one sorted hyperedge per line.
void WriteHypergraph(std::ostream& out, const Hypergraph& g);
void WriteFeatures(std::ostream& out, const Matrix& features);

struct GraphStats {
  std::size_t nodes = 0;  // m
  std::size_t edges = 0;  // n
  // Mean hyperdegree over nodes that belong to at least one hyperedge.
  double k_avg = 0.0;
  // Mean hyperdegree over all m nodes.
  double k_avg_all = 0.0;
  double c_avg = 0.0;
  std::size_t c_max = 0;
  std::size_t feature_dim = 0;  // d
};

GraphStats ComputeStats(const Hypergraph& g);
// "name,m,n,k_avg,c_avg,c_max,d" with 4 decimals.
void WriteStatsCsvHeader(std::ostream& out);
void WriteStatsCsvRow(std::ostream& out, const std::string& name,
                      const GraphStats& stats);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
  std::uint64_t seed = 0;
};

struct SplitRatios {
  double train = 0.6;
  double validation = 0.2;
  double test = 0.2;
};

// Seeded shuffle of [0, edge_count); validation and test take
// floor(ratio * n) each, train takes the remainder.
Split SplitEdges(std::size_t edge_count, const SplitRatios& ratios,
                 std::uint64_t seed);

}  // namespace hyperneg
