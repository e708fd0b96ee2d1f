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
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "hyperneg/encoder.hpp"
#include "hyperneg/hypergraph.hpp"
#include "hyperneg/sampler.hpp"
#include "hyperneg/tensor.hpp"
#include "hyperneg/trainer.hpp"

namespace hyperneg {

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

enum class PointClass { kPositive, kRandom, kHard, kPossible };
std::string_view PointClassName(PointClass c);

struct ProjectionOptions {
  std::size_t top_k = 30;
  double alpha = 0.3;
  // Also embed every non-hyperedge of these orders on the subgraph.
  bool enumerate = false;
  std::size_t min_order = 3;
  std::size_t max_order = 5;
  std::uint64_t seed = 0;
};

struct ProjectionResult {
  std::vector<NodeId> nodes;
  Matrix points;  // rows x 2
  std::vector<PointClass> classes;
  // Mean 2D distance to the centroid of the positive points.
  double random_distance = 0.0;
  double hard_distance = 0.0;
};

// Highest-hyperdegree nodes, ties broken by lower id; returned sorted by id.
std::vector<NodeId> TopDegreeNodes(const Hypergraph& g, std::size_t k);
// Hyperedges intersected with `nodes` (sorted), keeping distinct results
// with at least two members.
std::vector<NodeSet> RestrictEdges(const Hypergraph& g, std::span<const NodeId> nodes);
// Number of subsets with order in [min_order, max_order]; saturates at
// UINT64_MAX.
std::uint64_t CountSubsets(std::size_t n, std::size_t min_order, std::size_t max_order);
// Every subset of `nodes` in the order range that is not in `observed`.
std::vector<NodeSet> EnumerateNonEdges(std::span<const NodeId> nodes, std::size_t min_order,
                                       std::size_t max_order, const EdgeIndex& observed,
                                       std::uint64_t cap = kEnumerationCap);

// Centered data projected onto the top principal directions. Each direction
// is signed so its largest-magnitude component is positive.
Matrix PrincipalComponents(const Matrix& data, std::size_t components = 2);

// Mean Euclidean distance from the selected rows to `centroid`.
double MeanDistance(const Matrix& points, std::span<const std::size_t> rows,
                    std::span<const double> centroid);

ProjectionResult Project(const Model& model, const Propagation& propagation,
                         const Matrix& features, const Hypergraph& g,
                         const ProjectionOptions& options);

// CSV: x,y,class
void WriteProjectionCsv(std::ostream& out, const ProjectionResult& result);

}  // namespace hyperneg
