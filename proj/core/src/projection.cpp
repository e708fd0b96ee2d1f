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

#include "hyperneg/projection.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "hyperneg/aggregator.hpp"
#include "hyperneg/config.hpp"
#include "hyperneg/error.hpp"
#include "hyperneg/rng.hpp"
#include "hyperneg/tape.hpp"

namespace hyperneg {
namespace {

constexpr std::uint64_t kProjectionStream = 0x9c4;

std::uint64_t Choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (out > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out = out * num / i;
  }
  return out;
}

}  // namespace

std::string_view PointClassName(PointClass c) {
  switch (c) {
    case PointClass::kPositive:
      return "positive";
    case PointClass::kRandom:
      return "random";
    case PointClass::kHard:
      return "hns";
    default:
      return "possible";
  }
}

std::vector<NodeId> TopDegreeNodes(const Hypergraph& g, std::size_t k) {
  std::vector<NodeId> ids(g.node_count());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  const auto& h = g.incidence();
  std::stable_sort(ids.begin(), ids.end(),
                   [&](NodeId a, NodeId b) { return h.degree(a) > h.degree(b); });
  ids.resize(std::min(k, ids.size()));
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<NodeSet> RestrictEdges(const Hypergraph& g, std::span<const NodeId> nodes) {
  std::vector<NodeSet> out;
  EdgeIndex seen;
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    NodeSet kept;
    for (NodeId v : g.edge(j)) {
      if (std::binary_search(nodes.begin(), nodes.end(), v)) kept.push_back(v);
    }
    if (kept.size() >= 2 && seen.Insert(kept)) out.push_back(std::move(kept));
  }
  return out;
}

std::uint64_t CountSubsets(std::size_t n, std::size_t min_order, std::size_t max_order) {
  std::uint64_t total = 0;
  for (std::size_t k = min_order; k <= max_order; ++k) {
    const std::uint64_t c = Choose(n, k);
    if (c > std::numeric_limits<std::uint64_t>::max() - total) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total += c;
  }
  return total;
}

std::vector<NodeSet> EnumerateNonEdges(std::span<const NodeId> nodes, std::size_t min_order,
                                       std::size_t max_order, const EdgeIndex& observed,
                                       std::uint64_t cap) {
  if (min_order < 1 || min_order > max_order) {
    throw InvalidArgument("order range must satisfy 1 <= min <= max");
  }
  const std::uint64_t total = CountSubsets(nodes.size(), min_order, max_order);
  if (total > cap) {
    throw InvalidArgument("enumerating " + std::to_string(total) + " candidates exceeds the cap of " +
                          std::to_string(cap) + "; use a smaller top-k or order range");
  }
  std::vector<NodeSet> out;
  for (std::size_t k = min_order; k <= std::min(max_order, nodes.size()); ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      NodeSet set(k);
      for (std::size_t i = 0; i < k; ++i) set[i] = nodes[pick[i]];
      if (!observed.Contains(set)) out.push_back(std::move(set));
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == nodes.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

Matrix PrincipalComponents(const Matrix& data, std::size_t components) {
  const auto n = static_cast<Eigen::Index>(data.rows());
  const auto d = static_cast<Eigen::Index>(data.cols());
  if (n == 0 || d == 0) throw InvalidArgument("PCA needs a non-empty matrix");
  if (components > data.cols()) {
    throw InvalidArgument("PCA asked for " + std::to_string(components) +
                          " components of " + std::to_string(data.cols()) + " columns");
  }
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) x(r, c) = data(r, c);
  }
  x.rowwise() -= x.colwise().mean();
  const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(std::max<Eigen::Index>(n - 1, 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw NumericError("PCA eigendecomposition failed");

  Matrix out(data.rows(), components);
  for (std::size_t k = 0; k < components; ++k) {
    Eigen::VectorXd axis = solver.eigenvectors().col(d - 1 - static_cast<Eigen::Index>(k));
    Eigen::Index largest = 0;
    for (Eigen::Index i = 1; i < d; ++i) {
      if (std::abs(axis(i)) > std::abs(axis(largest))) largest = i;
    }
    if (axis(largest) < 0) axis = -axis;
    const Eigen::VectorXd proj = x * axis;
    for (Eigen::Index r = 0; r < n; ++r) out(static_cast<std::size_t>(r), k) = proj(r);
  }
  return out;
}

double MeanDistance(const Matrix& points, std::span<const std::size_t> rows,
                    std::span<const double> centroid) {
  if (rows.empty()) throw InvalidArgument("mean distance of an empty set");
  double total = 0.0;
  for (std::size_t r : rows) {
    double sq = 0.0;
    for (std::size_t c = 0; c < points.cols(); ++c) {
      const double diff = points(r, c) - centroid[c];
      sq += diff * diff;
    }
    total += std::sqrt(sq);
  }
  return total / static_cast<double>(rows.size());
}

ProjectionResult Project(const Model& model, const Propagation& propagation,
                         const Matrix& features, const Hypergraph& g,
                         const ProjectionOptions& options) {
  if (model.encoder.weights.empty() || model.encoder.weights.front().value.rows() != features.cols()) {
    throw ShapeError("checkpoint does not match the hypergraph's feature width");
  }
  if (propagation.incidence().nodes() != g.node_count()) {
    throw ShapeError("checkpoint does not match the hypergraph's node count");
  }
  ProjectionResult result;
  result.nodes = TopDegreeNodes(g, options.top_k);
  const std::vector<NodeSet> positives = RestrictEdges(g, result.nodes);
  if (positives.empty()) {
    throw InvalidArgument("no hyperedge has two or more members among the top " +
                          std::to_string(options.top_k) + " nodes");
  }

  // Random negatives are drawn in local ids 0..k-1, then mapped back.
  EdgeIndex local_positives;
  std::vector<std::size_t> sizes;
  for (const auto& e : positives) {
    NodeSet local;
    for (NodeId v : e) {
      local.push_back(static_cast<NodeId>(
          std::lower_bound(result.nodes.begin(), result.nodes.end(), v) - result.nodes.begin()));
    }
    local_positives.Insert(local);
    sizes.push_back(e.size());
  }
  Rng rng = MakeRng(options.seed, kProjectionStream);
  GraphNegatives random = SampleSized(result.nodes.size(), local_positives,
                                      SizeDistribution(sizes), positives.size(), rng);
  for (auto& set : random.sets) {
    for (auto& v : set) v = result.nodes[v];
  }

  EdgeIndex global_positives;
  for (const auto& e : positives) global_positives.Insert(e);
  std::vector<NodeSet> possible;
  if (options.enumerate) {
    possible = EnumerateNonEdges(result.nodes, options.min_order, options.max_order,
                                 global_positives);
  }

  RowGroups positive_groups;
  for (const auto& e : positives) positive_groups.Add(e);
  const RowGroups random_groups = random.AsGroups();

  Tape tape;
  Var v = Encode(tape, propagation, tape.Constant(features), model.encoder,
                 model.config.encoder);
  Var pos = Aggregate(tape, v, positive_groups, model.config.aggregator);
  Var neg = Aggregate(tape, v, random_groups, model.config.aggregator);
  Var hard = InjectHard(tape, neg, pos, options.alpha).embeddings;
  Var all = tape.ConcatRows(tape.ConcatRows(pos, neg), hard);
  RowGroups possible_groups;
  if (!possible.empty()) {
    for (const auto& e : possible) possible_groups.Add(e);
    all = tape.ConcatRows(all, Aggregate(tape, v, possible_groups, model.config.aggregator));
  }

  result.classes.assign(positives.size(), PointClass::kPositive);
  result.classes.insert(result.classes.end(), random.sets.size(), PointClass::kRandom);
  result.classes.insert(result.classes.end(), random.sets.size(), PointClass::kHard);
  result.classes.insert(result.classes.end(), possible.size(), PointClass::kPossible);
  result.points = PrincipalComponents(tape.value(all), 2);

  std::vector<std::size_t> pos_rows, random_rows, hard_rows;
  for (std::size_t r = 0; r < result.classes.size(); ++r) {
    switch (result.classes[r]) {
      case PointClass::kPositive:
        pos_rows.push_back(r);
        break;
      case PointClass::kRandom:
        random_rows.push_back(r);
        break;
      case PointClass::kHard:
        hard_rows.push_back(r);
        break;
      default:
        break;
    }
  }
  double centroid[2] = {0.0, 0.0};
  for (std::size_t r : pos_rows) {
    centroid[0] += result.points(r, 0);
    centroid[1] += result.points(r, 1);
  }
  centroid[0] /= static_cast<double>(pos_rows.size());
  centroid[1] /= static_cast<double>(pos_rows.size());
  result.random_distance = MeanDistance(result.points, random_rows, centroid);
  result.hard_distance = MeanDistance(result.points, hard_rows, centroid);
  return result;
}

void WriteProjectionCsv(std::ostream& out, const ProjectionResult& result) {
  out << "x,y,class\n";
  for (std::size_t r = 0; r < result.classes.size(); ++r) {
    out << FormatDouble(result.points(r, 0)) << ',' << FormatDouble(result.points(r, 1)) << ','
        << PointClassName(result.classes[r]) << '\n';
  }
}

}  // namespace hyperneg
