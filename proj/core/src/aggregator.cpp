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

#include "hyperneg/aggregator.hpp"

#include <numeric>
#include <string>

#include "hyperneg/error.hpp"

namespace hyperneg {

std::string_view AggregatorName(AggregatorKind kind) {
  switch (kind) {
    case AggregatorKind::kSum:
      return "sum";
    case AggregatorKind::kMean:
      return "mean";
    case AggregatorKind::kMaxMin:
      return "maxmin";
  }
  return "maxmin";
}

AggregatorKind ParseAggregator(std::string_view name) {
  if (name == "sum") return AggregatorKind::kSum;
  if (name == "mean") return AggregatorKind::kMean;
  if (name == "maxmin") return AggregatorKind::kMaxMin;
  throw ConfigError("unknown aggregator '" + std::string(name) +
                    "' (expected sum, mean or maxmin)");
}

Var Aggregate(Tape& tape, Var node_embeddings, const RowGroups& hyperedges,
              AggregatorKind kind) {
  switch (kind) {
    case AggregatorKind::kSum:
      return tape.SegmentSum(node_embeddings, hyperedges);
    case AggregatorKind::kMean:
      return tape.SegmentMean(node_embeddings, hyperedges);
    case AggregatorKind::kMaxMin:
      return tape.SegmentMaxMin(node_embeddings, hyperedges);
  }
  throw InvalidArgument("unknown aggregator kind");
}

std::vector<double> Aggregate(const Matrix& members, AggregatorKind kind) {
  if (members.rows() == 0) throw InvalidArgument("cannot aggregate an empty hyperedge");
  RowGroups group;
  std::vector<NodeId> rows(members.rows());
  std::iota(rows.begin(), rows.end(), NodeId{0});
  group.Add(rows);
  Tape tape;
  const Matrix& out = tape.value(Aggregate(tape, tape.Constant(members), group, kind));
  return {out.values().begin(), out.values().end()};
}

}  // namespace hyperneg
