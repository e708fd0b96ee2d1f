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

#include <string_view>
#include <vector>

#include "hyperneg/tape.hpp"
#include "hyperneg/tensor.hpp"

namespace hyperneg {

enum class AggregatorKind { kSum, kMean, kMaxMin };

std::string_view AggregatorName(AggregatorKind kind);
AggregatorKind ParseAggregator(std::string_view name);

// One hyperedge embedding per group of node rows of `node_embeddings`.
Var Aggregate(Tape& tape, Var node_embeddings, const RowGroups& hyperedges,
              AggregatorKind kind);

// Collapses the rows of `members` (the embeddings of one candidate's nodes).
std::vector<double> Aggregate(const Matrix& members, AggregatorKind kind);

}  // namespace hyperneg
