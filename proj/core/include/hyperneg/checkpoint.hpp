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
#include <filesystem>
#include <iosfwd>
#include <span>

#include "hyperneg/config.hpp"
#include "hyperneg/trainer.hpp"

namespace hyperneg {

// Text checkpoint:
//   hyperneg-checkpoint 1
//   seed <n>
//   best_epoch <n>
//   validation_auc <x>
//   config <key> = <value>        (one per config key)
//   tensor <name> <rows> <cols>   (followed by one line per row)
//   end
// Values are written in shortest round-trip form, so a reload is exact.
struct Checkpoint {
  ExperimentConfig config;
  std::uint64_t seed = 0;
  std::size_t best_epoch = 0;
  double validation_auc = 0.0;
  Model model;
};

void WriteCheckpoint(std::ostream& out, const Checkpoint& checkpoint);
void SaveCheckpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint ReadCheckpoint(std::istream& in);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

// CSV with header epoch,loss,val_auc.
void WriteHistoryCsv(std::ostream& out, std::span<const EpochRecord> history);

}  // namespace hyperneg
