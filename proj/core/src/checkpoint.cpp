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

#include "hyperneg/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "hyperneg/error.hpp"

namespace hyperneg {
namespace {

constexpr std::string_view kMagic = "hyperneg-checkpoint";
constexpr int kVersion = 1;

void WriteTensor(std::ostream& out, const Parameter& p) {
  out << "tensor " << p.name << ' ' << p.value.rows() << ' ' << p.value.cols() << '\n';
  for (std::size_t r = 0; r < p.value.rows(); ++r) {
    const auto row = p.value.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ' ';
      out << FormatDouble(row[c]);
    }
    out << '\n';
  }
}

[[noreturn]] void Fail(std::size_t line_no, const std::string& message) {
  throw ParseError("checkpoint line " + std::to_string(line_no) + ": " + message);
}

bool ParseValue(const std::string& token, double& out) {
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

}  // namespace

void WriteCheckpoint(std::ostream& out, const Checkpoint& checkpoint) {
  out << kMagic << ' ' << kVersion << '\n';
  out << "seed " << checkpoint.seed << '\n';
  out << "best_epoch " << checkpoint.best_epoch << '\n';
  out << "validation_auc " << FormatDouble(checkpoint.validation_auc) << '\n';
  for (const auto& [key, value] : checkpoint.config.Echo()) {
    out << "config " << key << " = " << value << '\n';
  }
  for (const Parameter* p : checkpoint.model.Parameters()) WriteTensor(out, *p);
  out << "end\n";
}

void SaveCheckpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write checkpoint " + path.string());
  WriteCheckpoint(out, checkpoint);
  if (!out) throw IoError("failed writing checkpoint " + path.string());
}

Checkpoint ReadCheckpoint(std::istream& in) {
  Checkpoint checkpoint;
  std::map<std::string, Matrix> tensors;
  std::string line;
  std::size_t line_no = 0;
  bool saw_end = false;

  if (!std::getline(in, line)) Fail(1, "empty checkpoint");
  ++line_no;
  {
    std::istringstream header(line);
    std::string magic;
    int version = 0;
    if (!(header >> magic >> version) || magic != kMagic) Fail(line_no, "not a checkpoint");
    if (version != kVersion) Fail(line_no, "unsupported version " + std::to_string(version));
  }
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag.empty()) continue;
    if (tag == "end") {
      saw_end = true;
      break;
    }
    if (tag == "seed") {
      if (!(fields >> checkpoint.seed)) Fail(line_no, "bad seed");
    } else if (tag == "best_epoch") {
      if (!(fields >> checkpoint.best_epoch)) Fail(line_no, "bad best_epoch");
    } else if (tag == "validation_auc") {
      std::string value;
      fields >> value;
      if (!ParseValue(value, checkpoint.validation_auc)) Fail(line_no, "bad validation_auc");
    } else if (tag == "config") {
      const auto eq = line.find(" = ");
      if (eq == std::string::npos) Fail(line_no, "bad config line");
      const std::string key = line.substr(7, eq - 7);
      checkpoint.config.Apply(key, line.substr(eq + 3));
    } else if (tag == "tensor") {
      std::string name;
      std::size_t rows = 0;
      std::size_t cols = 0;
      if (!(fields >> name >> rows >> cols)) Fail(line_no, "bad tensor header");
      Matrix m(rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) Fail(line_no, "truncated tensor " + name);
        ++line_no;
        std::istringstream values(line);
        std::string token;
        for (std::size_t c = 0; c < cols; ++c) {
          if (!(values >> token)) Fail(line_no, "short row in tensor " + name);
          if (!ParseValue(token, m(r, c))) {
            Fail(line_no, "bad value '" + token + "' in tensor " + name);
          }
        }
      }
      if (!tensors.emplace(name, std::move(m)).second) {
        Fail(line_no, "duplicate tensor " + name);
      }
    } else {
      Fail(line_no, "unknown record '" + tag + "'");
    }
  }
  if (!saw_end) Fail(line_no, "missing 'end' record");

  const auto first = tensors.find("encoder.w0");
  if (first == tensors.end()) Fail(line_no, "missing tensor encoder.w0");
  checkpoint.model = InitModel(checkpoint.config.model, first->second.rows(), 0);
  for (Parameter* p : checkpoint.model.Parameters()) {
    auto it = tensors.find(p->name);
    if (it == tensors.end()) Fail(line_no, "missing tensor " + p->name);
    if (!it->second.SameShape(p->value)) {
      throw ShapeError("checkpoint tensor " + p->name + " is " + it->second.ShapeString() +
                       " but the config implies " + p->value.ShapeString());
    }
    p->value = std::move(it->second);
    tensors.erase(it);
  }
  if (!tensors.empty()) Fail(line_no, "unexpected tensor " + tensors.begin()->first);
  return checkpoint;
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  return ReadCheckpoint(in);
}

void WriteHistoryCsv(std::ostream& out, std::span<const EpochRecord> history) {
  out << "epoch,loss,val_auc\n";
  for (const auto& r : history) {
    out << r.epoch << ',' << FormatDouble(r.loss) << ',' << FormatDouble(r.validation_auc)
        << '\n';
  }
}

}  // namespace hyperneg
