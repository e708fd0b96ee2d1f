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

#include "hyperneg/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hyperneg/error.hpp"
#include "hyperneg/rng.hpp"

namespace hyperneg {
namespace {

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::uint64_t ParseId(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": malformed token '" +
                     std::string(token) + "' (expected a non-negative integer)");
  }
  return value;
}

struct RawLine {
  std::size_t line_no;
  std::vector<std::string_view> tokens;
};

}  // namespace

std::size_t EdgeIndex::Hash::operator()(const std::vector<NodeId>& edge) const {
  // FNV-1a over the ids.
  std::uint64_t h = 1469598103934665603ull;
  for (NodeId v : edge) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

EdgeIndex::EdgeIndex(const RowGroups& edges) {
  set_.reserve(edges.size());
  for (std::size_t j = 0; j < edges.size(); ++j) Insert(edges[j]);
}

bool EdgeIndex::Contains(std::span<const NodeId> edge) const {
  return set_.count(std::vector<NodeId>(edge.begin(), edge.end())) > 0;
}

bool EdgeIndex::Insert(std::span<const NodeId> edge) {
  return set_.emplace(edge.begin(), edge.end()).second;
}

Hypergraph::Hypergraph(std::size_t nodes,
                       const std::vector<std::vector<NodeId>>& edges,
                       std::optional<Matrix> features)
    : features_(std::move(features)) {
  if (features_ && features_->rows() != nodes) {
    throw ShapeError("feature matrix has " + std::to_string(features_->rows()) +
                     " rows but the hypergraph has " + std::to_string(nodes) +
                     " nodes");
  }
  for (std::size_t j = 0; j < edges.size(); ++j) {
    std::vector<NodeId> e = edges[j];
    if (e.empty()) throw InvalidArgument("hyperedge " + std::to_string(j) + " is empty");
    std::sort(e.begin(), e.end());
    const auto last = std::unique(e.begin(), e.end());
    repeated_ids_dropped_ += static_cast<std::size_t>(e.end() - last);
    e.erase(last, e.end());
    if (e.back() >= nodes) {
      throw InvalidArgument("hyperedge " + std::to_string(j) + " references node " +
                            std::to_string(e.back()) + " >= node count " +
                            std::to_string(nodes));
    }
    if (!index_.Insert(e)) {
      ++duplicates_dropped_;
      continue;
    }
    edges_.Add(e);
  }
  incidence_ = SparseIncidence(nodes, edges_);
  if (!features_) identity_ = std::make_shared<const Matrix>(Matrix::Identity(nodes));
}

const Matrix& Hypergraph::features() const {
  return features_ ? *features_ : *identity_;
}

std::size_t Hypergraph::feature_dim() const { return features().cols(); }

bool Hypergraph::Contains(std::vector<NodeId> edge) const {
  std::sort(edge.begin(), edge.end());
  return index_.Contains(edge);
}

Hypergraph Hypergraph::WithEdges(std::span<const std::size_t> edge_indices) const {
  Hypergraph sub;
  sub.features_ = features_;
  sub.identity_ = identity_;
  for (std::size_t j : edge_indices) {
    if (j >= edge_count()) {
      throw InvalidArgument("hyperedge index " + std::to_string(j) + " out of range");
    }
    if (sub.index_.Insert(edge(j))) sub.edges_.Add(edge(j));
  }
  sub.incidence_ = SparseIncidence(node_count(), sub.edges_);
  return sub;
}

std::size_t Hypergraph::singleton_edges() const {
  std::size_t count = 0;
  for (std::size_t j = 0; j < edge_count(); ++j) count += edge(j).size() == 1;
  return count;
}

std::size_t Hypergraph::isolated_nodes() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < node_count(); ++i) count += incidence_.degree(i) == 0;
  return count;
}

Hypergraph ParseHypergraph(std::istream& in, const LoadOptions& options,
                           LoadReport* report) {
  LoadReport local;
  std::vector<std::string> storage;
  std::vector<RawLine> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    storage.push_back(line);
  }
  // Tokens view into `storage`, which no longer grows.
  for (std::size_t i = 0; i < storage.size(); ++i) {
    std::string_view text = storage[i];
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string_view::npos && text[first] == '#') continue;
    auto tokens = Tokenize(text);
    if (tokens.empty()) {
      ++local.empty_lines;
      continue;
    }
    lines.push_back({i + 1, std::move(tokens)});
  }

  std::optional<std::pair<std::uint64_t, std::uint64_t>> header;
  std::size_t first_edge = 0;
  if (!lines.empty() && options.header != HeaderMode::kAbsent) {
    const auto& head = lines.front();
    if (head.tokens.size() == 2) {
      const auto m = ParseId(head.tokens[0], head.line_no);
      const auto n = ParseId(head.tokens[1], head.line_no);
      if (options.header == HeaderMode::kPresent || n == lines.size() - 1) {
        header = {m, n};
        first_edge = 1;
      }
    } else if (options.header == HeaderMode::kPresent) {
      throw ParseError("line " + std::to_string(head.line_no) +
                       ": expected header 'm n'");
    }
  }
  local.header_found = header.has_value();

  std::vector<std::vector<NodeId>> edges;
  edges.reserve(lines.size());
  std::uint64_t max_id = 0;
  bool any = false;
  for (std::size_t i = first_edge; i < lines.size(); ++i) {
    std::vector<NodeId> e;
    e.reserve(lines[i].tokens.size());
    for (auto token : lines[i].tokens) {
      const auto id = ParseId(token, lines[i].line_no);
      if (header && id >= header->first) {
        throw ParseError("line " + std::to_string(lines[i].line_no) + ": node id " +
                         std::to_string(id) + " >= declared node count " +
                         std::to_string(header->first));
      }
      if (id > UINT32_MAX - 1) {
        throw ParseError("line " + std::to_string(lines[i].line_no) +
                         ": node id too large");
      }
      max_id = std::max(max_id, id);
      any = true;
      e.push_back(static_cast<NodeId>(id));
    }
    edges.push_back(std::move(e));
  }

  std::size_t nodes = any ? static_cast<std::size_t>(max_id) + 1 : 0;
  if (header) {
    nodes = static_cast<std::size_t>(header->first);
  } else if (options.node_count) {
    if (*options.node_count < nodes) {
      throw ParseError("node id " + std::to_string(max_id) +
                       " >= declared node count " +
                       std::to_string(*options.node_count));
    }
    nodes = *options.node_count;
  }

  std::optional<Matrix> features;
  if (options.feature_mode == FeatureMode::kFile) {
    if (!options.feature_path) {
      throw InvalidArgument("feature mode 'file' requires a feature path");
    }
    features = LoadFeatures(*options.feature_path, nodes);
  } else {
    features = Matrix::Identity(nodes);
  }

  Hypergraph g(nodes, edges, std::move(features));
  local.duplicate_edges = g.duplicate_edges_dropped();
  local.repeated_ids = g.repeated_ids_dropped();
  local.singleton_edges = g.singleton_edges();
  if (report) *report = local;
  return g;
}

Hypergraph LoadHypergraph(const std::filesystem::path& path,
                          const LoadOptions& options, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open hyperedge file " + path.string());
  return ParseHypergraph(in, options, report);
}

Matrix ParseFeatures(std::istream& in, std::size_t nodes) {
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = Tokenize(line);
    if (tokens.empty()) continue;
    if (rows == 0) cols = tokens.size();
    if (tokens.size() != cols) {
      throw ParseError("feature line " + std::to_string(line_no) + " has " +
                       std::to_string(tokens.size()) + " columns, expected " +
                       std::to_string(cols));
    }
    for (auto token : tokens) {
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() ||
          !std::isfinite(value)) {
        throw ParseError("feature line " + std::to_string(line_no) +
                         ": malformed value '" + std::string(token) + "'");
      }
      data.push_back(value);
    }
    ++rows;
  }
  if (rows != nodes) {
    throw ParseError("feature file has " + std::to_string(rows) + " rows, expected " +
                     std::to_string(nodes));
  }
  return Matrix(rows, cols, std::move(data));
}

Matrix LoadFeatures(const std::filesystem::path& path, std::size_t nodes) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open feature file " + path.string());
  return ParseFeatures(in, nodes);
}

void WriteHypergraph(std::ostream& out, const Hypergraph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    const auto e = g.edge(j);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k) out << ' ';
      out << e[k];
    }
    out << '\n';
  }
}

void WriteFeatures(std::ostream& out, const Matrix& features) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto row = features.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ' ';
      out << row[j];
    }
    out << '\n';
  }
}

GraphStats ComputeStats(const Hypergraph& g) {
  GraphStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  s.feature_dim = g.feature_dim();
  const auto& h = g.incidence();
  const double incidences = static_cast<double>(h.nonzeros());
  std::size_t active = 0;
  for (std::size_t i = 0; i < s.nodes; ++i) active += h.degree(i) > 0;
  for (std::size_t j = 0; j < s.edges; ++j) s.c_max = std::max(s.c_max, h.order(j));
  s.k_avg = active ? incidences / static_cast<double>(active) : 0.0;
  s.k_avg_all = s.nodes ? incidences / static_cast<double>(s.nodes) : 0.0;
  s.c_avg = s.edges ? incidences / static_cast<double>(s.edges) : 0.0;
  return s;
}

void WriteStatsCsvHeader(std::ostream& out) {
  out << "name,m,n,k_avg,c_avg,c_max,d\n";
}

void WriteStatsCsvRow(std::ostream& out, const std::string& name,
                      const GraphStats& stats) {
  std::ostringstream row;
  row << name << ',' << stats.nodes << ',' << stats.edges << ',' << std::fixed
      << std::setprecision(4) << stats.k_avg << ',' << stats.c_avg << ','
      << stats.c_max << ',' << stats.feature_dim << '\n';
  out << row.str();
}

Split SplitEdges(std::size_t edge_count, const SplitRatios& ratios,
                 std::uint64_t seed) {
  if (!(ratios.train > 0.0 && ratios.validation > 0.0 && ratios.test > 0.0)) {
    throw InvalidArgument("split ratios must all be positive");
  }
  if (std::abs(ratios.train + ratios.validation + ratios.test - 1.0) > 1e-9) {
    throw InvalidArgument("split ratios must sum to 1");
  }
  // Tolerance keeps e.g. 0.2 * 10 from flooring to 1.
  const auto part = [edge_count](double ratio) {
    return static_cast<std::size_t>(
        std::floor(ratio * static_cast<double>(edge_count) + 1e-9));
  };
  const std::size_t n_val = part(ratios.validation);
  const std::size_t n_test = part(ratios.test);
  if (n_val == 0 || n_test == 0 || n_val + n_test >= edge_count) {
    throw InvalidArgument(
        "split of " + std::to_string(edge_count) +
        " hyperedges leaves an empty part; use a larger dataset or different ratios");
  }
  std::vector<std::size_t> order(edge_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = MakeRng(seed, /*stream=*/0x5b1);
  std::shuffle(order.begin(), order.end(), rng);

  Split split;
  split.seed = seed;
  split.validation.assign(order.begin(), order.begin() + n_val);
  split.test.assign(order.begin() + n_val, order.begin() + n_val + n_test);
  split.train.assign(order.begin() + n_val + n_test, order.end());
  return split;
}

}  // namespace hyperneg
