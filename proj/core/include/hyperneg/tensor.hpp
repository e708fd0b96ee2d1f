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
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hyperneg {

using NodeId = std::uint32_t;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  // Matrix::FromRows({{1, 2}, {3, 4}})
  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool SameShape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool AllFinite() const;
  void Fill(double value);
  // Sum of squared entries.
  double SquaredNorm() const;

  std::string ShapeString() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Variable-length groups of row indices in CSR layout: group g owns
// indices[offsets[g] .. offsets[g + 1]). Used for hyperedge member lists.
class RowGroups {
 public:
  RowGroups() : offsets_{0} {}

  void Add(std::span<const NodeId> members);
  std::size_t size() const { return offsets_.size() - 1; }
  bool empty() const { return size() == 0; }
  std::span<const NodeId> operator[](std::size_t g) const {
    return {indices_.data() + offsets_[g], offsets_[g + 1] - offsets_[g]};
  }
  std::size_t total_members() const { return indices_.size(); }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> indices_;
};

// Binary node x hyperedge incidence matrix H (m x n) with implicit unit
// values. Stored by column (hyperedge -> nodes) and by row (node -> edges).
class SparseIncidence {
 public:
  SparseIncidence() = default;
  // Each column must be non-empty, duplicate-free and within [0, nodes).
  SparseIncidence(std::size_t nodes, const RowGroups& columns);

  std::size_t nodes() const { return nodes_; }
  std::size_t edges() const { return columns_.size(); }
  std::size_t nonzeros() const { return columns_.total_members(); }

  std::span<const NodeId> column(std::size_t edge) const { return columns_[edge]; }
  std::span<const std::uint32_t> row(std::size_t node) const {
    return {row_edges_.data() + row_offsets_[node],
            row_offsets_[node + 1] - row_offsets_[node]};
  }

  std::size_t degree(std::size_t node) const { return row(node).size(); }
  std::size_t order(std::size_t edge) const { return column(edge).size(); }

  Matrix Densify() const;

 private:
  std::size_t nodes_ = 0;
  RowGroups columns_;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::uint32_t> row_edges_;
};

Matrix MatMul(const Matrix& a, const Matrix& b);
Matrix Transpose(const Matrix& a);
// H * x, or H^T * x when transpose_h is set.
Matrix SpMM(const SparseIncidence& h, const Matrix& x, bool transpose_h);

}  // namespace hyperneg
