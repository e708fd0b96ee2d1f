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

#include "hyperneg/tensor.hpp"

#include <cmath>
#include <sstream>

#include "hyperneg/error.hpp"

namespace hyperneg {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    std::ostringstream msg;
    msg << "matrix data length " << data_.size() << " does not match shape "
        << rows << "x" << cols;
    throw ShapeError(msg.str());
  }
}

Matrix Matrix::FromRows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ragged initializer for Matrix");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::AllFinite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Matrix::Fill(double value) {
  for (double& v : data_) v = value;
}

double Matrix::SquaredNorm() const {
  double total = 0.0;
  for (double v : data_) total += v * v;
  return total;
}

std::string Matrix::ShapeString() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

void RowGroups::Add(std::span<const NodeId> members) {
  indices_.insert(indices_.end(), members.begin(), members.end());
  offsets_.push_back(indices_.size());
}

SparseIncidence::SparseIncidence(std::size_t nodes, const RowGroups& columns)
    : nodes_(nodes), columns_(columns) {
  std::vector<std::size_t> counts(nodes, 0);
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const auto col = columns_[j];
    if (col.empty()) {
      throw InvalidArgument("incidence column " + std::to_string(j) + " is empty");
    }
    for (std::size_t k = 0; k < col.size(); ++k) {
      if (col[k] >= nodes) {
        throw InvalidArgument("incidence column " + std::to_string(j) +
                         " references node " + std::to_string(col[k]) +
                         " >= " + std::to_string(nodes));
      }
      for (std::size_t l = 0; l < k; ++l) {
        if (col[l] == col[k]) {
          throw InvalidArgument("incidence column " + std::to_string(j) +
                           " repeats node " + std::to_string(col[k]));
        }
      }
      ++counts[col[k]];
    }
  }
  row_offsets_.assign(nodes + 1, 0);
  for (std::size_t i = 0; i < nodes; ++i) {
    row_offsets_[i + 1] = row_offsets_[i] + counts[i];
  }
  row_edges_.resize(row_offsets_[nodes]);
  std::vector<std::size_t> cursor(row_offsets_.begin(), row_offsets_.end() - 1);
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    for (NodeId v : columns_[j]) {
      row_edges_[cursor[v]++] = static_cast<std::uint32_t>(j);
    }
  }
}

Matrix SparseIncidence::Densify() const {
  Matrix dense(nodes_, edges());
  for (std::size_t j = 0; j < edges(); ++j) {
    for (NodeId v : column(j)) dense(v, j) = 1.0;
  }
  return dense;
}

Matrix MatMul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul shape mismatch: " + a.ShapeString() + " * " +
                     b.ShapeString());
  }
  Matrix out(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* out_row = out.row(i).data();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* b_row = b.row(k).data();
      for (std::size_t j = 0; j < n; ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

Matrix Transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

Matrix SpMM(const SparseIncidence& h, const Matrix& x, bool transpose_h) {
  const std::size_t inner = transpose_h ? h.nodes() : h.edges();
  if (x.rows() != inner) {
    std::ostringstream msg;
    msg << "spmm shape mismatch: " << (transpose_h ? "H^T" : "H") << " is "
        << (transpose_h ? h.edges() : h.nodes()) << "x" << inner
        << " but x is " << x.ShapeString();
    throw ShapeError(msg.str());
  }
  const std::size_t c = x.cols();
  if (transpose_h) {
    Matrix out(h.edges(), c);
    for (std::size_t j = 0; j < h.edges(); ++j) {
      double* dst = out.row(j).data();
      for (NodeId v : h.column(j)) {
        const double* src = x.row(v).data();
        for (std::size_t k = 0; k < c; ++k) dst[k] += src[k];
      }
    }
    return out;
  }
  Matrix out(h.nodes(), c);
  for (std::size_t i = 0; i < h.nodes(); ++i) {
    double* dst = out.row(i).data();
    for (std::uint32_t e : h.row(i)) {
      const double* src = x.row(e).data();
      for (std::size_t k = 0; k < c; ++k) dst[k] += src[k];
    }
  }
  return out;
}

}  // namespace hyperneg
