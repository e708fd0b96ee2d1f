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

#include <gtest/gtest.h>

#include "hyperneg/error.hpp"
#include "hyperneg/tensor.hpp"
#include "test_support.hpp"

namespace hyperneg {
namespace {

using testing::NaiveMatMul;
using testing::RandomMatrix;

TEST(MatrixTest, RejectsDataOfWrongLength) {
  EXPECT_THROW(Matrix(2, 3, std::vector<double>(5)), ShapeError);
}

TEST(MatrixTest, FromRowsRejectsRaggedRows) {
  EXPECT_THROW(Matrix::FromRows({{1, 2}, {3}}), ShapeError);
}

TEST(MatMulTest, IdentityLeavesMatrixUnchanged) {
  const Matrix m = Matrix::FromRows({{1.5, -2}, {0.25, 7}});
  EXPECT_EQ(MatMul(Matrix::Identity(2), m), m);
}

TEST(MatMulTest, HandArithmetic) {
  const Matrix a = Matrix::FromRows({{1, 2}, {3, 4}});
  const Matrix b = Matrix::FromRows({{1}, {1}});
  EXPECT_EQ(MatMul(a, b), Matrix::FromRows({{3}, {7}}));
}

TEST(MatMulTest, MatchesTripleLoop) {
  const Matrix a = RandomMatrix(3, 4, 1);
  const Matrix b = RandomMatrix(4, 2, 2);
  EXPECT_LE(testing::MaxAbsDiff(MatMul(a, b), NaiveMatMul(a, b)), 1e-12);
}

TEST(MatMulTest, ShapeErrorNamesBothShapes) {
  try {
    MatMul(Matrix(2, 3), Matrix(2, 3));
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("2x3"), std::string::npos) << what;
  }
}

TEST(TransposeTest, SwapsIndices) {
  const Matrix a = RandomMatrix(3, 5, 3);
  const Matrix t = Transpose(a);
  ASSERT_EQ(t.rows(), 5u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(t(j, i), a(i, j));
  }
}

RowGroups Groups(std::initializer_list<std::vector<NodeId>> groups) {
  RowGroups out;
  for (const auto& g : groups) out.Add(g);
  return out;
}

TEST(SparseIncidenceTest, RejectsEmptyColumnsDuplicatesAndRange) {
  EXPECT_THROW(SparseIncidence(3, Groups({{0, 1}, {}})), InvalidArgument);
  EXPECT_THROW(SparseIncidence(3, Groups({{0, 0}})), InvalidArgument);
  EXPECT_THROW(SparseIncidence(3, Groups({{0, 3}})), InvalidArgument);
}

TEST(SparseIncidenceTest, RowsAreConsistentWithColumns) {
  const SparseIncidence h(4, Groups({{0, 1, 2}, {1, 3}, {2}}));
  EXPECT_EQ(h.nonzeros(), 6u);
  EXPECT_EQ(h.degree(1), 2u);
  EXPECT_EQ(h.degree(0), 1u);
  const Matrix dense = h.Densify();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::uint32_t j : h.row(i)) EXPECT_EQ(dense(i, j), 1.0);
    double row_sum = 0.0;
    for (std::size_t j = 0; j < 3; ++j) row_sum += dense(i, j);
    EXPECT_EQ(row_sum, static_cast<double>(h.degree(i)));
  }
}

TEST(SpMMTest, ZerosStayZero) {
  const SparseIncidence h(3, Groups({{0, 1}, {1, 2}}));
  const Matrix out = SpMM(h, Matrix(3, 4), true);
  EXPECT_EQ(out, Matrix(2, 4));
}

TEST(SpMMTest, SingleHyperedgeSumsMemberRows) {
  const SparseIncidence h(2, Groups({{0, 1}}));
  const Matrix x = Matrix::FromRows({{1, 2}, {10, 20}});
  EXPECT_EQ(SpMM(h, x, true), Matrix::FromRows({{11, 22}}));
}

TEST(SpMMTest, MatchesDensifiedProductExactly) {
  Rng rng = MakeRng(5, 1);
  std::bernoulli_distribution coin(0.4);
  RowGroups cols;
  for (std::size_t j = 0; j < 6; ++j) {
    std::vector<NodeId> members;
    for (NodeId i = 0; i < 10; ++i) {
      if (coin(rng)) members.push_back(i);
    }
    if (members.empty()) members.push_back(static_cast<NodeId>(j));
    cols.Add(members);
  }
  const SparseIncidence h(10, cols);
  const Matrix dense = h.Densify();
  // Small integers keep every partial sum exact.
  Matrix x(6, 3);
  Matrix y(10, 3);
  for (std::size_t i = 0; i < x.size(); ++i) x.values()[i] = static_cast<double>(i % 7) - 3;
  for (std::size_t i = 0; i < y.size(); ++i) y.values()[i] = static_cast<double>(i % 5) - 2;
  EXPECT_EQ(SpMM(h, x, false), NaiveMatMul(dense, x));
  EXPECT_EQ(SpMM(h, y, true), NaiveMatMul(Transpose(dense), y));
}

TEST(SpMMTest, RejectsMismatchedInner) {
  const SparseIncidence h(3, Groups({{0, 1}}));
  EXPECT_THROW(SpMM(h, Matrix(2, 2), true), ShapeError);
  EXPECT_THROW(SpMM(h, Matrix(3, 2), false), ShapeError);
}

}  // namespace
}  // namespace hyperneg
