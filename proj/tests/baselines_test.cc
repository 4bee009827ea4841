// Copyright 2026 The roipca Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roipca/baselines.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "roipca/error.h"
#include "test_util.h"

namespace roipca {
namespace {

using testing::RandomGaussian;
using testing::RandomMatrix;

TEST(BatchPcaTest, LineThroughOrigin) {
  const Vector dir = Vector{{3.0, 4.0, 0.0}} / 5.0;
  Matrix x(5, 3);
  for (Index i = 0; i < 5; ++i) x.row(i) = (i - 2.0) * dir.transpose();
  const EigenPairs e = BatchPca(x, 1);
  EXPECT_LE(ProjectorDistance(e.vectors.col(0), dir), 1e-14);
  EXPECT_NEAR(e.values[0], 10.0, 1e-13);
}

TEST(BatchPcaTest, ReconstructsCenteredScatter) {
  std::mt19937_64 rng(1);
  const Matrix x = RandomMatrix(100, 6, rng);
  const EigenPairs e = BatchPca(x, 6);
  const Matrix c = x.rowwise() - x.colwise().mean();
  const Matrix s = c.transpose() * c;
  const Matrix rec = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
  EXPECT_LE((rec - s).norm(), 1e-10 * s.norm());
  EXPECT_NEAR(e.values.sum(), s.trace(), 1e-10 * s.trace());
  EXPECT_GE(e.values.minCoeff(), 0.0);
  for (Index i = 1; i < 6; ++i) EXPECT_GE(e.values[i - 1], e.values[i]);
}

TEST(BatchPcaTest, IsotropicSampleIsDeterministic) {
  std::mt19937_64 rng(2);
  const Matrix x = RandomMatrix(400, 2, rng);
  const EigenPairs e = BatchPca(x, 1);
  const Matrix c = x.rowwise() - x.colwise().mean();
  const EigenPairs want =
      SymEigh(SymmetricMatrix::FromDense(c.transpose() * c));
  EXPECT_NEAR(e.values[0], want.values[0], 1e-10 * want.values[0]);
  EXPECT_LT(want.values[0] / want.values[1], 1.5);
  EXPECT_EQ(BatchPca(x, 1).vectors, e.vectors);
}

TEST(BatchPcaTest, InsufficientRows) {
  EXPECT_THROW(BatchPca(Matrix::Ones(2, 4), 2), InsufficientDataError);
}

TEST(IpcaTest, InSpanSampleKeepsSubspace) {
  std::mt19937_64 rng(3);
  const Matrix basis = testing::RandomOrthogonal(6, rng).leftCols(2);
  Matrix x0(5, 6);
  for (Index i = 0; i < 5; ++i) {
    x0.row(i) = (basis * RandomGaussian(2, rng)).transpose();
  }
  IpcaState s = IpcaInit(x0, 2);
  for (int k = 0; k < 50; ++k) {
    IpcaIngest(s, basis * RandomGaussian(2, rng));
    EXPECT_LE(SubspaceDistance(s.pairs.vectors, basis), 1e-8);
  }
}

TEST(IpcaTest, RankTwoStreamMatchesBatch) {
  std::mt19937_64 rng(4);
  const Matrix basis = testing::RandomOrthogonal(8, rng).leftCols(2);
  Matrix x(60, 8);
  for (Index i = 0; i < 60; ++i) {
    x.row(i) = (basis * RandomGaussian(2, rng)).transpose();
  }
  IpcaState s = IpcaInit(x.topRows(10), 2);
  for (Index i = 10; i < 60; ++i) {
    IpcaIngest(s, x.row(i).transpose());
    EXPECT_LE(EigenspaceError(s.pairs, BatchPca(x.topRows(i + 1), 2)), 1e-8);
  }
}

TEST(IpcaTest, FullDimensionalStream) {
  std::mt19937_64 rng(5);
  const Matrix x = RandomMatrix(300, 7, rng);
  IpcaState s = IpcaInit(x.topRows(20), 3);
  for (Index i = 20; i < 300; ++i) IpcaIngest(s, x.row(i).transpose());
  EXPECT_LE(OrthonormalityDefect(s.pairs.vectors), 1e-8);
  EXPECT_EQ(s.n, 300);

  // At m = d the model is the exact scatter around mean0.
  IpcaState full = IpcaInit(x.topRows(20), 7);
  for (Index i = 20; i < 300; ++i) IpcaIngest(full, x.row(i).transpose());
  const Matrix c = x.rowwise() - full.mean0.transpose();
  const EigenPairs want =
      SymEigh(SymmetricMatrix::FromDense(c.transpose() * c));
  EXPECT_LE((full.pairs.values - want.values).cwiseAbs().maxCoeff(),
            1e-8 * want.values[0]);
  EXPECT_LE(testing::MaxVectorDistance(full.pairs.vectors, want.vectors), 1e-8);
}

TEST(CcipcaTest, SingleSample) {
  const Vector x{{1.0, 2.0, 2.0}};
  CcipcaState s;
  s.v = x;
  s.n = 0;
  s.amnesic = 0.0;
  s.mean0 = Vector::Zero(3);
  CcipcaIngest(s, x);
  // (x^T xhat) x = |x|^2 xhat.
  EXPECT_LE((s.v.col(0) - 9.0 * x / 3.0).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(CcipcaTest, RepeatedSampleConverges) {
  const Vector x{{1.0, -2.0, 0.5, 3.0}};
  CcipcaState s;
  s.v = Vector{{1.0, 1.0, 1.0, 1.0}};
  s.n = 1;
  s.mean0 = Vector::Zero(4);
  for (int k = 0; k < 1000; ++k) CcipcaIngest(s, x);
  EXPECT_LE(ProjectorDistance(s.Components().vectors.col(0), x), 1e-3);
}

TEST(CcipcaTest, DeflationKeepsOrthogonality) {
  const Vector a{{2.0, 0.0, 0.0}};
  const Vector b{{0.0, 1.0, 0.0}};
  Matrix x0(4, 3);
  x0 << a.transpose(), b.transpose(), -a.transpose(), -b.transpose();
  CcipcaState s = CcipcaInit(x0, 2);
  for (int k = 0; k < 200; ++k) {
    CcipcaIngest(s, k % 2 ? b : a);
    const EigenPairs c = s.Components();
    EXPECT_LE(std::abs(c.vectors.col(0).dot(c.vectors.col(1))), 1e-10);
  }
}

TEST(EigenspaceErrorTest, MetricSanity) {
  std::mt19937_64 rng(6);
  const Matrix q = testing::RandomOrthogonal(10, rng);
  const EigenPairs a{Vector::Ones(3), q.leftCols(3)};
  const EigenPairs b{Vector::Ones(3), q.middleCols(3, 3)};
  EXPECT_NEAR(EigenspaceError(a, a), 0.0, 1e-14);
  EXPECT_NEAR(EigenspaceError(a, b), 2.0, 1e-12);
  EXPECT_NEAR(EigenspaceError(a, b), EigenspaceError(b, a), 1e-15);
  const Matrix mix = testing::RandomOrthogonal(3, rng);
  const EigenPairs mixed{Vector::Ones(3), a.vectors * mix};
  EXPECT_NEAR(EigenspaceError(mixed, a), 0.0, 1e-10);
  EXPECT_NEAR(EigenspaceError(mixed, b), 2.0, 1e-10);
}

TEST(EigenspaceErrorTest, FortyFiveDegrees) {
  const double h = 1.0 / std::sqrt(2.0);
  const EigenPairs a{Vector::Ones(1), Matrix{{1.0}, {0.0}}};
  const EigenPairs b{Vector::Ones(1), Matrix{{h}, {h}}};
  EXPECT_NEAR(EigenspaceError(a, b), 1.0, 1e-15);
}

TEST(EigenspaceErrorTest, RejectsNonOrthonormal) {
  const EigenPairs a{Vector::Ones(1), Matrix{{1.0}, {1.0}}};
  EXPECT_THROW(EigenspaceError(a, a), InvalidInputError);
}

}  // namespace
}  // namespace roipca
