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

#include "roipca/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "roipca/error.h"

namespace roipca {

SymmetricMatrix::SymmetricMatrix(Index dim) : m_(Matrix::Zero(dim, dim)) {}

SymmetricMatrix SymmetricMatrix::FromDense(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidInputError("symmetric matrix must be square");
  }
  if (!AllFinite(m)) {
    throw InvalidInputError("symmetric matrix has non-finite entries");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidInputError("matrix is not symmetric");
  }
  SymmetricMatrix out;
  out.m_ = 0.5 * (m + m.transpose());
  return out;
}

SymmetricMatrix SymmetricMatrix::Diagonal(const Vector& diag) {
  SymmetricMatrix out(diag.size());
  out.m_.diagonal() = diag;
  return out;
}

SymmetricMatrix SymmetricMatrix::Identity(Index dim) {
  return Diagonal(Vector::Ones(dim));
}

SymmetricMatrix SymmetricMatrix::Gram(const Matrix& rows) {
  SymmetricMatrix out(rows.cols());
  out.m_.selfadjointView<Eigen::Lower>().rankUpdate(rows.transpose());
  out.m_.triangularView<Eigen::StrictlyUpper>() =
      out.m_.transpose().triangularView<Eigen::StrictlyUpper>();
  return out;
}

void SymmetricMatrix::AddRankOne(double alpha, const Vector& x,
                                 ExecPolicy policy) {
  kernels::ScatterRankOne(m_, alpha, x, policy);
}

void SymmetricMatrix::AddSymmetricOuter(double alpha, const Vector& a,
                                        const Vector& b) {
  for (Index j = 0; j < dim(); ++j) {
    for (Index i = 0; i < dim(); ++i) {
      m_(i, j) += alpha * (a[i] * b[j] + b[i] * a[j]);
    }
  }
}

Vector SymmetricMatrix::Multiply(const Vector& x, ExecPolicy policy) const {
  Vector y;
  kernels::SymMatVec(m_, x, y, policy);
  return y;
}

EigenPairs EigenPairs::Leading(Index m) const {
  return {values.head(m), vectors.leftCols(m)};
}

EigenPairs SymEigh(const SymmetricMatrix& m) {
  if (m.dim() < 1) throw InvalidInputError("empty matrix");
  if (!AllFinite(m.dense())) {
    throw InvalidInputError("matrix has non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.dense());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("symmetric eigensolver failed", 0.0, 0.0);
  }
  // Eigen returns ascending order.
  EigenPairs out{solver.eigenvalues().reverse(),
                 solver.eigenvectors().rowwise().reverse()};
  return out;
}

void SortDescending(EigenPairs& pairs) {
  const Index m = pairs.count();
  std::vector<Index> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return pairs.values[a] > pairs.values[b];
  });
  EigenPairs sorted{Vector(m), Matrix(pairs.dim(), m)};
  for (Index i = 0; i < m; ++i) {
    sorted.values[i] = pairs.values[order[i]];
    sorted.vectors.col(i) = pairs.vectors.col(order[i]);
  }
  pairs = std::move(sorted);
}

EigenPairs LeadingScatterPairs(const Matrix& rows, Index m) {
  const Index n = rows.rows();
  const Index d = rows.cols();
  if (m < 1 || m > d) throw InvalidInputError("component count out of range");
  if (n >= d) return SymEigh(SymmetricMatrix::Gram(rows)).Leading(m);
  // Dual route: X X^T u = l u gives X^T u / sqrt(l) as a unit eigenvector.
  const EigenPairs dual =
      SymEigh(SymmetricMatrix::Gram(rows.transpose()));
  const double floor = 1e-12 * std::max(dual.values[0], 0.0);
  if (m > n || !(dual.values[m - 1] > floor)) {
    return SymEigh(SymmetricMatrix::Gram(rows)).Leading(m);
  }
  EigenPairs out{dual.values.head(m), Matrix(d, m)};
  for (Index j = 0; j < m; ++j) {
    out.vectors.col(j) =
        rows.transpose() * dual.vectors.col(j) / std::sqrt(dual.values[j]);
  }
  out.vectors = Orthonormalize(out.vectors).basis;
  return out;
}

OrthonormalBasis Orthonormalize(const Matrix& columns) {
  OrthonormalBasis out;
  const Index d = columns.rows();
  double largest = 0.0;
  for (Index j = 0; j < columns.cols(); ++j) {
    largest = std::max(largest, columns.col(j).norm());
  }
  out.basis.resize(d, columns.cols());
  Index kept = 0;
  for (Index j = 0; j < columns.cols(); ++j) {
    Vector v = columns.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Index k = 0; k < kept; ++k) {
        v -= out.basis.col(k).dot(v) * out.basis.col(k);
      }
    }
    const double norm = v.norm();
    if (largest == 0.0 || norm <= 1e-14 * largest) {
      out.dropped.push_back(j);
      continue;
    }
    out.basis.col(kept++) = v / norm;
  }
  out.basis.conservativeResize(d, kept);
  return out;
}

double OrthonormalityDefect(const Matrix& q) {
  if (q.cols() == 0) return 0.0;
  const Matrix gram = q.transpose() * q;
  return (gram - Matrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

double ProjectorDistance(const Vector& a, const Vector& b) {
  // sqrt(2) sin(theta), with sin(theta) recovered from the chord
  // |a -+ b| = 2 sin(theta / 2) to avoid cancellation at small angles.
  const double chord = a.dot(b) >= 0.0 ? (a - b).norm() : (a + b).norm();
  return std::sqrt(2.0) * chord *
         std::sqrt(std::max(0.0, 1.0 - 0.25 * chord * chord));
}

double SubspaceDistance(const Matrix& u, const Matrix& v) {
  return (u * u.transpose() - v * v.transpose()).norm();
}

bool AllFinite(const Matrix& m) { return m.allFinite(); }

}  // namespace roipca
