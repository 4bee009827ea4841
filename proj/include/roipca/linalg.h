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

#ifndef ROIPCA_LINALG_H_
#define ROIPCA_LINALG_H_

#include <vector>

#include <Eigen/Core>

#include "roipca/kernels.h"

namespace roipca {

// A real symmetric matrix. Symmetry is maintained by every mutator, so
// entry (i, j) and (j, i) are bit-identical at all times.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(Index dim);

  // Accepts a dense matrix that is symmetric to within 1e-12 relative and
  // stores its exact symmetric part. Throws InvalidInputError otherwise.
  static SymmetricMatrix FromDense(const Matrix& m);
  static SymmetricMatrix Diagonal(const Vector& diag);
  static SymmetricMatrix Identity(Index dim);
  // X^T X for a data matrix with samples in rows.
  static SymmetricMatrix Gram(const Matrix& rows);

  Index dim() const { return m_.rows(); }
  const Matrix& dense() const { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }
  double Trace() const { return m_.trace(); }

  // this += alpha x x^T
  void AddRankOne(double alpha, const Vector& x,
                  ExecPolicy policy = ExecPolicy::kAuto);
  // this += alpha (a b^T + b a^T)
  void AddSymmetricOuter(double alpha, const Vector& a, const Vector& b);

  Vector Multiply(const Vector& x, ExecPolicy policy = ExecPolicy::kAuto) const;

 private:
  Matrix m_;
};

// m eigenpairs of a d x d symmetric matrix. values are sorted descending and
// vectors.col(i) is the unit eigenvector paired with values(i).
struct EigenPairs {
  Vector values;
  Matrix vectors;

  Index count() const { return values.size(); }
  Index dim() const { return vectors.rows(); }

  // The first m pairs.
  EigenPairs Leading(Index m) const;
};

// Full eigendecomposition, eigenvalues descending. The reconstruction
// residual is within 1e-10 max(1, ||M||_F).
EigenPairs SymEigh(const SymmetricMatrix& m);

// Reorders pairs so that values are descending (stable for ties).
void SortDescending(EigenPairs& pairs);

// The m leading eigenpairs of X^T X for a data matrix X with samples in rows.
// Solves the smaller of the d x d and n x n problems.
EigenPairs LeadingScatterPairs(const Matrix& rows, Index m);

struct OrthonormalBasis {
  Matrix basis;               // d x k, k <= number of inputs
  std::vector<Index> dropped;  // input columns judged linearly dependent
};

// Modified Gram-Schmidt with one re-orthogonalisation pass. A column whose
// residual norm is <= 1e-14 times the largest input norm is dropped.
OrthonormalBasis Orthonormalize(const Matrix& columns);

// max |Q^T Q - I| over all entries.
double OrthonormalityDefect(const Matrix& q);

// ||a a^T - b b^T||_F for unit vectors; sign-insensitive.
double ProjectorDistance(const Vector& a, const Vector& b);

// ||U U^T - V V^T||_F with the projectors formed explicitly (O(d^2 m)); used
// where the O(md) identity would lose precision to cancellation.
double SubspaceDistance(const Matrix& u, const Matrix& v);

bool AllFinite(const Matrix& m);

}  // namespace roipca

#endif  // ROIPCA_LINALG_H_
