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

#ifndef ROIPCA_BASELINES_H_
#define ROIPCA_BASELINES_H_

#include <cstdint>

#include "roipca/linalg.h"

namespace roipca {

// The m leading eigenpairs of the column-centered scatter of X (samples in
// rows).
EigenPairs BatchPca(const Matrix& x, Index m);

// Incremental truncated eigendecomposition of the scatter centered at mean0.
struct IpcaState {
  EigenPairs pairs;
  std::int64_t n = 0;
  Vector mean0;
};

IpcaState IpcaInit(const Matrix& x0, Index m);
void IpcaIngest(IpcaState& state, const Vector& x);

// Candid covariance-free incremental PCA with amnesic averaging.
struct CcipcaState {
  Matrix v;  // unnormalized direction estimates, one per column
  std::int64_t n = 0;
  double amnesic = 2.0;
  Vector mean0;

  // Unit directions with eigenvalue estimates |v_j|.
  EigenPairs Components() const;
};

CcipcaState CcipcaInit(const Matrix& x0, Index m, double amnesic = 2.0);
void CcipcaIngest(CcipcaState& state, const Vector& x);

// |P_est - P_ref|_F^2 / m for the projectors onto the two m-dimensional
// eigenspaces. Throws InvalidInputError if either basis is not orthonormal
// to within 1e-6.
double EigenspaceError(const EigenPairs& estimate, const EigenPairs& reference);

}  // namespace roipca

#endif  // ROIPCA_BASELINES_H_
