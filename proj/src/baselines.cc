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

#include <algorithm>
#include <cmath>
#include <limits>

#include "roipca/error.h"

namespace roipca {
namespace {

constexpr double kResidualTolerance = 1e-12;
constexpr double kGramTolerance = 1e-6;

Matrix Centered(const Matrix& x) {
  return x.rowwise() - x.colwise().mean();
}

void CheckWarmStart(const Matrix& x, Index m) {
  if (m < 1 || m > x.cols()) {
    throw InvalidInputError("component count out of range");
  }
  if (x.rows() < m + 1) {
    throw InsufficientDataError("need at least m + 1 rows");
  }
  if (!AllFinite(x)) throw InvalidInputError("data not finite");
}

}  // namespace

EigenPairs BatchPca(const Matrix& x, Index m) {
  CheckWarmStart(x, m);
  return LeadingScatterPairs(Centered(x), m);
}

IpcaState IpcaInit(const Matrix& x0, Index m) {
  IpcaState state;
  state.pairs = BatchPca(x0, m);
  state.n = x0.rows();
  state.mean0 = x0.colwise().mean().transpose();
  return state;
}

void IpcaIngest(IpcaState& state, const Vector& x) {
  if (x.size() != state.mean0.size()) {
    throw InvalidInputError("sample has the wrong dimension");
  }
  const Index m = state.pairs.count();
  const Matrix& q = state.pairs.vectors;
  const Vector xc = x - state.mean0;
  const Vector p = q.transpose() * xc;
  const Vector r = xc - q * p;
  const double rn = r.norm();
  const bool grow = rn > kResidualTolerance * xc.norm();
  const Index k = grow ? m + 1 : m;

  Matrix small = Matrix::Zero(k, k);
  small.topLeftCorner(m, m) = p * p.transpose();
  small.topLeftCorner(m, m).diagonal() += state.pairs.values;
  if (grow) {
    small.block(0, m, m, 1) = rn * p;
    small.block(m, 0, 1, m) = rn * p.transpose();
    small(m, m) = rn * rn;
  }
  const EigenPairs e = SymEigh(SymmetricMatrix::FromDense(small));
  Matrix rotated = q * e.vectors.topLeftCorner(m, m);
  if (grow) rotated += (r / rn) * e.vectors.block(m, 0, 1, m);
  state.pairs = {e.values.head(m), std::move(rotated)};
  ++state.n;
}

EigenPairs CcipcaState::Components() const {
  EigenPairs out{Vector(v.cols()), Matrix(v.rows(), v.cols())};
  for (Index j = 0; j < v.cols(); ++j) {
    const double norm = v.col(j).norm();
    out.values[j] = norm;
    out.vectors.col(j) = v.col(j) / norm;
  }
  return out;
}

CcipcaState CcipcaInit(const Matrix& x0, Index m, double amnesic) {
  const EigenPairs pairs = BatchPca(x0, m);
  CcipcaState state;
  state.n = x0.rows();
  state.amnesic = amnesic;
  state.mean0 = x0.colwise().mean().transpose();
  // Covariance-scale directions; a null eigenvalue keeps a tiny direction so
  // the estimate can grow.
  const Vector scale = (pairs.values / static_cast<double>(state.n))
                           .cwiseMax(std::numeric_limits<double>::min());
  state.v = pairs.vectors * scale.asDiagonal();
  return state;
}

void CcipcaIngest(CcipcaState& state, const Vector& x) {
  if (x.size() != state.mean0.size()) {
    throw InvalidInputError("sample has the wrong dimension");
  }
  ++state.n;
  const double n = static_cast<double>(state.n);
  const double keep = (n - 1.0 - state.amnesic) / n;
  const double gain = (1.0 + state.amnesic) / n;
  Vector u = x - state.mean0;
  for (Index j = 0; j < state.v.cols(); ++j) {
    auto vj = state.v.col(j);
    const double norm = vj.norm();
    const double proj = norm > 0.0 ? u.dot(vj) / norm : 0.0;
    vj = keep * vj + (gain * proj) * u;
    const double updated = vj.norm();
    if (updated > 0.0) u -= (u.dot(vj) / (updated * updated)) * vj;
  }
}

double EigenspaceError(const EigenPairs& estimate, const EigenPairs& reference) {
  const Matrix& a = estimate.vectors;
  const Matrix& b = reference.vectors;
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.cols() == 0) {
    throw InvalidInputError("eigenspaces must have equal shape");
  }
  if (OrthonormalityDefect(a) > kGramTolerance ||
      OrthonormalityDefect(b) > kGramTolerance) {
    throw InvalidInputError("eigenspace basis is not orthonormal");
  }
  const double m = static_cast<double>(a.cols());
  const double overlap = (a.transpose() * b).squaredNorm();
  return std::clamp((2.0 * m - 2.0 * overlap) / m, 0.0, 2.0);
}

}  // namespace roipca
