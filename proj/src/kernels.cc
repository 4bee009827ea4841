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

#include "roipca/kernels.h"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace roipca {
namespace kernels {
namespace {

thread_local std::uint64_t mac_count = 0;

constexpr Index kRowBlock = 256;

std::uint64_t Work(Index a, Index b) {
  return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b);
}

// Per-output-element loops shared by the serial and parallel drivers.

inline double ColumnDot(const Matrix& q, Index k, const Vector& v) {
  const double* col = q.col(k).data();
  const double* x = v.data();
  double acc = 0.0;
  for (Index i = 0; i < q.rows(); ++i) acc += col[i] * x[i];
  return acc;
}

inline void CombineRows(const Matrix& q, const Vector& c, Vector& out,
                        Index begin, Index end) {
  for (Index i = begin; i < end; ++i) out[i] = 0.0;
  for (Index k = 0; k < q.cols(); ++k) {
    const double ck = c[k];
    const double* col = q.col(k).data();
    for (Index i = begin; i < end; ++i) out[i] += ck * col[i];
  }
}

inline void RecombineColumn(const Matrix& q, const Matrix& w, const Matrix& e,
                            const Matrix& g, Matrix& out, Index j) {
  double* dst = out.col(j).data();
  const Index d = out.rows();
  std::fill(dst, dst + d, 0.0);
  for (Index k = 0; k < q.cols(); ++k) {
    const double wk = w(k, j);
    if (wk == 0.0) continue;
    const double* col = q.col(k).data();
    for (Index i = 0; i < d; ++i) dst[i] += wk * col[i];
  }
  for (Index k = 0; k < e.cols(); ++k) {
    const double gk = g(k, j);
    if (gk == 0.0) continue;
    const double* col = e.col(k).data();
    for (Index i = 0; i < d; ++i) dst[i] += gk * col[i];
  }
}

inline void RecombineDiagonalColumn(const Matrix& q, std::span<const Index> cols,
                                    const Vector& a, const Matrix& e,
                                    const Matrix& g, Matrix& out, Index j) {
  double* dst = out.col(j).data();
  const Index d = out.rows();
  const double aj = a[j];
  const double* qc = q.col(cols[j]).data();
  for (Index i = 0; i < d; ++i) dst[i] = aj * qc[i];
  for (Index k = 0; k < e.cols(); ++k) {
    const double gk = g(k, j);
    if (gk == 0.0) continue;
    const double* col = e.col(k).data();
    for (Index i = 0; i < d; ++i) dst[i] += gk * col[i];
  }
}

inline void NormalizeColumn(Matrix& p, Index j) {
  double* col = p.col(j).data();
  double acc = 0.0;
  for (Index i = 0; i < p.rows(); ++i) acc += col[i] * col[i];
  if (acc <= 0.0) return;
  const double inv = 1.0 / std::sqrt(acc);
  for (Index i = 0; i < p.rows(); ++i) col[i] *= inv;
}

inline void ScatterColumn(Matrix& s, double alpha, const Vector& x, Index j) {
  double* col = s.col(j).data();
  const double xj = x[j];
  for (Index i = 0; i < s.rows(); ++i) col[i] += alpha * (x[i] * xj);
}

void EnsureShape(Matrix& out, Index rows, Index cols) {
  if (out.rows() != rows || out.cols() != cols) out.resize(rows, cols);
}

}  // namespace

std::uint64_t MacCount() { return mac_count; }
void ResetMacCount() { mac_count = 0; }
void AddMacs(std::uint64_t n) { mac_count += n; }

bool UseParallel(ExecPolicy policy, std::uint64_t work) {
  switch (policy) {
    case ExecPolicy::kSerial:
      return false;
    case ExecPolicy::kParallel:
      return true;
    case ExecPolicy::kAuto:
#ifdef _OPENMP
      return work >= kParallelThreshold && omp_get_max_threads() > 1 &&
             !omp_in_parallel();
#else
      return false;
#endif
  }
  return false;
}

double Dot(const Vector& a, const Vector& b) {
  AddMacs(static_cast<std::uint64_t>(a.size()));
  double acc = 0.0;
  for (Index i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

namespace serial {

void ProjectOnto(const Matrix& q, const Vector& v, Vector& out) {
  out.resize(q.cols());
  for (Index k = 0; k < q.cols(); ++k) out[k] = ColumnDot(q, k, v);
}

void Combine(const Matrix& q, const Vector& c, Vector& out) {
  out.resize(q.rows());
  CombineRows(q, c, out, 0, q.rows());
}

void Recombine(const Matrix& q, const Matrix& w, const Matrix& e,
               const Matrix& g, Matrix& out) {
  EnsureShape(out, q.rows(), w.cols());
  for (Index j = 0; j < w.cols(); ++j) RecombineColumn(q, w, e, g, out, j);
}

void RecombineDiagonal(const Matrix& q, std::span<const Index> cols,
                       const Vector& a, const Matrix& e, const Matrix& g,
                       Matrix& out) {
  const auto n = static_cast<Index>(cols.size());
  EnsureShape(out, q.rows(), n);
  for (Index j = 0; j < n; ++j) RecombineDiagonalColumn(q, cols, a, e, g, out, j);
}

void NormalizeColumns(Matrix& p) {
  for (Index j = 0; j < p.cols(); ++j) NormalizeColumn(p, j);
}

void ScatterRankOne(Matrix& s, double alpha, const Vector& x) {
  for (Index j = 0; j < s.cols(); ++j) ScatterColumn(s, alpha, x, j);
}

void SymMatVec(const Matrix& s, const Vector& x, Vector& y) {
  y.resize(s.rows());
  for (Index i = 0; i < s.rows(); ++i) y[i] = ColumnDot(s, i, x);
}

}  // namespace serial

namespace parallel {

void ProjectOnto(const Matrix& q, const Vector& v, Vector& out) {
  out.resize(q.cols());
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < q.cols(); ++k) out[k] = ColumnDot(q, k, v);
}

void Combine(const Matrix& q, const Vector& c, Vector& out) {
  out.resize(q.rows());
  const Index blocks = (q.rows() + kRowBlock - 1) / kRowBlock;
#pragma omp parallel for schedule(static)
  for (Index b = 0; b < blocks; ++b) {
    const Index begin = b * kRowBlock;
    CombineRows(q, c, out, begin, std::min(q.rows(), begin + kRowBlock));
  }
}

void Recombine(const Matrix& q, const Matrix& w, const Matrix& e,
               const Matrix& g, Matrix& out) {
  EnsureShape(out, q.rows(), w.cols());
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < w.cols(); ++j) RecombineColumn(q, w, e, g, out, j);
}

void RecombineDiagonal(const Matrix& q, std::span<const Index> cols,
                       const Vector& a, const Matrix& e, const Matrix& g,
                       Matrix& out) {
  const auto n = static_cast<Index>(cols.size());
  EnsureShape(out, q.rows(), n);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j) RecombineDiagonalColumn(q, cols, a, e, g, out, j);
}

void NormalizeColumns(Matrix& p) {
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < p.cols(); ++j) NormalizeColumn(p, j);
}

void ScatterRankOne(Matrix& s, double alpha, const Vector& x) {
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < s.cols(); ++j) ScatterColumn(s, alpha, x, j);
}

void SymMatVec(const Matrix& s, const Vector& x, Vector& y) {
  y.resize(s.rows());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < s.rows(); ++i) y[i] = ColumnDot(s, i, x);
}

}  // namespace parallel

void ProjectOnto(const Matrix& q, const Vector& v, Vector& out,
                 ExecPolicy policy) {
  const auto work = Work(q.rows(), q.cols());
  AddMacs(work);
  if (UseParallel(policy, work)) {
    parallel::ProjectOnto(q, v, out);
  } else {
    serial::ProjectOnto(q, v, out);
  }
}

void Combine(const Matrix& q, const Vector& c, Vector& out, ExecPolicy policy) {
  const auto work = Work(q.rows(), q.cols());
  AddMacs(work);
  if (UseParallel(policy, work)) {
    parallel::Combine(q, c, out);
  } else {
    serial::Combine(q, c, out);
  }
}

void Recombine(const Matrix& q, const Matrix& w, const Matrix& e,
               const Matrix& g, Matrix& out, ExecPolicy policy) {
  const auto work = Work(q.rows(), (q.cols() + e.cols()) * w.cols());
  AddMacs(work);
  if (UseParallel(policy, work)) {
    parallel::Recombine(q, w, e, g, out);
  } else {
    serial::Recombine(q, w, e, g, out);
  }
}

void RecombineDiagonal(const Matrix& q, std::span<const Index> cols,
                       const Vector& a, const Matrix& e, const Matrix& g,
                       Matrix& out, ExecPolicy policy) {
  const auto n = static_cast<Index>(cols.size());
  const auto work = Work(q.rows(), (1 + e.cols()) * n);
  AddMacs(work);
  if (UseParallel(policy, work)) {
    parallel::RecombineDiagonal(q, cols, a, e, g, out);
  } else {
    serial::RecombineDiagonal(q, cols, a, e, g, out);
  }
}

void NormalizeColumns(Matrix& p, ExecPolicy policy) {
  const auto work = Work(p.rows(), p.cols());
  AddMacs(work);
  if (UseParallel(policy, work)) {
    parallel::NormalizeColumns(p);
  } else {
    serial::NormalizeColumns(p);
  }
}

void ScatterRankOne(Matrix& s, double alpha, const Vector& x, ExecPolicy policy) {
  const auto work = Work(s.rows(), s.cols());
  AddMacs(work);
  if (UseParallel(policy, work)) {
    parallel::ScatterRankOne(s, alpha, x);
  } else {
    serial::ScatterRankOne(s, alpha, x);
  }
}

void SymMatVec(const Matrix& s, const Vector& x, Vector& y, ExecPolicy policy) {
  const auto work = Work(s.rows(), s.cols());
  AddMacs(work);
  if (UseParallel(policy, work)) {
    parallel::SymMatVec(s, x, y);
  } else {
    serial::SymMatVec(s, x, y);
  }
}

}  // namespace kernels
}  // namespace roipca
