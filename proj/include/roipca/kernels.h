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

#ifndef ROIPCA_KERNELS_H_
#define ROIPCA_KERNELS_H_

// Dense inner loops shared by the update formulas. Every kernel has a serial
// reference implementation and an OpenMP implementation that partitions the
// output into independent columns (or row blocks) and runs the same per-element
// loop, so both produce bit-identical results.

#include <cstdint>
#include <span>

#include <Eigen/Core>

namespace roipca {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class ExecPolicy { kSerial, kParallel, kAuto };

namespace kernels {

// Per-thread multiply-accumulate counter. Kernels add their analytic MAC count
// on the calling thread, so parallel execution does not change the tally.
std::uint64_t MacCount();
void ResetMacCount();
void AddMacs(std::uint64_t n);

// Work (in MACs) above which kAuto selects the OpenMP path.
inline constexpr std::uint64_t kParallelThreshold = 1u << 16;

bool UseParallel(ExecPolicy policy, std::uint64_t work);

double Dot(const Vector& a, const Vector& b);

// out = Q^T v.
void ProjectOnto(const Matrix& q, const Vector& v, Vector& out,
                 ExecPolicy policy = ExecPolicy::kAuto);

// out = Q c.
void Combine(const Matrix& q, const Vector& c, Vector& out,
             ExecPolicy policy = ExecPolicy::kAuto);

// out.col(j) = Q w.col(j) + E g.col(j). E may have zero columns.
void Recombine(const Matrix& q, const Matrix& w, const Matrix& e,
               const Matrix& g, Matrix& out,
               ExecPolicy policy = ExecPolicy::kAuto);

// out.col(j) = a(j) Q.col(cols[j]) + E g.col(j).
void RecombineDiagonal(const Matrix& q, std::span<const Index> cols,
                       const Vector& a, const Matrix& e, const Matrix& g,
                       Matrix& out, ExecPolicy policy = ExecPolicy::kAuto);

// Scales every column to unit norm. Columns of zero norm are left untouched.
void NormalizeColumns(Matrix& p, ExecPolicy policy = ExecPolicy::kAuto);

// S += alpha x x^T, keeping S exactly symmetric.
void ScatterRankOne(Matrix& s, double alpha, const Vector& x,
                    ExecPolicy policy = ExecPolicy::kAuto);

// y = S x for symmetric S.
void SymMatVec(const Matrix& s, const Vector& x, Vector& y,
               ExecPolicy policy = ExecPolicy::kAuto);

namespace serial {
void ProjectOnto(const Matrix& q, const Vector& v, Vector& out);
void Combine(const Matrix& q, const Vector& c, Vector& out);
void Recombine(const Matrix& q, const Matrix& w, const Matrix& e,
               const Matrix& g, Matrix& out);
void RecombineDiagonal(const Matrix& q, std::span<const Index> cols,
                       const Vector& a, const Matrix& e, const Matrix& g,
                       Matrix& out);
void NormalizeColumns(Matrix& p);
void ScatterRankOne(Matrix& s, double alpha, const Vector& x);
void SymMatVec(const Matrix& s, const Vector& x, Vector& y);
}  // namespace serial

namespace parallel {
void ProjectOnto(const Matrix& q, const Vector& v, Vector& out);
void Combine(const Matrix& q, const Vector& c, Vector& out);
void Recombine(const Matrix& q, const Matrix& w, const Matrix& e,
               const Matrix& g, Matrix& out);
void RecombineDiagonal(const Matrix& q, std::span<const Index> cols,
                       const Vector& a, const Matrix& e, const Matrix& g,
                       Matrix& out);
void NormalizeColumns(Matrix& p);
void ScatterRankOne(Matrix& s, double alpha, const Vector& x);
void SymMatVec(const Matrix& s, const Vector& x, Vector& y);
}  // namespace parallel

}  // namespace kernels
}  // namespace roipca

#endif  // ROIPCA_KERNELS_H_
