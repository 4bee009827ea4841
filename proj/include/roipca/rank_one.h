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

#ifndef ROIPCA_RANK_ONE_H_
#define ROIPCA_RANK_ONE_H_

// Symmetric rank-one eigenvalue updates A + rho v v^T, with the full spectrum
// (secular equation and explicit eigenvector formula) or with only the m
// leading eigenpairs of A known (truncated secular equations of first and
// second order, their eigenvector formulas, and the O(d) "fast" variants).

#include <optional>
#include <vector>

#include "roipca/linalg.h"
#include "roipca/secular.h"

namespace roipca {

// A + rho v v^T with |v| = 1 and rho != 0.
struct RankOneUpdate {
  double rho = 0.0;
  Vector v;

  // rho = |x|^2, v = x / |x|. Throws InvalidInputError for a zero vector.
  static RankOneUpdate FromVector(const Vector& x);
  // rho = alpha |x|^2, v = x / |x|.
  static RankOneUpdate FromScaledVector(double alpha, const Vector& x);
  void Validate() const;
};

// Retained eigenpairs together with the projection of the update direction.
struct TruncatedSpectrum {
  EigenPairs pairs;
  Vector z;            // Q^T v
  double zres = 0.0;   // 1 - |z|^2 clamped to [0, 1]
  double mu = 0.0;     // surrogate for the unknown eigenvalues
  std::optional<double> s;  // v^T A (I - Q Q^T) v, when A is available

  // Computes z and zres from pairs and v.
  static TruncatedSpectrum Build(const EigenPairs& pairs, const Vector& v,
                                 double mu, std::optional<double> s = {});

  // True when v carries mass outside span(Q) (zres above kTailThreshold).
  bool HasTail() const;
};

// zres at or below this is treated as zero (v inside the retained span).
inline constexpr double kTailThreshold = 1e-14;

struct DeflationTolerance {
  double z = 1e-12;    // |z_i| <= z * |v| deflates component i
  double gap = 1e-12;  // |l_i - l_j| <= gap * max(1, |l_1|) merges a pair
};

// Givens mixing applied to a near-duplicate eigenvalue pair: column `keep`
// becomes c q_keep + s q_zeroed and `zeroed` becomes -s q_keep + c q_zeroed.
struct Rotation {
  Index keep;
  Index zeroed;
  double c;
  double s;
};

struct Passthrough {
  Index index;
  double value;
  Vector vector;
};

struct DeflatedProblem {
  TruncatedSpectrum active;           // strictly distinct, nonzero z
  std::vector<Index> active_index;    // original index of each active pair
  std::vector<Passthrough> passthrough;
  std::vector<Rotation> rotations;
};

DeflatedProblem Deflate(const TruncatedSpectrum& spec,
                        const DeflationTolerance& tol = {});

// All d eigenpairs of A + rho v v^T given all d eigenpairs of A.
EigenPairs ExactUpdate(const EigenPairs& full, const RankOneUpdate& upd);

// The m largest roots of the first (order 1) or second (order 2) order
// truncated secular equation. `spec` must already be deflated. Throws
// InvalidInputError when mu sits within 1e-10 max(1, |l_1|) of a retained
// eigenvalue; callers perturb mu (see NudgeMu).
std::vector<SecularRoot> TruncatedRoots(const TruncatedSpectrum& spec,
                                        int order, double rho);

// Moves mu by 1e-8 max(1, |l_1|) away from any retained eigenvalue closer
// than 1e-10 max(1, |l_1|).
double NudgeMu(double mu, const Vector& values);

// v^T A (I - Q Q^T) v computed as v^T (A r) with r = v - Q Q^T v.
double ComputeS(const Vector& v, const SymmetricMatrix& a,
                const EigenPairs& basis);

// Unit-norm approximation of the eigenvector for `root`. Order 2 needs the
// matrix being updated.
Vector TruncatedEigenvector(const TruncatedSpectrum& spec,
                            const SecularRoot& root, int order,
                            const RankOneUpdate& upd,
                            const SymmetricMatrix* scatter = nullptr);

// Least-squares surrogate for the off-diagonal resolvent weights of root i.
double OptimalEta(const TruncatedSpectrum& spec, const SecularRoot& root,
                  Index i);

// O(d) approximation of the eigenvector for root i, with the off-diagonal
// weights 1/(l_k - t_i), k != i, replaced by eta.
Vector FastEigenvector(const TruncatedSpectrum& spec, const SecularRoot& root,
                       Index i, int order, const RankOneUpdate& upd, double eta,
                       const SymmetricMatrix* scatter = nullptr);

enum class EigvecFormula { kTruncated, kFast };

struct UpdateOptions {
  int order = 1;
  EigvecFormula formula = EigvecFormula::kTruncated;
  DeflationTolerance tolerance;
  ExecPolicy exec = ExecPolicy::kAuto;
};

// Products with the matrix being updated, precomputed once per update. Only
// needed for order 2.
struct ScatterProducts {
  Vector r;   // v - Q z
  Vector ar;  // A r
};

// Replaces the retained eigenpairs in spec.pairs by their approximations after
// the update, using batched kernels. spec.z / spec.zres must be consistent
// with upd.v. Returns the pairs sorted descending.
EigenPairs ApplyTruncatedUpdate(const TruncatedSpectrum& spec,
                                const RankOneUpdate& upd,
                                const UpdateOptions& options,
                                const ScatterProducts* products = nullptr);

}  // namespace roipca

#endif  // ROIPCA_RANK_ONE_H_
