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

#ifndef ROIPCA_ONLINE_PCA_H_
#define ROIPCA_ONLINE_PCA_H_

#include <cstdint>
#include <optional>

#include "roipca/linalg.h"
#include "roipca/rank_one.h"

namespace roipca {

enum class Algorithm {
  kCovarianceFree,  // eigenpairs, trace and means only
  kCovariance,      // additionally keeps the scatter matrix
};

enum class MuPolicy { kZero, kMean, kStar };

struct OnlinePcaConfig {
  Index m = 5;
  Algorithm algorithm = Algorithm::kCovarianceFree;
  int order = 1;
  EigvecFormula formula = EigvecFormula::kTruncated;
  MuPolicy mu = MuPolicy::kMean;
  std::optional<std::int64_t> recenter_every;
  std::int64_t reorthonormalize_every = 100;
  ExecPolicy exec = ExecPolicy::kAuto;

  // Throws InvalidInputError for illegal combinations.
  void Validate() const;
};

// Scatter-scale model: eigenpairs of X^T X for the data seen so far, centered
// by mean0.
struct SpectralState {
  EigenPairs pairs;
  std::int64_t n = 0;
  double trace = 0.0;
  Vector mean0;
  Vector running_mean;
  Vector colsum;  // column sums of the data centered by mean0
  std::optional<SymmetricMatrix> scatter;
  std::int64_t skipped = 0;
  std::int64_t ingests = 0;

  Index dim() const { return mean0.size(); }
};

SpectralState InitFromBatch(const Matrix& x0, const OnlinePcaConfig& cfg);

void Ingest(SpectralState& state, const Vector& x, const OnlinePcaConfig& cfg);

// The mu surrogate for the update direction v with z = Q^T v.
double MuValue(const SpectralState& state, const OnlinePcaConfig& cfg,
               const Vector& v, const Vector& z);

void UpdateTrace(SpectralState& state, const Vector& x_centered);

// Changes the centering vector to mu2 through two rank-one updates.
void Recenter(SpectralState& state, const Vector& mu2,
              const OnlinePcaConfig& cfg);

// Eigenpairs in covariance scale (eigenvalues divided by n).
EigenPairs Components(const SpectralState& state);

}  // namespace roipca

#endif  // ROIPCA_ONLINE_PCA_H_
