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

#include "roipca/online_pca.h"

#include <cmath>
#include <utility>

#include "roipca/error.h"

namespace roipca {
namespace {

constexpr double kDegenerateSample = 1e-14;

double MeanTail(const SpectralState& state) {
  const Index d = state.dim();
  const Index m = state.pairs.count();
  if (d == m) return 0.0;
  return (state.trace - state.pairs.values.sum()) / static_cast<double>(d - m);
}

// Absorbs rho v v^T into the model: eigenpairs, trace and scatter.
void ApplyUpdate(SpectralState& state, const OnlinePcaConfig& cfg, double rho,
                 const Vector& v) {
  const RankOneUpdate upd{rho, v};
  TruncatedSpectrum spec = TruncatedSpectrum::Build(state.pairs, v, 0.0);
  ScatterProducts products;
  const bool need_products =
      state.scatter &&
      (cfg.order == 2 || cfg.mu == MuPolicy::kStar) && spec.HasTail();
  if (need_products) {
    Vector qz;
    kernels::Combine(state.pairs.vectors, spec.z, qz, cfg.exec);
    products.r = v - qz;
    products.ar = state.scatter->Multiply(products.r, cfg.exec);
    spec.s = kernels::Dot(v, products.ar);
    // A r is orthogonal to span(Q) for exact eigenvectors; drop the part that
    // the estimated basis leaks into it.
    Vector leak;
    kernels::ProjectOnto(state.pairs.vectors, products.ar, leak, cfg.exec);
    kernels::Combine(state.pairs.vectors, leak, qz, cfg.exec);
    products.ar -= qz;
  }
  switch (cfg.mu) {
    case MuPolicy::kZero:
      spec.mu = 0.0;
      break;
    case MuPolicy::kMean:
      spec.mu = MeanTail(state);
      break;
    case MuPolicy::kStar:
      spec.mu = spec.s && spec.HasTail() ? *spec.s / spec.zres
                                         : MeanTail(state);
      break;
  }
  spec.mu = NudgeMu(spec.mu, state.pairs.values);

  UpdateOptions options;
  options.order = cfg.order;
  options.formula = cfg.formula;
  options.exec = cfg.exec;
  state.pairs = ApplyTruncatedUpdate(spec, upd, options,
                                     need_products ? &products : nullptr);
  state.trace += rho;
  if (state.scatter) state.scatter->AddRankOne(rho, v, cfg.exec);
}

void Reorthonormalize(SpectralState& state) {
  const auto m = static_cast<std::uint64_t>(state.pairs.vectors.cols());
  kernels::AddMacs(m * m * static_cast<std::uint64_t>(state.dim()));
  OrthonormalBasis b = Orthonormalize(state.pairs.vectors);
  if (!b.dropped.empty()) {
    throw DegenerateGeometryError("retained eigenvectors lost rank");
  }
  state.pairs.vectors = std::move(b.basis);
}

}  // namespace

void OnlinePcaConfig::Validate() const {
  if (m < 1) throw InvalidInputError("m must be positive");
  if (order != 1 && order != 2) throw InvalidInputError("order must be 1 or 2");
  if (algorithm == Algorithm::kCovarianceFree && order == 2) {
    throw InvalidInputError("second order needs the covariance algorithm");
  }
  if (algorithm == Algorithm::kCovarianceFree && mu == MuPolicy::kStar) {
    throw InvalidInputError("mu = star needs the covariance algorithm");
  }
  if (recenter_every && *recenter_every < 1) {
    throw InvalidInputError("recenter interval must be positive");
  }
  if (reorthonormalize_every < 1) {
    throw InvalidInputError("reorthonormalization interval must be positive");
  }
}

SpectralState InitFromBatch(const Matrix& x0, const OnlinePcaConfig& cfg) {
  cfg.Validate();
  if (x0.rows() <= cfg.m) {
    throw InsufficientDataError("warm start needs more than m samples");
  }
  if (cfg.m > x0.cols()) {
    throw InvalidInputError("m exceeds the data dimension");
  }
  if (!AllFinite(x0)) throw InvalidInputError("warm start data not finite");
  SpectralState state;
  state.mean0 = x0.colwise().mean().transpose();
  const Matrix centered = x0.rowwise() - state.mean0.transpose();
  state.pairs = LeadingScatterPairs(centered, cfg.m);
  state.n = x0.rows();
  state.trace = centered.squaredNorm();
  state.running_mean = state.mean0;
  state.colsum = centered.colwise().sum().transpose();
  if (cfg.algorithm == Algorithm::kCovariance) {
    state.scatter = SymmetricMatrix::Gram(centered);
  }
  return state;
}

void Ingest(SpectralState& state, const Vector& x, const OnlinePcaConfig& cfg) {
  if (x.size() != state.dim()) {
    throw InvalidInputError("sample has the wrong dimension");
  }
  if (!x.allFinite()) throw InvalidInputError("sample is not finite");
  const Vector xc = x - state.mean0;
  const double norm = xc.norm();
  if (norm <= kDegenerateSample) {
    ++state.skipped;
  } else {
    ApplyUpdate(state, cfg, norm * norm, xc / norm);
    state.colsum += xc;
  }
  ++state.n;
  state.running_mean += (x - state.running_mean) / static_cast<double>(state.n);
  ++state.ingests;
  if (state.ingests % cfg.reorthonormalize_every == 0) Reorthonormalize(state);
  if (cfg.recenter_every && state.ingests % *cfg.recenter_every == 0) {
    Recenter(state, state.running_mean, cfg);
  }
}

double MuValue(const SpectralState& state, const OnlinePcaConfig& cfg,
               const Vector& v, const Vector& z) {
  switch (cfg.mu) {
    case MuPolicy::kZero:
      return 0.0;
    case MuPolicy::kMean:
      return MeanTail(state);
    case MuPolicy::kStar: {
      if (!state.scatter) {
        throw InvalidInputError("mu = star needs the scatter matrix");
      }
      const double zres = 1.0 - z.squaredNorm();
      if (zres <= kTailThreshold) return MeanTail(state);
      return ComputeS(v, *state.scatter, state.pairs) / zres;
    }
  }
  return 0.0;
}

void UpdateTrace(SpectralState& state, const Vector& x_centered) {
  state.trace += x_centered.squaredNorm();
}

void Recenter(SpectralState& state, const Vector& mu2,
              const OnlinePcaConfig& cfg) {
  if (mu2.size() != state.dim()) {
    throw InvalidInputError("centering vector has the wrong dimension");
  }
  if (state.n < 1) throw InsufficientDataError("nothing to recenter");
  const Vector mu3 = mu2 - state.mean0;
  if (mu3.norm() <= kDegenerateSample) return;
  const double n = static_cast<double>(state.n);
  const double root = std::sqrt(n * n + 4.0);
  const double rho1 = -2.0 / (n + root);
  const double rho2 = 0.5 * (n + root);
  const Vector& a = state.colsum;
  const Vector b = (rho1 * mu3 - a) / std::sqrt(rho1 * rho1 + 1.0);
  const Vector c = (rho2 * mu3 - a) / std::sqrt(rho2 * rho2 + 1.0);
  for (const auto& [rho, u] : {std::pair{rho1, &b}, std::pair{rho2, &c}}) {
    const double norm = u->norm();
    if (norm <= kDegenerateSample) continue;
    ApplyUpdate(state, cfg, rho * norm * norm, *u / norm);
  }
  state.colsum = a - n * mu3;
  state.mean0 = mu2;
}

EigenPairs Components(const SpectralState& state) {
  if (state.n < 1) throw InsufficientDataError("no samples absorbed");
  return {state.pairs.values / static_cast<double>(state.n),
          state.pairs.vectors};
}

}  // namespace roipca
