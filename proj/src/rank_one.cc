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

#include "roipca/rank_one.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "roipca/error.h"

namespace roipca {
namespace {

constexpr double kMuPoleTolerance = 1e-10;
constexpr double kMuNudge = 1e-8;
constexpr double kTinyGap = std::numeric_limits<double>::min();

int Sign(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

double ValueScale(const Vector& values) {
  return values.size() == 0 ? 1.0
                            : std::max(1.0, values.cwiseAbs().maxCoeff());
}

void CheckOrder(int order) {
  if (order != 1 && order != 2) {
    throw InvalidInputError("secular order must be 1 or 2");
  }
}

// The truncated secular function
//   f(t) = 1 + rho (sum_j w_j / (p_j - t) - c2 / (mu - t)^2)
// with the mu pole (if any) merged into the descending pole list.
class TruncatedSecular {
 public:
  TruncatedSecular(const TruncatedSpectrum& spec, int order, double rho)
      : rho_(rho) {
    const Index k = spec.pairs.count();
    const bool tail = spec.HasTail();
    poles_.reserve(static_cast<size_t>(k + 1));
    weights_.reserve(static_cast<size_t>(k + 1));
    for (Index i = 0; i < k; ++i) {
      if (tail && mu_index_ < 0 && spec.mu > spec.pairs.values[i]) {
        AddMuPole(spec, order);
      }
      poles_.push_back(spec.pairs.values[i]);
      weights_.push_back(spec.z[i] * spec.z[i]);
    }
    if (tail && mu_index_ < 0) AddMuPole(spec, order);
    shifted_.resize(poles_.size());
  }

  Index size() const { return static_cast<Index>(poles_.size()); }
  double pole(Index j) const { return poles_[static_cast<size_t>(j)]; }
  Index mu_index() const { return mu_index_; }
  double curvature() const { return curvature_; }
  double total_weight() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
  }

  void DropCurvature() { curvature_ = 0.0; }
  double TakeCurvature(double c) { return std::exchange(curvature_, c); }

  // Order of the pole at index j.
  int PoleOrder(Index j) const {
    return (j == mu_index_ && curvature_ != 0.0) ? 2 : 1;
  }

  // Sign of f just inside an interval end at pole j. `above` is true when the
  // interval lies above the pole.
  int PoleSign(Index j, bool above) const {
    if (PoleOrder(j) == 2) return -Sign(rho_ * curvature_);
    return above ? -Sign(rho_) : Sign(rho_);
  }

  void SetAnchor(double anchor) {
    anchor_ = anchor;
    for (size_t j = 0; j < poles_.size(); ++j) shifted_[j] = poles_[j] - anchor;
  }

  SecularEval operator()(double tau) const {
    double sum = 0.0;
    double dsum = 0.0;
    double mag = 0.0;
    for (size_t j = 0; j < poles_.size(); ++j) {
      const double diff = shifted_[j] - tau;
      const double term = weights_[j] / diff;
      sum += term;
      dsum += term / diff;
      mag += std::abs(term);
    }
    if (mu_index_ >= 0 && curvature_ != 0.0) {
      const double diff = shifted_[static_cast<size_t>(mu_index_)] - tau;
      const double q = curvature_ / (diff * diff);
      sum -= q;
      dsum -= 2.0 * q / diff;
      mag += std::abs(q);
    }
    kernels::AddMacs(poles_.size() + 1);
    return {1.0 + rho_ * sum, rho_ * dsum, 1.0 + std::abs(rho_) * mag};
  }

  // f at an absolute point, anchored at the nearest pole.
  SecularEval At(double t) {
    Index nearest = 0;
    for (Index j = 1; j < size(); ++j) {
      if (std::abs(pole(j) - t) < std::abs(pole(nearest) - t)) nearest = j;
    }
    SetAnchor(pole(nearest));
    return (*this)(t - pole(nearest));
  }

 private:
  void AddMuPole(const TruncatedSpectrum& spec, int order) {
    mu_index_ = static_cast<Index>(poles_.size());
    poles_.push_back(spec.mu);
    weights_.push_back(spec.zres);
    if (order == 2) curvature_ = *spec.s - spec.mu * spec.zres;
  }

  double rho_;
  std::vector<double> poles_;
  std::vector<double> weights_;
  std::vector<double> shifted_;
  Index mu_index_ = -1;
  double curvature_ = 0.0;
  double anchor_ = 0.0;
};

// Solves for the root in interval j (0-based from the top) of the m largest.
// Returns false when the interval ends share a sign (possible only next to a
// double pole).
bool SolveInterval(TruncatedSecular& f, double rho, Index j, SecularRoot& out) {
  const Index npoles = f.size();
  // Interval ends as pole indices; -1 marks an open end.
  Index lo_pole = -1;
  Index hi_pole = -1;
  if (rho > 0.0) {
    lo_pole = j;
    hi_pole = j - 1;
  } else {
    hi_pole = j;
    lo_pole = j + 1 < npoles ? j + 1 : -1;
  }
  const double weight = std::max(f.total_weight(), 1e-300);

  double lo = 0.0;
  double hi = 0.0;
  int sign_lo = 0;
  int sign_hi = 0;
  if (lo_pole >= 0) {
    lo = f.pole(lo_pole);
    sign_lo = f.PoleSign(lo_pole, /*above=*/true);
  }
  if (hi_pole >= 0) {
    hi = f.pole(hi_pole);
    sign_hi = f.PoleSign(hi_pole, /*above=*/false);
  }
  // Open ends: f -> 1 at +-infinity; start from the Weyl bound and widen.
  // The reach is kept as an offset from its pole, which may be far below the
  // pole's ulp.
  double reach_lo = 0.0;
  double reach_hi = 0.0;
  if (hi_pole < 0) {
    const double base = f.pole(lo_pole);
    double reach = rho * weight;
    for (int grow = 0; grow < 64; ++grow) {
      hi = base + reach;
      f.SetAnchor(base);
      const SecularEval e = f(reach);
      if (e.value == 0.0) {
        out = SecularRoot{hi, base, reach, lo, hi, 1, false};
        return true;
      }
      if (e.value > 0.0) break;
      reach *= 2.0;
    }
    reach_hi = reach;
    sign_hi = 1;
  }
  if (lo_pole < 0) {
    const double base = f.pole(hi_pole);
    double reach = rho * weight;  // negative
    for (int grow = 0; grow < 64; ++grow) {
      lo = base + reach;
      f.SetAnchor(base);
      const SecularEval e = f(reach);
      if (e.value == 0.0) {
        out = SecularRoot{lo, base, reach, lo, hi, 1, false};
        return true;
      }
      if (e.value > 0.0) break;
      reach *= 2.0;
    }
    reach_lo = reach;
    sign_lo = 1;
  }
  if (sign_lo == sign_hi) return false;

  OffsetBracket b;
  b.sign_lo = sign_lo;
  b.sign_hi = sign_hi;
  Index anchor_pole = -1;
  if (lo_pole >= 0 && hi_pole >= 0) {
    const double half = 0.5 * (hi - lo);
    f.SetAnchor(lo);
    const SecularEval mid = f(half);
    if (mid.value == 0.0) {
      out = SecularRoot{lo + half, lo, half, lo, hi, 1, false};
      return true;
    }
    if (Sign(mid.value) == sign_lo) {
      anchor_pole = hi_pole;
      b.lo = -half;
      b.hi = 0.0;
    } else {
      anchor_pole = lo_pole;
      b.lo = 0.0;
      b.hi = half;
    }
  } else if (lo_pole >= 0) {
    anchor_pole = lo_pole;
    b.lo = 0.0;
    b.hi = reach_hi;
  } else {
    anchor_pole = hi_pole;
    b.lo = reach_lo;
    b.hi = 0.0;
  }
  b.anchor = f.pole(anchor_pole);
  b.pole_order = f.PoleOrder(anchor_pole);
  f.SetAnchor(b.anchor);
  out = SolveInBracket(f, b);
  out.lo = lo;
  out.hi = hi;
  return true;
}

void CheckMuSeparation(const TruncatedSpectrum& spec) {
  if (!spec.HasTail()) return;
  const double tol = kMuPoleTolerance * ValueScale(spec.pairs.values);
  for (Index i = 0; i < spec.pairs.count(); ++i) {
    if (std::abs(spec.mu - spec.pairs.values[i]) <= tol) {
      throw InvalidInputError(
          "mu coincides with a retained eigenvalue; perturb mu (NudgeMu)");
    }
  }
}

// Coefficients of r and A r in the order-2 tail term for root t:
// (1/(mu-t) + mu/(mu-t)^2) r - 1/(mu-t)^2 A r.
struct TailCoefficients {
  double r = 0.0;
  double ar = 0.0;
};

TailCoefficients TailTerms(const TruncatedSpectrum& spec,
                           const SecularRoot& root, int order) {
  if (!spec.HasTail()) return {};
  const double gap = root.GapFrom(spec.mu);
  if (std::abs(gap) <= kTinyGap) {
    throw DegenerateGeometryError("root coincides with mu");
  }
  const double c = 1.0 / gap;
  if (order == 1) return {c, 0.0};
  return {c + spec.mu * c * c, -c * c};
}

// Secular weights recomputed from the computed roots (Loewner / Gu-Eisenstat),
// which makes the explicit eigenvectors numerically orthogonal. Valid when
// `roots` are all roots of the untruncated problem on the active poles.
Vector RecomputedWeights(const TruncatedSpectrum& spec,
                         const std::vector<SecularRoot>& roots, double rho) {
  const Index k = spec.pairs.count();
  const Vector& lam = spec.pairs.values;
  Vector zhat(k);
  for (Index l = 0; l < k; ++l) {
    double prod = -roots[static_cast<size_t>(l)].GapFrom(lam[l]) / rho;
    for (Index j = 0; j < k; ++j) {
      if (j == l) continue;
      prod *= -roots[static_cast<size_t>(j)].GapFrom(lam[l]) / (lam[j] - lam[l]);
    }
    zhat[l] = std::copysign(std::sqrt(std::abs(prod)), spec.z[l]);
  }
  kernels::AddMacs(static_cast<std::uint64_t>(k * k));
  return zhat;
}

}  // namespace

RankOneUpdate RankOneUpdate::FromVector(const Vector& x) {
  return FromScaledVector(1.0, x);
}

RankOneUpdate RankOneUpdate::FromScaledVector(double alpha, const Vector& x) {
  const double norm = x.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidInputError("rank-one direction must be finite and nonzero");
  }
  return {alpha * norm * norm, x / norm};
}

void RankOneUpdate::Validate() const {
  if (!std::isfinite(rho) || rho == 0.0) {
    throw InvalidInputError("rho must be finite and nonzero");
  }
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > 1e-12) {
    throw InvalidInputError("update direction must be a finite unit vector");
  }
}

TruncatedSpectrum TruncatedSpectrum::Build(const EigenPairs& pairs,
                                           const Vector& v, double mu,
                                           std::optional<double> s) {
  if (pairs.dim() != v.size()) {
    throw InvalidInputError("update direction has the wrong dimension");
  }
  TruncatedSpectrum out;
  out.pairs = pairs;
  kernels::ProjectOnto(pairs.vectors, v, out.z);
  out.zres = std::clamp(1.0 - out.z.squaredNorm(), 0.0, 1.0);
  out.mu = mu;
  out.s = s;
  return out;
}

bool TruncatedSpectrum::HasTail() const { return zres > kTailThreshold; }

DeflatedProblem Deflate(const TruncatedSpectrum& spec,
                        const DeflationTolerance& tol) {
  const Index m = spec.pairs.count();
  const Index d = spec.pairs.dim();
  const double z_tol = tol.z * std::sqrt(spec.z.squaredNorm() + spec.zres);
  const double gap_tol = tol.gap * ValueScale(spec.pairs.values);

  DeflatedProblem out;
  Vector z = spec.z;
  Matrix q = spec.pairs.vectors;
  std::vector<Index> kept;
  for (Index i = 0; i < m; ++i) {
    if (std::abs(z[i]) <= z_tol) {
      out.passthrough.push_back({i, spec.pairs.values[i], q.col(i)});
      continue;
    }
    if (!kept.empty() &&
        std::abs(spec.pairs.values[kept.back()] - spec.pairs.values[i]) <=
            gap_tol) {
      const Index j = kept.back();
      const double r = std::hypot(z[j], z[i]);
      const double c = z[j] / r;
      const double s = z[i] / r;
      const Vector qj = q.col(j);
      q.col(j) = c * qj + s * q.col(i);
      q.col(i) = -s * qj + c * q.col(i);
      z[j] = r;
      z[i] = 0.0;
      out.rotations.push_back({j, i, c, s});
      out.passthrough.push_back({i, spec.pairs.values[i], q.col(i)});
      continue;
    }
    kept.push_back(i);
  }

  const auto k = static_cast<Index>(kept.size());
  out.active.pairs.values.resize(k);
  out.active.pairs.vectors.resize(d, k);
  out.active.z.resize(k);
  for (Index a = 0; a < k; ++a) {
    const Index i = kept[static_cast<size_t>(a)];
    out.active.pairs.values[a] = spec.pairs.values[i];
    out.active.pairs.vectors.col(a) = q.col(i);
    out.active.z[a] = z[i];
  }
  out.active.zres = spec.zres;
  out.active.mu = spec.mu;
  out.active.s = spec.s;
  out.active_index = std::move(kept);
  return out;
}

double NudgeMu(double mu, const Vector& values) {
  const double scale = ValueScale(values);
  for (int pass = 0; pass < 4; ++pass) {
    bool moved = false;
    for (Index i = 0; i < values.size(); ++i) {
      if (std::abs(mu - values[i]) <= kMuPoleTolerance * scale) {
        mu = values[i] + (mu > values[i] ? 1.0 : -1.0) * kMuNudge * scale;
        moved = true;
      }
    }
    if (!moved) break;
  }
  return mu;
}

std::vector<SecularRoot> TruncatedRoots(const TruncatedSpectrum& spec,
                                        int order, double rho) {
  CheckOrder(order);
  if (!std::isfinite(rho) || rho == 0.0) {
    throw InvalidInputError("rho must be finite and nonzero");
  }
  if (order == 2 && spec.HasTail() && !spec.s) {
    throw InvalidInputError("second order roots need the s term");
  }
  CheckMuSeparation(spec);
  TruncatedSecular f(spec, order, rho);
  const Index k = spec.pairs.count();
  std::vector<SecularRoot> roots(static_cast<size_t>(k));
  for (Index j = 0; j < k; ++j) {
    SecularRoot& root = roots[static_cast<size_t>(j)];
    if (SolveInterval(f, rho, j, root)) continue;
    // No sign change next to the double pole: use the order-1 root.
    const double saved = f.TakeCurvature(0.0);
    if (!SolveInterval(f, rho, j, root)) {
      throw ConvergenceError("no root in pole interval", root.lo, root.hi);
    }
    root.fallback = true;
    f.TakeCurvature(saved);
  }
  return roots;
}

double ComputeS(const Vector& v, const SymmetricMatrix& a,
                const EigenPairs& basis) {
  if (a.dim() != v.size() || basis.dim() != v.size()) {
    throw InvalidInputError("dimension mismatch in s term");
  }
  Vector z;
  kernels::ProjectOnto(basis.vectors, v, z);
  Vector qz;
  kernels::Combine(basis.vectors, z, qz);
  const Vector r = v - qz;
  return kernels::Dot(v, a.Multiply(r));
}

Vector TruncatedEigenvector(const TruncatedSpectrum& spec,
                            const SecularRoot& root, int order,
                            const RankOneUpdate& upd,
                            const SymmetricMatrix* scatter) {
  CheckOrder(order);
  const Index m = spec.pairs.count();
  Vector coeff(m);
  for (Index k = 0; k < m; ++k) {
    const double gap = root.GapFrom(spec.pairs.values[k]);
    coeff[k] = spec.z[k] / gap;
  }
  Vector p = spec.pairs.vectors * coeff;
  if (spec.HasTail()) {
    if (order == 2 && scatter == nullptr) {
      throw InvalidInputError("second order eigenvectors need the matrix");
    }
    const Vector r = upd.v - spec.pairs.vectors * spec.z;
    const TailCoefficients tail = TailTerms(spec, root, order);
    p += tail.r * r;
    if (order == 2) p += tail.ar * scatter->Multiply(r);
  }
  const double norm = p.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateGeometryError("eigenvector formula produced a null vector");
  }
  return p / norm;
}

double OptimalEta(const TruncatedSpectrum& spec, const SecularRoot& root,
                  Index i) {
  const Index m = spec.pairs.count();
  if (m < 2) return 0.0;
  double num = 0.0;
  double den = 0.0;
  for (Index k = 0; k < m; ++k) {
    if (k == i) continue;
    const double w = spec.z[k] * spec.z[k];
    num += w / root.GapFrom(spec.pairs.values[k]);
    den += w;
  }
  kernels::AddMacs(static_cast<std::uint64_t>(m));
  if (den <= 1e-30) return 0.0;
  return num / den;
}

Vector FastEigenvector(const TruncatedSpectrum& spec, const SecularRoot& root,
                       Index i, int order, const RankOneUpdate& upd, double eta,
                       const SymmetricMatrix* scatter) {
  CheckOrder(order);
  const double gap = root.GapFrom(spec.pairs.values[i]);
  if (std::abs(gap) <= kTinyGap) {
    throw DegenerateGeometryError("root coincides with its own pole");
  }
  const Vector u = spec.pairs.vectors * spec.z;  // v - r
  Vector p = ((1.0 / gap - eta) * spec.z[i]) * spec.pairs.vectors.col(i) +
             eta * u;
  if (spec.HasTail()) {
    if (order == 2 && scatter == nullptr) {
      throw InvalidInputError("second order eigenvectors need the matrix");
    }
    const Vector r = upd.v - u;
    const TailCoefficients tail = TailTerms(spec, root, order);
    p += tail.r * r;
    if (order == 2) p += tail.ar * scatter->Multiply(r);
  }
  const double norm = p.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateGeometryError("eigenvector formula produced a null vector");
  }
  return p / norm;
}

EigenPairs ApplyTruncatedUpdate(const TruncatedSpectrum& spec,
                                const RankOneUpdate& upd,
                                const UpdateOptions& options,
                                const ScatterProducts* products) {
  CheckOrder(options.order);
  const DeflatedProblem defl = Deflate(spec, options.tolerance);
  const TruncatedSpectrum& act = defl.active;
  const Index k = act.pairs.count();
  const Index d = spec.pairs.dim();
  const bool tail = act.HasTail();
  const int order = tail ? options.order : 1;
  if (order == 2 && products == nullptr) {
    throw InvalidInputError("second order update needs r and A r");
  }

  const std::vector<SecularRoot> roots = TruncatedRoots(act, order, upd.rho);
  const Matrix& q = act.pairs.vectors;
  Matrix p(d, k);

  if (k > 0 && !tail && options.formula == EigvecFormula::kTruncated) {
    // v lies in span(Q): this is an exact update of the active subspace.
    const Vector zhat = RecomputedWeights(act, roots, upd.rho);
    Matrix w(k, k);
    for (Index j = 0; j < k; ++j) {
      const SecularRoot& root = roots[static_cast<size_t>(j)];
      for (Index l = 0; l < k; ++l) {
        w(l, j) = zhat[l] / root.GapFrom(act.pairs.values[l]);
      }
      w.col(j) /= w.col(j).norm();
    }
    kernels::AddMacs(static_cast<std::uint64_t>(2 * k * k));
    kernels::Recombine(q, w, Matrix(d, 0), Matrix(0, k), p, options.exec);
  } else if (k > 0 && options.formula == EigvecFormula::kTruncated) {
    Matrix w(k, k);
    if (order == 1) {
      // p_j = Q (w_j - c_j z) + c_j v, i.e. Q w_j + c_j r with r implicit.
      // Q and r are orthogonal, so |p_j|^2 = |w_j|^2 + c_j^2 zres.
      Matrix extra(d, 1);
      extra.col(0) = upd.v;
      Matrix g(1, k);
      for (Index j = 0; j < k; ++j) {
        const SecularRoot& root = roots[static_cast<size_t>(j)];
        const double c = TailTerms(act, root, 1).r;
        for (Index l = 0; l < k; ++l) {
          w(l, j) = act.z[l] / root.GapFrom(act.pairs.values[l]);
        }
        const double inv =
            1.0 / std::sqrt(w.col(j).squaredNorm() + c * c * act.zres);
        w.col(j) = (w.col(j) - c * act.z) * inv;
        g(0, j) = c * inv;
      }
      kernels::AddMacs(static_cast<std::uint64_t>(3 * k * k));
      kernels::Recombine(q, w, extra, g, p, options.exec);
    } else {
      Matrix extra(d, 2);
      extra.col(0) = products->r;
      extra.col(1) = products->ar;
      Matrix g(2, k);
      for (Index j = 0; j < k; ++j) {
        const SecularRoot& root = roots[static_cast<size_t>(j)];
        for (Index l = 0; l < k; ++l) {
          w(l, j) = act.z[l] / root.GapFrom(act.pairs.values[l]);
        }
        const TailCoefficients tc = TailTerms(act, root, 2);
        g(0, j) = tc.r;
        g(1, j) = tc.ar;
      }
      kernels::AddMacs(static_cast<std::uint64_t>(k * k));
      kernels::Recombine(q, w, extra, g, p, options.exec);
      kernels::NormalizeColumns(p, options.exec);
    }
  } else if (k > 0) {
    // Fast formulas: p_j = a_j q_j + eta_j u + tail terms, u = Q z = v - r.
    Vector u;
    kernels::Combine(q, act.z, u, options.exec);
    std::vector<Index> cols(static_cast<size_t>(k));
    std::iota(cols.begin(), cols.end(), Index{0});
    Vector a(k);
    Matrix extra;
    Matrix g;
    if (!tail) {
      extra.resize(d, 1);
      extra.col(0) = u;
      g.resize(1, k);
    } else if (order == 1) {
      // eta u + c r = (eta - c) u + c v
      extra.resize(d, 2);
      extra.col(0) = u;
      extra.col(1) = upd.v;
      g.resize(2, k);
    } else {
      extra.resize(d, 3);
      extra.col(0) = u;
      extra.col(1) = products->r;
      extra.col(2) = products->ar;
      g.resize(3, k);
    }
    for (Index j = 0; j < k; ++j) {
      const SecularRoot& root = roots[static_cast<size_t>(j)];
      const double gap = root.GapFrom(act.pairs.values[j]);
      if (std::abs(gap) <= kTinyGap) {
        throw DegenerateGeometryError("root coincides with its own pole");
      }
      const double eta = OptimalEta(act, root, j);
      a[j] = (1.0 / gap - eta) * act.z[j];
      if (!tail) {
        g(0, j) = eta;
      } else if (order == 1) {
        const double c = TailTerms(act, root, 1).r;
        g(0, j) = eta - c;
        g(1, j) = c;
      } else {
        const TailCoefficients tc = TailTerms(act, root, 2);
        g(0, j) = eta;
        g(1, j) = tc.r;
        g(2, j) = tc.ar;
      }
    }
    kernels::RecombineDiagonal(q, cols, a, extra, g, p, options.exec);
    kernels::NormalizeColumns(p, options.exec);
  }

  const Index m = spec.pairs.count();
  EigenPairs out{Vector(m), Matrix(d, m)};
  for (Index j = 0; j < k; ++j) {
    out.values[j] = roots[static_cast<size_t>(j)].t;
    out.vectors.col(j) = p.col(j);
  }
  Index next = k;
  for (const Passthrough& pt : defl.passthrough) {
    out.values[next] = pt.value;
    out.vectors.col(next) = pt.vector;
    ++next;
  }
  SortDescending(out);
  return out;
}

EigenPairs ExactUpdate(const EigenPairs& full, const RankOneUpdate& upd) {
  if (full.count() != full.dim()) {
    throw InvalidInputError("exact update needs the full spectrum");
  }
  upd.Validate();
  TruncatedSpectrum spec = TruncatedSpectrum::Build(full, upd.v, 0.0);
  spec.zres = 0.0;
  UpdateOptions options;
  options.exec = ExecPolicy::kSerial;
  return ApplyTruncatedUpdate(spec, upd, options);
}

SecularRoot SolveSecularInBracket(const std::function<SecularEval(double)>& f,
                                  double lo, double hi) {
  if (!(lo < hi)) throw InvalidInputError("empty bracket");
  const double nudge = 1e-12 * (hi - lo);
  OffsetBracket b;
  b.anchor = 0.0;
  b.lo = lo;
  b.hi = hi;
  b.pole_order = 0;
  b.sign_lo = Sign(f(lo + nudge).value);
  b.sign_hi = Sign(f(hi - nudge).value);
  if (b.sign_lo == 0 || b.sign_hi == 0 || b.sign_lo == b.sign_hi) {
    throw InvalidInputError("function does not change sign on the bracket");
  }
  SecularRoot root = SolveInBracket(f, b);
  root.lo = lo;
  root.hi = hi;
  return root;
}

}  // namespace roipca
