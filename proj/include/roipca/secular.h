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

#ifndef ROIPCA_SECULAR_H_
#define ROIPCA_SECULAR_H_

// Root isolation for secular functions on a single pole interval.
//
// Roots are represented as anchor + offset, where the anchor is the pole the
// root was solved relative to. Differences pole - t are then formed as
// (pole - anchor) - offset, which keeps full relative accuracy for roots that
// sit very close to a pole.

#include <cmath>
#include <functional>
#include <limits>

#include "roipca/error.h"

namespace roipca {

struct SecularEval {
  double value = 0.0;
  double derivative = 0.0;
  // Magnitude of the summed terms; |value| below a few ulps of this is noise.
  double scale = 1.0;
};

struct SecularRoot {
  double t = 0.0;
  double anchor = 0.0;
  double offset = 0.0;
  double lo = 0.0;  // pole interval containing t
  double hi = 0.0;
  int iterations = 0;
  // Set when an order-2 interval had no sign change and the order-1 root was
  // used instead.
  bool fallback = false;

  // pole - t without cancellation.
  double GapFrom(double pole) const { return (pole - anchor) - offset; }
};

inline constexpr int kMaxSecularIterations = 200;

// A bracket in offset coordinates relative to `anchor`. pole_order is the
// order of the pole at the anchor (0 if the anchor is not a pole), sign_lo and
// sign_hi the signs of f just inside each end.
struct OffsetBracket {
  double anchor = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int pole_order = 0;
  int sign_lo = -1;
  int sign_hi = 1;
};

// Bisection-Newton hybrid. eval(offset) evaluates f at anchor + offset. The
// Newton step is taken on f(offset) * offset^pole_order, which removes the
// anchor pole; a step leaving the bracket, or a run of Newton steps that fails
// to halve it, falls back to bisection.
template <class Eval>
SecularRoot SolveInBracket(Eval&& eval, const OffsetBracket& b) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double lo = b.lo;
  double hi = b.hi;
  double tau = 0.5 * (lo + hi);
  double streak_width = hi - lo;
  int newton_streak = 0;
  SecularRoot root;
  root.anchor = b.anchor;
  for (int it = 1; it <= kMaxSecularIterations; ++it) {
    const SecularEval e = eval(tau);
    root.iterations = it;
    if (e.value == 0.0 ||
        (std::isfinite(e.value) && std::abs(e.value) <= 4.0 * kEps * e.scale)) {
      root.offset = tau;
      root.t = b.anchor + tau;
      return root;
    }
    const int sign = e.value > 0.0 ? 1 : -1;
    if (sign == b.sign_lo) {
      lo = tau;
    } else {
      hi = tau;
    }
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) {
      root.offset = 0.5 * (lo + hi);
      root.t = b.anchor + root.offset;
      return root;
    }
    double next = std::numeric_limits<double>::quiet_NaN();
    const bool stalled = newton_streak >= 4 && (hi - lo) > 0.5 * streak_width;
    if (!stalled && std::isfinite(e.value) && std::isfinite(e.derivative)) {
      if (b.pole_order == 0) {
        if (e.derivative != 0.0) next = tau - e.value / e.derivative;
      } else {
        const double denom = b.pole_order * e.value + tau * e.derivative;
        if (denom != 0.0) next = tau - tau * e.value / denom;
      }
    }
    if (std::isfinite(next) && next > lo && next < hi) {
      if (newton_streak++ == 0) streak_width = hi - lo;
      tau = next;
    } else {
      newton_streak = 0;
      tau = 0.5 * (lo + hi);
    }
  }
  throw ConvergenceError("secular root did not converge", b.anchor + lo,
                         b.anchor + hi);
}

// Root of f on (lo, hi) where f changes sign or is monotone toward a pole at
// one end. f is evaluated in absolute coordinates.
SecularRoot SolveSecularInBracket(const std::function<SecularEval(double)>& f,
                                  double lo, double hi);

}  // namespace roipca

#endif  // ROIPCA_SECULAR_H_
