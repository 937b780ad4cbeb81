#pragma once

// Adaptive Simpson quadrature with interval bisection.

#include <algorithm>
#include <cmath>
#include <limits>

#include "invmetric/errors.hpp"

namespace invmetric {

struct QuadratureOptions {
  double abs_tol = 1e-9;
  /// Accepts a panel once its error estimate is below this fraction of its
  /// value. Integrands evaluated near a boundary singularity carry relative
  /// noise of order ulp/δ that bisection cannot remove.
  double rel_tol = 1e-10;
  int max_depth = 40;
};

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double fa, double b, double fb, double m, double fm, double whole,
                    double tol, int depth, const QuadratureOptions& opt) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // Below a few ulps (or the noise floor) of the local estimate the test can never pass.
  const double floor =
      std::max(64.0 * std::numeric_limits<double>::epsilon(), opt.rel_tol) * std::abs(left + right);
  if (std::abs(delta) <= 15.0 * std::max(tol, floor)) return left + right + delta / 15.0;
  if (depth >= opt.max_depth) throw ConvergenceError("adaptive Simpson exceeded its maximum depth");
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, opt) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, opt);
}

}  // namespace detail

/// ∫_a^b f, deterministic, absolute tolerance opt.abs_tol.
template <class F>
double adaptive_simpson(const F& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = detail::simpson_step(f, a, fa, b, fb, m, fm, whole, opt.abs_tol, 0, opt);
  if (!std::isfinite(value)) throw ConvergenceError("quadrature produced a non-finite value");
  return value;
}

}  // namespace invmetric
