#pragma once

// Independent reference values for the tests. Nothing here calls into the
// library: every formula is re-derived from scratch so a shared bug cannot
// make both sides agree.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// Central difference f′(z) along the real axis.
inline C fd_derivative(const std::function<C(C)>& f, C z, double h = 1e-6) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

/// Hyperbolic distance on the disc straight from the two-point formula.
inline double disc_distance(C a, C b) {
  const double num = std::abs(a - b), den = std::abs(1.0 - std::conj(a) * b);
  return 0.5 * std::log((den + num) / (den - num));
}

/// Length of the radial segment [0, 1 − ε] in the metric |dz|/(1 − |z|²).
inline double radial_length(double eps) { return 0.5 * std::log((2.0 - eps) / eps); }

/// Hyperbolic distance on the upper half-plane.
inline double half_plane_distance(C a, C b) {
  return std::atanh(std::abs(a - b) / std::abs(a - std::conj(b)));
}

/// Universal cover of {r < |z| < 1}: disc → half-plane → strip → annulus.
inline C annulus_cover(double r, C zeta) {
  const double h = -std::log(r);
  const C u = C(0, 1) * (1.0 + zeta) / (1.0 - zeta);
  return std::exp(C(0, 1) * (h / kPi) * std::log(u));
}

/// Solves annulus_cover(ζ) = z: undo each stage on the principal branch, then
/// polish with Newton steps using a finite-difference derivative.
inline C annulus_cover_preimage(double r, C z) {
  const double h = -std::log(r);
  const C u = std::exp(C(0, -kPi / h) * std::log(z));
  C zeta = (u - C(0, 1)) / (u + C(0, 1));
  for (int it = 0; it < 3; ++it) {
    const C f = annulus_cover(r, zeta) - z;
    const C d = fd_derivative([r](C s) { return annulus_cover(r, s); }, zeta, 1e-7);
    zeta -= f / d;
  }
  return zeta;
}

/// Kobayashi density of the annulus at z, unit vector, from the covering map.
inline double annulus_density_via_cover(double r, C z) {
  const C zeta = annulus_cover_preimage(r, z);
  const C d = fd_derivative([r](C s) { return annulus_cover(r, s); }, zeta, 1e-6);
  return 1.0 / (std::abs(d) * (1.0 - std::norm(zeta)));
}

/// Annulus Kobayashi distance: lift both points to the half-plane and minimise
/// over deck translations.
inline double annulus_distance(double r, C z, C w, int decks = 4) {
  const double h = -std::log(r);
  auto lift = [h](C p, int k) { return std::exp(C(0, -kPi / h) * (std::log(p) + C(0, 2 * kPi * k))); };
  double best = std::numeric_limits<double>::infinity();
  for (int k = -decks; k <= decks; ++k) best = std::min(best, half_plane_distance(lift(z, 0), lift(w, k)));
  return best;
}

/// max |p(e^{iθ})| by brute force over n angles (coefficients lowest degree first).
inline double circle_max(const std::vector<C>& coeffs, int n) {
  double best = 0.0;
  for (int k = 0; k < n; ++k) {
    const C z = std::polar(1.0, 2 * kPi * k / n);
    C v = 0.0, zp = 1.0;
    for (C c : coeffs) v += c * zp, zp *= z;
    best = std::max(best, std::abs(v));
  }
  return best;
}

/// All roots of a polynomial (lowest degree first) by Durand–Kerner.
inline std::vector<C> roots(std::vector<C> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  const std::size_t n = coeffs.size() - 1;
  const C lead = coeffs.back();
  for (C& c : coeffs) c /= lead;
  std::vector<C> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::pow(C(0.4, 0.9), static_cast<double>(k));
  auto p = [&](C x) {
    C v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
    return v;
  };
  for (int it = 0; it < 500; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      C den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) den *= z[k] - z[j];
      z[k] -= p(z[k]) / den;
    }
  }
  return z;
}

/// Smallest radius of curvature of the ellipse (a cos t, b sin t), a ≥ b, by scanning t.
inline double ellipse_min_curvature_radius(double a, double b, int n = 100000) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double t = 2 * kPi * k / n;
    const double s = std::sin(t), c = std::cos(t);
    const double speed2 = a * a * s * s + b * b * c * c;
    best = std::min(best, std::pow(speed2, 1.5) / (a * b));
  }
  return best;
}

/// Euclidean distance from z to the ellipse x²/a² + y²/b² = 1 by dense scan plus ternary polish.
inline double ellipse_boundary_distance(double a, double b, C z, int n = 4096) {
  auto d = [&](double t) { return std::abs(C(a * std::cos(t), b * std::sin(t)) - z); };
  int best_k = 0;
  for (int k = 1; k < n; ++k)
    if (d(2 * kPi * k / n) < d(2 * kPi * best_k / n)) best_k = k;
  double lo = 2 * kPi * (best_k - 1) / n, hi = 2 * kPi * (best_k + 1) / n;
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (d(m1) < d(m2))
      hi = m2;
    else
      lo = m1;
  }
  return d(0.5 * (lo + hi));
}

/// Fixed point of (z² + 0.3)/2 in the disc: root of z² − 2z + 0.3.
inline double quadratic_fixed_point() { return 1.0 - std::sqrt(0.7); }

/// A disc ball of hyperbolic radius R about c is a Euclidean disc; its Euclidean radius.
inline double disc_ball_euclidean_radius(double c_abs, double R) {
  const double t = std::tanh(R);
  return t * (1.0 - c_abs * c_abs) / (1.0 - t * t * c_abs * c_abs);
}

}  // namespace oracle
