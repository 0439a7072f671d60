#pragma once

#include <cmath>

namespace ksw {

/// 15-point Gauss-Legendre rule on [a, b].
template <typename F>
double gl15(const F& f, double a, double b) {
  static const double nodes[8] = {
      0.0,
      0.2011940939974345,
      0.3941513470775634,
      0.5709721726085388,
      0.7244177313601701,
      0.8482065834104272,
      0.9372733924007060,
      0.9879925180204854,
  };
  static const double weights[8] = {
      0.2025782419255613, 0.1984314853271116, 0.1861610000155622,
      0.1662692058169939, 0.1395706779261543, 0.1071592204671719,
      0.0703660474881081, 0.0307532419961173,
  };
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = weights[0] * f(mid);
  for (int i = 1; i < 8; ++i)
    s += weights[i] * (f(mid - half * nodes[i]) + f(mid + half * nodes[i]));
  return s * half;
}

namespace detail {

template <typename F>
double adaptive_quad_rec(const F& f, double a, double b, double whole, double tol,
                         int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl15(f, a, mid), right = gl15(f, mid, b);
  const double diff = left + right - whole;
  if (depth <= 0 || std::fabs(diff) <= tol) return left + right;
  return adaptive_quad_rec(f, a, mid, left, tol / 2, depth - 1) +
         adaptive_quad_rec(f, mid, b, right, tol / 2, depth - 1);
}

}  // namespace detail

/// Adaptive bisection on top of the 15-point rule, absolute tolerance.
template <typename F>
double adaptive_quad(const F& f, double a, double b, double abs_tol, int max_depth = 48) {
  if (!(b > a)) return 0.0;
  return detail::adaptive_quad_rec(f, a, b, gl15(f, a, b), abs_tol, max_depth);
}

}  // namespace ksw
