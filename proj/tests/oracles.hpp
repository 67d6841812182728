#pragma once

// Independent oracles used by the tests.  These deliberately avoid the
// library code paths they are checking.

#include <cmath>
#include <functional>
#include <vector>

// Xi(a_t) for SL(2,R) by plain trapezoid quadrature of
// (1/2pi) int_0^{2pi} (e^t cos^2 + e^{-t} sin^2)^{-1/2} dtheta
inline double oracle_xi_trapezoid(double t, long nodes = 1'000'000) {
  double acc = 0;
  const double et = std::exp(t), emt = std::exp(-t);
  for (long j = 0; j < nodes; ++j) {
    const double th = 2.0 * M_PI * (double)j / (double)nodes;
    const double c = std::cos(th), s = std::sin(th);
    acc += 1.0 / std::sqrt(et * c * c + emt * s * s);
  }
  return acc / (double)nodes;
}

// adaptive Simpson with absolute tolerance
inline double oracle_adaptive_simpson(const std::function<double(double)>& f,
                                      double a, double b, double tol,
                                      int depth = 0) {
  const double m = 0.5 * (a + b);
  auto simp = [&](double lo, double hi) {
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
  };
  const double whole = simp(a, b), left = simp(a, m), right = simp(m, b);
  const double err = left + right - whole;
  if (depth > 48 || std::abs(err) <= 15.0 * tol)
    return left + right + err / 15.0;
  return oracle_adaptive_simpson(f, a, m, tol / 2, depth + 1) +
         oracle_adaptive_simpson(f, m, b, tol / 2, depth + 1);
}

// top eigenvalue of the distance-radial reduction of the 4-regular-tree ball
// adjacency (free group of rank 2 with the symmetric generator set); the
// attainability cap of any radius-R truncation estimate of the Kesten norm
inline double oracle_tree_ball_top_eigenvalue(int R) {
  // symmetric tridiagonal, offdiag (2, sqrt3, sqrt3, ...), size R+1
  const int n = R + 1;
  std::vector<double> d(n, 0.0), e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i + 1] = (i == 0) ? 2.0 : std::sqrt(3.0);
  // bisection on the Sturm sequence count
  auto count_below = [&](double x) {
    int cnt = 0;
    double q = d[0] - x;
    if (q < 0) ++cnt;
    for (int i = 1; i < n; ++i) {
      q = d[i] - x - e[i] * e[i] / (q == 0.0 ? 1e-300 : q);
      if (q < 0) ++cnt;
    }
    return cnt;
  };
  double lo = 0.0, hi = 4.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= n) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

inline long long oracle_free_ball_count(int R) {
  // 2 * 3^R - 1
  long long p = 1;
  for (int i = 0; i < R; ++i) p *= 3;
  return 2 * p - 1;
}
