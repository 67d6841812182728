#include "hcs/spline.hpp"

#include <cmath>

namespace hcs {

using cd = std::complex<double>;

// Thomas solve of the cyclic system (1/6)[1 4 1] via Sherman-Morrison.
static std::vector<cd> cyclic_141(const std::vector<cd>& r) {
  const std::size_t n = r.size();
  const double a = 1.0 / 6.0, b = 4.0 / 6.0;
  const double gamma = -b;
  // modified diagonal
  std::vector<double> diag(n, b);
  diag[0] = b - gamma;
  diag[n - 1] = b - a * a / gamma;

  auto thomas = [&](const std::vector<cd>& rhs) {
    std::vector<cd> x(n);
    std::vector<double> cp(n);
    cp[0] = a / diag[0];
    x[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double mlt = 1.0 / (diag[i] - a * cp[i - 1]);
      cp[i] = a * mlt;
      x[i] = (rhs[i] - a * x[i - 1]) * mlt;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
    return x;
  };

  std::vector<cd> x = thomas(r);
  std::vector<cd> u(n, cd(0));
  u[0] = gamma;
  u[n - 1] = a;
  std::vector<cd> z = thomas(u);
  const cd fact = (x[0] + a * x[n - 1] / gamma) /
                  (1.0 + z[0] + a * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

std::vector<cd> PeriodicCubicSpline::solve_coeffs(const std::vector<cd>& s) {
  return cyclic_141(s);
}

static inline void bspline_weights(double s, double w[4]) {
  const double s2 = s * s, s3 = s2 * s;
  w[0] = (1.0 - 3.0 * s + 3.0 * s2 - s3) / 6.0;  // (1-s)^3/6
  w[1] = (3.0 * s3 - 6.0 * s2 + 4.0) / 6.0;
  w[2] = (-3.0 * s3 + 3.0 * s2 + 3.0 * s + 1.0) / 6.0;
  w[3] = s3 / 6.0;
}

cd PeriodicCubicSpline::eval(const std::vector<cd>& c, double x) {
  const std::size_t m = c.size();
  const double h = 2.0 * M_PI / (double)m;
  double u = x / h;
  u -= std::floor(u / (double)m) * (double)m;
  if (u >= (double)m) u -= (double)m;  // fp wrap can land exactly on m
  std::size_t i0 = (std::size_t)u;
  if (i0 >= m) i0 = m - 1;
  const double s = u - (double)i0;
  double w[4];
  bspline_weights(s, w);
  cd out(0);
  for (int k = 0; k < 4; ++k) {
    const std::size_t j = (std::size_t)(((long)i0 + k - 1 + (long)m) % (long)m);
    out += w[k] * c[j];
  }
  return out;
}

std::vector<cd> PeriodicCubicSpline::apply_transpose(
    const std::vector<cd>& v, const std::vector<double>& x, std::size_t m) {
  const double h = 2.0 * M_PI / (double)m;
  std::vector<cd> phi_t(m, cd(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    double u = x[i] / h;
    u -= std::floor(u / (double)m) * (double)m;
    if (u >= (double)m) u -= (double)m;
    std::size_t i0 = (std::size_t)u;
    if (i0 >= m) i0 = m - 1;
    const double s = u - (double)i0;
    double w[4];
    bspline_weights(s, w);
    for (int k = 0; k < 4; ++k) {
      const std::size_t j = (std::size_t)(((long)i0 + k - 1 + (long)m) % (long)m);
      phi_t[j] += w[k] * v[i];
    }
  }
  return cyclic_141(phi_t);
}

}  // namespace hcs
