#pragma once

#include <complex>
#include <vector>

namespace hcs {

// Interpolating periodic cubic B-spline on the uniform grid
// theta_j = 2 pi j / m.  value(x) = sum_j c_j B3(x/h - j) with coefficients
// from the cyclic tridiagonal system (1/6)[1 4 1] c = samples.  The basis
// is local (4 taps), so both evaluation and its transpose are O(1) per
// point; the transpose shares the symmetric cyclic solve.
class PeriodicCubicSpline {
public:
  using cd = std::complex<double>;

  explicit PeriodicCubicSpline(std::size_t m) : m_(m) {}

  // solve (1/6)[1 4 1]_cyclic c = s
  static std::vector<cd> solve_coeffs(const std::vector<cd>& samples);

  // evaluate the spline with coefficients c at angle x (any real)
  static cd eval(const std::vector<cd>& c, double x);

  // transpose of the full interpolation map S = Phi M^{-1}:
  // out = M^{-1} (Phi^T v) where (Phi^T v)_j = sum_i v_i B3(x_i/h - j)
  static std::vector<cd> apply_transpose(const std::vector<cd>& v,
                                         const std::vector<double>& x,
                                         std::size_t m);

private:
  std::size_t m_;
};

}  // namespace hcs
