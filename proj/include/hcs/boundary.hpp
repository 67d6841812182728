#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "hcs/haar.hpp"
#include "hcs/lie.hpp"
#include "hcs/parallel.hpp"

namespace hcs {

class GroupFunction;  // discrete side, see group_function.hpp

using cd = std::complex<double>;

// Function on the Furstenberg boundary G/P = K/M, sampled on a K
// quadrature grid.  For n = 2 the grid is the circle (samples must be
// pi-periodic to be M-invariant); moved-point values are interpolated with
// a periodic cubic B-spline.  For n = 3 there is no certified interpolation
// on the Euler grid, so functions that get composed with the boundary
// action must also carry their closed form in the frame coordinates.
class BoundaryFunction {
public:
  using FrameForm = std::function<cd(const Eigen::MatrixXd& frame)>;

  BoundaryFunction(std::shared_ptr<const KQuadrature> grid,
                   std::vector<cd> samples);
  BoundaryFunction(std::shared_ptr<const KQuadrature> grid, FrameForm form);

  static BoundaryFunction ones(std::shared_ptr<const KQuadrature> grid);

  const KQuadrature& grid() const { return *grid_; }
  std::shared_ptr<const KQuadrature> grid_ptr() const { return grid_; }
  const std::vector<cd>& samples() const { return samples_; }
  const FrameForm& frame_form() const { return form_; }
  bool has_frame_form() const { return (bool)form_; }
  bool is_nonnegative() const;

  double norm2() const;  // weighted l2 norm
  double norm1() const;  // weighted l1 norm
  cd mean() const;       // <xi, 1>

private:
  std::shared_ptr<const KQuadrature> grid_;
  std::vector<cd> samples_;
  FrameForm form_;
};

// Radon-Nikodym cocycle c(g, b) = e^{-2 rho(H_Iw(g^{-1} k_b))}, evaluated at
// grid node index b.
double cocycle(const GroupElement& g, const KQuadrature& grid, std::size_t b);

// All nodes at once (the kernels below use this form).
std::vector<double> cocycle_all(const GroupElement& g, const KQuadrature& grid,
                                const ExecConfig& exec = {});

// Boundary action g^{-1} . b for n = 2: the moved angle of each node.
std::vector<double> moved_angles(const GroupElement& g, const KQuadrature& grid,
                                 const ExecConfig& exec = {});

// (pi(g) xi)(b) = c(g,b)^{1/2} xi(g^{-1} b).  Nonnegative samples map to
// nonnegative samples exactly (interpolation overshoot is clamped at zero,
// which cannot increase the error when the target function is >= 0).
BoundaryFunction apply_pi(const GroupElement& g, const BoundaryFunction& xi,
                          const ExecConfig& exec = {});

// weighted inner product <xi, eta> = sum_b w_b xi(b) conj(eta(b))
cd pairing(const BoundaryFunction& xi, const BoundaryFunction& eta,
           const ExecConfig& exec = {});

enum class XiMethod { Boundary, Iwasawa };

// Harish-Chandra function by either backend; both share the grid, so their
// agreement checks the pi_nu machinery against the direct Iwasawa sum.
double harish_chandra_xi(const GroupElement& g, XiMethod method,
                         const KQuadrature& grid, const ExecConfig& exec = {});

struct PiNormEstimate {
  double value = 0.0;         // certified lower Rayleigh bound of ||pi(f)||
  double value_coarse = 0.0;  // same estimate on the half-resolution grid
  int iterations = 0;
  double residual = 0.0;
  bool stalled = false;
  std::vector<cd> left, right;  // extremal singular pair (fine grid samples)
};

// Spectral norm of pi_nu(f) = sum f(gamma) pi_nu(gamma) on the sampled
// space, via power iteration on T*T (matrix-free).  n = 2 grids only.
PiNormEstimate pi_operator_norm(const GroupFunction& f, const KQuadrature& grid,
                                double tol = 1e-8, int max_iter = 4000,
                                const ExecConfig& exec = {});

}  // namespace hcs
