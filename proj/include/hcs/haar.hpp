#pragma once

#include <functional>
#include <vector>

#include "hcs/lie.hpp"
#include "hcs/parallel.hpp"
#include "hcs/xi_radial.hpp"

namespace hcs {

// Quadrature for the normalized Haar measure of K = SO(n).  n = 2 is a
// uniform circle grid; n = 3 is a z-y-z Euler product grid with the
// (1/8pi^2) sin(beta) density folded into the weights.
struct KQuadrature {
  int n = 0;
  int resolution = 0;
  std::vector<Eigen::MatrixXd> nodes;
  std::vector<double> weights;  // sum to 1
  // n = 2 only: nodes[j] is the rotation by angle[j] = 2 pi j / resolution
  std::vector<double> angles;

  std::size_t size() const { return nodes.size(); }
};

KQuadrature build_k_quadrature(int n, int resolution);

// Quadrature for the Lebesgue measure dH on the closed chamber, organized
// in shells of constant |H|.  The shell sequence follows a fixed global
// rule (linear + geometric spacing), so a larger cutoff extends a smaller
// one by new shells only; truncated integrals of nonnegative integrands
// are then monotone in the cutoff by construction.
struct ChamberQuadrature {
  int n = 0;
  double cutoff = 0.0;          // max |H|
  int nodes_per_shell = 1;      // angular nodes per shell (n = 3)
  std::vector<ChamberVector> nodes;
  std::vector<double> weights;  // Lebesgue weights, > 0
  std::vector<int> shell_of;    // shell index per node
  std::vector<double> shell_radius;  // outer |H| per shell

  std::size_t size() const { return nodes.size(); }
};

// shells: s_{k+1} = s_k + max(step, ratio * s_k) up to the cutoff,
// Gauss-Legendre inside each shell (radially and angularly).
ChamberQuadrature build_chamber_quadrature(int n, double cutoff,
                                           int radial_per_shell = 4,
                                           int nodes_per_shell = 16,
                                           double step = 0.25,
                                           double ratio = 0.05);

// J(H) = prod over positive roots of sinh(alpha(H)); the Cartan density of
// the Haar measure.  Overflow guard at alpha(H) > 700.
double cartan_density(const ChamberVector& h, const RootSystemData& roots);

struct ChamberIntegral {
  double value = 0.0;
  double last_shell = 0.0;  // contribution of the outermost shell
};

// sum of w * f(node) * J(node); f is a scalar function on chamber points.
ChamberIntegral integrate_bi_k_invariant(
    const std::function<double(const ChamberVector&)>& f,
    const ChamberQuadrature& quad, const RootSystemData& roots,
    const ExecConfig& exec = {});

struct CdResult {
  double value = 0.0;       // truncated integral
  double tail_bound = 0.0;  // analytic bound on the remainder past cutoff
  double last_shell = 0.0;
  double c_fit = 0.0;       // empirical sup of Xi e^{rho(H)} (1+L)^{-r}
};

// C_d = int_{a+} Xi^2(e^H) (1+L(e^H))^{-2d} J(H) dH, truncated at the
// quadrature cutoff.  Requires 2d > dim(a) + 2r, else DivergentExponent.
//
// Tail bound: with Xi(e^H) <= C e^{-rho(H)} (1+L)^r and
// J(H) <= e^{2 rho(H)} / 2^r the integrand past s = |H| = cutoff is at most
// C^2 2^{-r} (1+s)^{2r-2d}, so with kappa = 2d - 2r - dim(a) > 0:
//   tail <= C^2 2^{-r} Omega (1+cutoff)^{-kappa} / kappa,
// Omega the angular measure of the unit chamber slice (1 for n=2, the
// chamber arc length for n=3); C is fitted as the sup over the grid.
CdResult cd_constant(double d, const ChamberQuadrature& quad,
                     const RadialXi& xi, const RootSystemData& roots,
                     const ExecConfig& exec = {});

// minimal admissible exponent: d must exceed (dim(a) + 2r) / 2
double min_admissible_d(const RootSystemData& roots);

}  // namespace hcs
