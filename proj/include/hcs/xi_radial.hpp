#pragma once

#include <memory>

#include "hcs/lie.hpp"

namespace hcs {

// Radial (bi-K-invariant) evaluators of the Harish-Chandra function on the
// chamber.  These are the workhorses behind the chamber integrals and the
// Gamma-side norms: the K-grid backends in boundary.hpp lose accuracy once
// the boundary integrand develops peaks narrower than the grid spacing
// (width ~ e^{-alpha(H)}), while the reductions below stay at machine
// precision for any H that doubles can represent.
class RadialXi {
public:
  virtual ~RadialXi() = default;
  virtual int dim() const = 0;
  virtual double operator()(const ChamberVector& h) const = 0;
  double at_group(const GroupElement& g) const {
    return (*this)(cartan_projection(g));
  }
};

// n = 2: the angular integral collapses to a complete elliptic integral,
// Xi(e^H) = 1/AGM(e^{h_1}, e^{h_2}).
class Sl2RadialXi : public RadialXi {
public:
  int dim() const override { return 2; }
  double operator()(const ChamberVector& h) const override;
};

// n = 3: the SO(3) integral reduces to an S^2 integral whose inner circle
// average is again an AGM; the outer two angles are integrated adaptively
// with endpoint-ladder seeding so the e^{-alpha(H)} boundary layers are
// resolved at any H.
class Sl3RadialXi : public RadialXi {
public:
  explicit Sl3RadialXi(double rel_tol = 1e-10) : rel_tol_(rel_tol) {}
  int dim() const override { return 3; }
  double operator()(const ChamberVector& h) const override;

private:
  double rel_tol_;
};

std::shared_ptr<const RadialXi> make_radial_xi(int n);

// Xi(a_t) for a_t = diag(e^{t/2}, e^{-t/2}); equals P_{-1/2}(cosh t).
double xi_sl2_t(double t);

// arithmetic-geometric mean of positive a, b
double agm(double a, double b);

}  // namespace hcs
