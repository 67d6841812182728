#include "hcs/xi_radial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace hcs {

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
  }
  return 0.5 * (a + b);
}

double xi_sl2_t(double t) {
  t = std::abs(t);
  if (t > 1400.0) raise(ErrorCode::Overflow, "xi_sl2_t: t too large for doubles");
  return std::exp(-0.5 * t) / agm(1.0, std::exp(-t));
}

double Sl2RadialXi::operator()(const ChamberVector& h) const {
  if (h.dim() != 2) raise(ErrorCode::DimensionMismatch, "Sl2RadialXi needs n=2");
  return xi_sl2_t(h[0] - h[1]);
}

namespace {

// Adaptive Simpson on [a,b] with pre-seeded dyadic breakpoints towards both
// endpoints (scale `ladder`), for integrands with endpoint boundary layers.
class AdaptiveSimpson {
public:
  AdaptiveSimpson(std::function<double(double)> f, double rel_tol)
      : f_(std::move(f)), rel_tol_(rel_tol) {}

  double integrate(double a, double b, double ladder_scale) {
    // breakpoints: a + (b-a)*2^-j and b - (b-a)*2^-j down to ladder_scale
    std::vector<double> pts{a, b};
    const double len = b - a;
    for (double w = 0.5; w * len > ladder_scale * 0.25 && w > 1e-300; w *= 0.5) {
      pts.push_back(a + w * len);
      pts.push_back(b - w * len);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // first pass for the magnitude estimate
    double rough = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      rough += simpson(pts[i], pts[i + 1]);
    scale_ = std::abs(rough);
    double total = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double lo = pts[i], hi = pts[i + 1];
      total += refine(lo, hi, simpson(lo, hi), 0);
    }
    return total;
  }

private:
  double simpson(double lo, double hi) const {
    const double m = 0.5 * (lo + hi);
    return (hi - lo) / 6.0 * (f_(lo) + 4.0 * f_(m) + f_(hi));
  }
  double refine(double lo, double hi, double whole, int depth) const {
    const double m = 0.5 * (lo + hi);
    const double left = simpson(lo, m), right = simpson(m, hi);
    const double err = left + right - whole;
    if (depth > 52 || std::abs(err) <= 15.0 * rel_tol_ * std::max(scale_, 1e-300))
      return left + right + err / 15.0;
    return refine(lo, m, left, depth + 1) + refine(m, hi, right, depth + 1);
  }

  std::function<double(double)> f_;
  double rel_tol_;
  double scale_ = 1.0;
};

}  // namespace

double Sl3RadialXi::operator()(const ChamberVector& h) const {
  if (h.dim() != 3) raise(ErrorCode::DimensionMismatch, "Sl3RadialXi needs n=3");
  const double h1 = h[0], h2 = h[1], h3 = h[2];
  if (h1 - h3 > 340.0) raise(ErrorCode::Overflow, "Sl3RadialXi: alpha(H) too large");
  // Xi(e^H) = int_{S^2} du/(4pi) * 1/(|D u| * AGM(sqrt l1, sqrt l2)),
  // D = diag(e^{-h_i}); l1,l2 the eigenvalues of diag(e^{2 h_i}) on u^perp.
  const double d2[3] = {std::exp(-2 * h1), std::exp(-2 * h2), std::exp(-2 * h3)};
  const double e2[3] = {std::exp(2 * h1), std::exp(2 * h2), std::exp(2 * h3)};

  auto point = [&](double ct, double st, double cp, double sp) {
    const double u[3] = {ct, st * cp, st * sp};
    const double nDu2 = d2[0] * u[0] * u[0] + d2[1] * u[1] * u[1] + d2[2] * u[2] * u[2];
    // orthonormal frame (p,q) of u^perp
    double p[3];
    if (std::abs(u[0]) < 0.9) {
      p[0] = 0.0; p[1] = -u[2]; p[2] = u[1];
    } else {
      p[0] = -u[1]; p[1] = u[0]; p[2] = 0.0;
    }
    const double np = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    for (double& x : p) x /= np;
    const double q[3] = {u[1] * p[2] - u[2] * p[1], u[2] * p[0] - u[0] * p[2],
                         u[0] * p[1] - u[1] * p[0]};
    const double a = e2[0] * p[0] * p[0] + e2[1] * p[1] * p[1] + e2[2] * p[2] * p[2];
    const double c = e2[0] * q[0] * q[0] + e2[1] * q[1] * q[1] + e2[2] * q[2] * q[2];
    const double b = e2[0] * p[0] * q[0] + e2[1] * p[1] * q[1] + e2[2] * p[2] * q[2];
    const double tr = 0.5 * (a + c);
    const double dd = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
    const double l1 = tr + dd, l2 = std::max(tr - dd, 0.0);
    return 1.0 / (std::sqrt(nDu2) * agm(std::sqrt(l1), std::sqrt(l2)));
  };

  // integrand even under every coordinate sign flip: integrate the first
  // octant and average
  const double w_theta = std::exp(-(h1 - h3));
  const double w_psi = std::exp(-(h2 - h3));
  auto inner = [&](double theta) {
    const double ct = std::cos(theta), st = std::sin(theta);
    AdaptiveSimpson in(
        [&](double psi) { return point(ct, st, std::cos(psi), std::sin(psi)); },
        rel_tol_ * 0.3);
    return st * in.integrate(0.0, M_PI / 2, w_psi);
  };
  AdaptiveSimpson outer(inner, rel_tol_);
  const double oct = outer.integrate(0.0, M_PI / 2, w_theta);
  // full sphere = 8 octants; measure normalized by 4pi
  return oct * 2.0 / M_PI;
}

std::shared_ptr<const RadialXi> make_radial_xi(int n) {
  if (n == 2) return std::make_shared<Sl2RadialXi>();
  if (n == 3) return std::make_shared<Sl3RadialXi>();
  raise(ErrorCode::UnsupportedDimension, "radial Xi only for n in {2,3}");
}

}  // namespace hcs
