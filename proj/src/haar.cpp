#include "hcs/haar.hpp"

#include <cmath>

namespace hcs {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
static void gauss_legendre(int k, std::vector<double>& x, std::vector<double>& w) {
  x.assign(k, 0.0);
  w.assign(k, 0.0);
  const int m = (k + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(M_PI * (i - 0.25) / (k + 0.5));
    double z1, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= k; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = k * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > 3e-15);
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= k; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = k * (z * p1 - p2) / (z * z - 1.0);
    x[i - 1] = -z;
    x[k - i] = z;
    w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[k - i] = w[i - 1];
  }
}

static Eigen::MatrixXd rot2(double theta) {
  Eigen::MatrixXd k(2, 2);
  const double c = std::cos(theta), s = std::sin(theta);
  k << c, -s, s, c;
  return k;
}

static Eigen::MatrixXd rot3_z(double a) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(3, 3);
  k(0, 0) = std::cos(a); k(0, 1) = -std::sin(a);
  k(1, 0) = std::sin(a); k(1, 1) = std::cos(a);
  return k;
}

static Eigen::MatrixXd rot3_y(double b) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(3, 3);
  k(0, 0) = std::cos(b); k(0, 2) = std::sin(b);
  k(2, 0) = -std::sin(b); k(2, 2) = std::cos(b);
  return k;
}

KQuadrature build_k_quadrature(int n, int resolution) {
  if (n != 2 && n != 3)
    raise(ErrorCode::UnsupportedDimension, "K quadrature only for n in {2,3}");
  if (resolution < 4) raise(ErrorCode::InvalidArgument, "resolution >= 4");
  KQuadrature q;
  q.n = n;
  q.resolution = resolution;
  if (n == 2) {
    q.nodes.reserve(resolution);
    q.angles.reserve(resolution);
    for (int j = 0; j < resolution; ++j) {
      const double th = 2.0 * M_PI * j / resolution;
      q.nodes.push_back(rot2(th));
      q.angles.push_back(th);
      q.weights.push_back(1.0 / resolution);
    }
  } else {
    // z-y-z Euler grid: uniform in alpha, gamma; Gauss-Legendre in cos(beta).
    // Haar density (1/8pi^2) sin(beta) folds into the weights, which then
    // sum to one exactly up to the GL weight sum.
    const int nb = std::max(2, resolution / 2);
    std::vector<double> xb, wb;
    gauss_legendre(nb, xb, wb);
    q.nodes.reserve((std::size_t)resolution * resolution * nb);
    for (int ia = 0; ia < resolution; ++ia) {
      const double alpha = 2.0 * M_PI * ia / resolution;
      const Eigen::MatrixXd ra = rot3_z(alpha);
      for (int ib = 0; ib < nb; ++ib) {
        const double beta = std::acos(xb[ib]);
        const Eigen::MatrixXd rb = ra * rot3_y(beta);
        for (int ig = 0; ig < resolution; ++ig) {
          const double gamma = 2.0 * M_PI * ig / resolution;
          q.nodes.push_back(rb * rot3_z(gamma));
          q.weights.push_back(wb[ib] / (2.0 * resolution * resolution));
        }
      }
    }
  }
  return q;
}

ChamberQuadrature build_chamber_quadrature(int n, double cutoff,
                                           int radial_per_shell,
                                           int nodes_per_shell, double step,
                                           double ratio) {
  if (n != 2 && n != 3)
    raise(ErrorCode::UnsupportedDimension, "chamber quadrature only for n in {2,3}");
  if (cutoff <= 0.0) raise(ErrorCode::InvalidArgument, "cutoff must be positive");
  ChamberQuadrature q;
  q.n = n;
  q.nodes_per_shell = (n == 2) ? 1 : nodes_per_shell;

  // fixed shell ladder, independent of the cutoff; the requested cutoff
  // snaps down to a shell boundary so that different cutoffs nest exactly
  std::vector<double> bounds{0.0};
  while (bounds.back() < cutoff) {
    const double s = bounds.back();
    bounds.push_back(s + std::max(step, ratio * s));
  }
  if (bounds.back() > cutoff + 1e-12) bounds.pop_back();
  if (bounds.size() < 2) raise(ErrorCode::InvalidArgument, "cutoff below first shell");
  q.cutoff = bounds.back();

  std::vector<double> xr, wr;
  gauss_legendre(radial_per_shell, xr, wr);

  if (n == 2) {
    const Eigen::Vector2d dir(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0));
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
      const double lo = bounds[k], hi = bounds[k + 1];
      for (int i = 0; i < radial_per_shell; ++i) {
        const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * xr[i];
        q.nodes.emplace_back(Eigen::VectorXd(s * dir));
        q.weights.push_back(0.5 * (hi - lo) * wr[i]);
        q.shell_of.push_back((int)k);
      }
      q.shell_radius.push_back(hi);
    }
  } else {
    // orthonormal basis of the zero-sum plane; the chamber is the arc
    // |psi| <= pi/6 between the walls alpha_12 = 0 and alpha_23 = 0
    Eigen::Vector3d v1(1, 0, -1), v2(1, -2, 1);
    v1 /= std::sqrt(2.0);
    v2 /= std::sqrt(6.0);
    std::vector<double> xa, wa;
    gauss_legendre(nodes_per_shell, xa, wa);
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
      const double lo = bounds[k], hi = bounds[k + 1];
      for (int i = 0; i < radial_per_shell; ++i) {
        const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * xr[i];
        const double wrad = 0.5 * (hi - lo) * wr[i];
        for (int j = 0; j < nodes_per_shell; ++j) {
          const double psi = (M_PI / 6.0) * xa[j];
          const double wang = (M_PI / 6.0) * wa[j];
          Eigen::Vector3d h = s * (std::cos(psi) * v1 + std::sin(psi) * v2);
          q.nodes.emplace_back(Eigen::VectorXd(h));
          q.weights.push_back(wrad * wang * s);  // polar element s ds dpsi
          q.shell_of.push_back((int)k);
        }
      }
      q.shell_radius.push_back(hi);
    }
  }
  return q;
}

double cartan_density(const ChamberVector& h, const RootSystemData& roots) {
  if (h.dim() != roots.n) raise(ErrorCode::DimensionMismatch, "cartan_density");
  double prod = 1.0;
  for (const auto& [i, j] : roots.positive_roots) {
    const double a = h[i] - h[j];
    if (a > 700.0) raise(ErrorCode::Overflow, "cartan_density: alpha(H) > 700");
    prod *= std::sinh(a);
  }
  return prod;
}

ChamberIntegral integrate_bi_k_invariant(
    const std::function<double(const ChamberVector&)>& f,
    const ChamberQuadrature& quad, const RootSystemData& roots,
    const ExecConfig& exec) {
  const std::size_t n = quad.size();
  const int last = quad.shell_of.empty() ? 0 : quad.shell_of.back();
  std::vector<double> terms(n);
  par::for_each(n, exec, [&](std::size_t i) {
    const double fi = f(quad.nodes[i]);
    if (!std::isfinite(fi)) terms[i] = std::nan("");
    else terms[i] = quad.weights[i] * fi * cartan_density(quad.nodes[i], roots);
  });
  ChamberIntegral out;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(terms[i]))
      raise(ErrorCode::NonFinite, "integrand not finite at a chamber node");
    out.value += terms[i];
    if (quad.shell_of[i] == last) out.last_shell += terms[i];
  }
  return out;
}

double min_admissible_d(const RootSystemData& roots) {
  return 0.5 * (roots.dim_a + 2 * roots.r);
}

CdResult cd_constant(double d, const ChamberQuadrature& quad,
                     const RadialXi& xi, const RootSystemData& roots,
                     const ExecConfig& exec) {
  if (quad.n != roots.n || xi.dim() != roots.n)
    raise(ErrorCode::DimensionMismatch, "cd_constant: mismatched n");
  const double dmin = min_admissible_d(roots);
  if (2.0 * d <= 2.0 * dmin)
    throw DivergentExponentError(
        dmin, "cd_constant: need 2d > dim(a) + 2r = " + std::to_string(2 * dmin));

  const std::size_t n = quad.size();
  std::vector<double> xival(n);
  par::for_each(n, exec, [&](std::size_t i) { xival[i] = xi(quad.nodes[i]); });

  CdResult out;
  const int last = quad.shell_of.empty() ? 0 : quad.shell_of.back();
  double cfit = 1.0;  // attained at H = 0
  for (std::size_t i = 0; i < n; ++i) {
    const ChamberVector& h = quad.nodes[i];
    const double L = h.norm();
    const double term = quad.weights[i] * xival[i] * xival[i] *
                        std::pow(1.0 + L, -2.0 * d) *
                        cartan_density(h, roots);
    out.value += term;
    if (quad.shell_of[i] == last) out.last_shell += term;
    const double ratio =
        xival[i] * std::exp(rho_pairing(h.values(), roots)) /
        std::pow(1.0 + L, roots.r);
    cfit = std::max(cfit, ratio);
  }
  out.c_fit = cfit;
  const double kappa = 2.0 * d - 2.0 * roots.r - roots.dim_a;
  const double omega = (quad.n == 2) ? 1.0 : M_PI / 3.0;
  out.tail_bound = cfit * cfit * std::pow(2.0, -roots.r) * omega *
                   std::pow(1.0 + quad.cutoff, -kappa) / kappa;
  return out;
}

}  // namespace hcs
