#include "hcs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hcs/xi_radial.hpp"

namespace hcs {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXd rot2m(double th) {
  Eigen::MatrixXd k(2, 2);
  k << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  return k;
}

// exp of a traceless matrix by plain series (arguments stay small here)
Eigen::MatrixXd mat_exp(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(x.rows(), x.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = (term * x) / (double)k;
    sum += term;
    if (term.norm() < 1e-18 * sum.norm()) break;
  }
  return sum;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

// <pi(g) 1, zeta> = sum_b w_b c(g,b)^{1/2} conj(zeta_b)
cd pair_pi_one(const GroupElement& g, const KQuadrature& grid,
               const std::vector<cd>& zeta, const ExecConfig& exec) {
  const std::vector<double> c = cocycle_all(g, grid, exec);
  return par::reduce_sum<cd>(grid.size(), exec, [&](std::size_t b) {
    return grid.weights[b] * std::sqrt(c[b]) * std::conj(zeta[b]);
  });
}

BoundaryFunction modulus_squared(const BoundaryFunction& f) {
  std::vector<cd> s(f.samples().size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = std::norm(f.samples()[j]);
  if (f.has_frame_form()) {
    auto form = f.frame_form();
    BoundaryFunction out(f.grid_ptr(), [form](const Eigen::MatrixXd& k) {
      return cd(std::norm(form(k)));
    });
    return out;
  }
  return BoundaryFunction(f.grid_ptr(), std::move(s));
}

// average of pi(k) xi over a K grid that is deliberately offset from the
// boundary grid, so the rotations exercise the interpolation
BoundaryFunction k_average(const BoundaryFunction& xi, int m_k,
                           const ExecConfig& exec) {
  const KQuadrature& grid = xi.grid();
  if (grid.n == 2) {
    std::vector<cd> acc(grid.size(), cd(0));
    for (int i = 0; i < m_k; ++i) {
      const double phi = 2.0 * M_PI * (i + 0.5) / m_k;
      const BoundaryFunction moved =
          apply_pi(GroupElement(rot2m(phi)), xi, exec);
      for (std::size_t j = 0; j < acc.size(); ++j)
        acc[j] += moved.samples()[j] / (double)m_k;
    }
    return BoundaryFunction(xi.grid_ptr(), std::move(acc));
  }
  // n = 3: average the closed forms over a small independent Euler grid
  if (!xi.has_frame_form())
    raise(ErrorCode::InterpolationOutOfRange,
          "K-average for n=3 needs closed-form functions");
  const KQuadrature avg = build_k_quadrature(3, std::max(4, m_k));
  auto base = xi.frame_form();
  std::vector<Eigen::Matrix3d> rots(avg.size());
  for (std::size_t i = 0; i < avg.size(); ++i) rots[i] = avg.nodes[i];
  std::vector<double> w = avg.weights;
  return BoundaryFunction(
      xi.grid_ptr(), [base, rots, w](const Eigen::MatrixXd& k) {
        cd s(0);
        for (std::size_t i = 0; i < rots.size(); ++i) {
          const Eigen::Matrix3d x = rots[i].transpose() * k;
          // pi(k') has trivial cocycle; the action is frame translation
          Eigen::Matrix3d q;
          q.col(0) = x.col(0).normalized();
          Eigen::Vector3d v = x.col(1) - x.col(1).dot(q.col(0)) * q.col(0);
          q.col(1) = v.normalized();
          q.col(2) = q.col(0).cross(q.col(1));
          s += w[i] * base(q);
        }
        return s;
      });
}

}  // namespace

double VerifyConfig::effective_d(const RootSystemData& roots) const {
  if (d > 0) return d;
  return min_admissible_d(roots) + 0.5;
}

// ---- corpora ----------------------------------------------------------------

TestCorpus TestCorpus::generate(std::shared_ptr<const BallIndex> ball,
                                unsigned seed, int count) {
  TestCorpus tc;
  tc.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int c = 0; c < count; ++c) {
    const bool complex_vals = (c % 2 == 1);
    const bool sparse = (c % 3 == 2);
    std::vector<cd> vals(ball->size(), cd(0));
    for (std::size_t i = 0; i < ball->size(); ++i) {
      if (sparse && u01(rng) > 0.5) continue;
      if (complex_vals) {
        // uniform on the unit disc by rejection
        double re, im;
        do {
          re = u(rng);
          im = u(rng);
        } while (re * re + im * im > 1.0);
        vals[i] = cd(re, im);
      } else {
        vals[i] = cd(u(rng));
      }
    }
    GroupFunction f(ball, std::move(vals));
    std::vector<cd> av(ball->size());
    for (std::size_t i = 0; i < ball->size(); ++i) av[i] = std::abs(f[i]);
    tc.positive.emplace_back(ball, std::move(av));
    tc.functions.push_back(std::move(f));
  }
  return tc;
}

TestCorpus TestCorpus::generate_sparse_positive(
    std::shared_ptr<const BallIndex> ball, unsigned seed, int count,
    std::size_t max_support) {
  TestCorpus tc;
  tc.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::size_t outer_lo = ball->sphere_end(ball->radius() - 1);
  for (int c = 0; c < count; ++c) {
    std::vector<cd> vals(ball->size(), cd(0));
    vals[0] = cd(0.5 + 0.5 * u01(rng));  // identity always in the support
    if (outer_lo < ball->size()) {
      // pin the support radius by including an outer-sphere element
      const std::size_t pick =
          outer_lo + (std::size_t)(u01(rng) * (ball->size() - outer_lo));
      vals[std::min(pick, ball->size() - 1)] = cd(0.5 + 0.5 * u01(rng));
    }
    for (std::size_t k = 2; k < max_support; ++k) {
      const std::size_t pick = (std::size_t)(u01(rng) * ball->size());
      vals[std::min(pick, ball->size() - 1)] = cd(u01(rng));
    }
    tc.positive.emplace_back(ball, std::move(vals));
  }
  return tc;
}

BoundaryFunction random_boundary_function(
    std::shared_ptr<const KQuadrature> grid, std::mt19937_64& rng,
    int max_harmonic, bool nonneg, bool mean_zero) {
  if (grid->n != 2)
    raise(ErrorCode::UnsupportedDimension,
          "random boundary samples are n=2; use frame forms for n=3");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> ac(max_harmonic + 1), bc(max_harmonic + 1);
  for (int k = 0; k <= max_harmonic; ++k) {
    ac[k] = u(rng) / (1.0 + k);
    bc[k] = u(rng) / (1.0 + k);
  }
  if (mean_zero) ac[0] = 0.0;
  const std::size_t m = grid->size();
  std::vector<cd> s(m);
  double minv = 1e300;
  for (std::size_t j = 0; j < m; ++j) {
    const double th = grid->angles[j];
    double v = ac[0];
    // even harmonics only: pi-periodic, hence M-invariant on the circle
    for (int k = 1; k <= max_harmonic; ++k)
      v += ac[k] * std::cos(2.0 * k * th) + bc[k] * std::sin(2.0 * k * th);
    s[j] = v;
    minv = std::min(minv, v);
  }
  if (nonneg && minv < 0.0)
    for (auto& x : s) x += cd(-minv + 0.05);
  return BoundaryFunction(std::move(grid), std::move(s));
}

// ---- single checks ----------------------------------------------------------

VerificationReport check_radial_identity(const RadialFunction& fr,
                                         const BoundaryFunction& xi,
                                         const BoundaryFunction& eta,
                                         const ChamberQuadrature& quad,
                                         int k_average_count,
                                         const ExecConfig& exec) {
  if (fr.support_length > quad.cutoff + 1e-12)
    raise(ErrorCode::CutoffTooSmall,
          "radial function support exceeds the chamber cutoff");
  const int n = quad.n;
  const RootSystemData roots = make_root_system(n);
  const auto rxi = make_radial_xi(n);

  const BoundaryFunction xiK = k_average(xi, k_average_count, exec);
  const BoundaryFunction etaK = k_average(eta, k_average_count, exec);

  cd lhs(0);
  double rhs_int = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const ChamberVector& h = quad.nodes[i];
    const double L = h.norm();
    const double fv = (L <= fr.support_length) ? fr.of_length(L) : 0.0;
    if (fv == 0.0) continue;
    const double jw = quad.weights[i] * cartan_density(h, roots);
    const GroupElement a(
        Eigen::MatrixXd(h.values().array().exp().matrix().asDiagonal()));
    lhs += fv * jw * pairing(apply_pi(a, xiK, exec), etaK, exec);
    rhs_int += fv * jw * (*rxi)(h);
  }
  const cd rhs = xi.mean() * std::conj(eta.mean()) * rhs_int;

  VerificationReport rep;
  rep.statement_id = "prop-radial";
  rep.inputs["support_length"] = fr.support_length;
  rep.inputs["k_average_count"] = k_average_count;
  rep.add_residual("residual", std::abs(lhs - rhs));
  rep.add_constant("lhs_abs", std::abs(lhs));
  rep.add_constant("rhs_abs", std::abs(rhs));
  rep.add_tolerance("residual", 1e-5);
  rep.evaluate();
  return rep;
}

VerificationReport check_cs_lemma(const GroupElement& g,
                                  const BoundaryFunction& xi,
                                  const BoundaryFunction& eta,
                                  const ExecConfig& exec) {
  const double lhs = std::abs(pairing(apply_pi(g, xi, exec), eta, exec));
  const BoundaryFunction eta2 = modulus_squared(eta);
  const BoundaryFunction xi2 = modulus_squared(xi);
  const GroupElement gi = g.inverse();
  const double a =
      pair_pi_one(g, xi.grid(), eta2.samples(), exec).real();
  const double b =
      pair_pi_one(gi, xi.grid(), xi2.samples(), exec).real();
  const double rhs = std::sqrt(std::max(0.0, a)) * std::sqrt(std::max(0.0, b));

  VerificationReport rep;
  rep.statement_id = "lem-cs";
  rep.add_residual("negative_slack", std::max(0.0, lhs - rhs));
  rep.add_constant("lhs", lhs);
  rep.add_constant("rhs", rhs);
  rep.add_tolerance("negative_slack", 1e-8);
  rep.evaluate();
  return rep;
}

VerificationReport check_stability(double d, const GroupPresentation& p,
                                   const BoundaryFunction& xi,
                                   double neighborhood_radius, int sample,
                                   int ball_radius, unsigned seed,
                                   const ExecConfig& exec) {
  if (!xi.is_nonnegative())
    raise(ErrorCode::NegativeMass, "stability needs a nonnegative xi");
  auto ball = cached_ball(p, ball_radius);
  const KQuadrature& grid = xi.grid();

  // disjointness audit: the minimal L over nonidentity elements of the
  // doubled ball lower-bounds every pairwise L(gamma^{-1} gamma')
  auto audit_ball = cached_ball(p, std::min(2 * ball_radius, ball_radius + 4));
  const auto& auditL = audit_ball->lengths();
  double min_l = 1e300;
  for (std::size_t i = 1; i < audit_ball->size(); ++i)
    min_l = std::min(min_l, auditL[i]);
  if (2.0 * neighborhood_radius >= min_l)
    raise(ErrorCode::OverlapDetected,
          "gamma U neighborhoods overlap: 2 eps >= minimal pairwise distance " +
              std::to_string(min_l));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = p.n;
  auto value = [&](const GroupElement& g) {
    return pair_pi_one(g, grid, xi.samples(), exec).real() /
           std::pow(1.0 + length(g), d);
  };

  double c_emp = 0, c_half = 0, c_triangle = 0;
  for (int t = 0; t < sample; ++t) {
    const std::size_t gi = (std::size_t)((rng() >> 11) % ball->size());
    const GroupElement gamma = ball->element(gi);
    GroupElement uel = GroupElement::identity(n);
    if (neighborhood_radius > 0) {
      Eigen::MatrixXd x(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) x(r, c) = u(rng);
      x.diagonal().array() -= x.trace() / n;
      Eigen::MatrixXd e = mat_exp(0.5 * neighborhood_radius /
                                  std::max(1.0, x.norm()) * x);
      GroupElement cand{e};
      const double lu = length(cand);
      if (lu > neighborhood_radius)
        cand = GroupElement(
            mat_exp(0.45 * neighborhood_radius / lu * x / std::max(1.0, x.norm())));
      uel = cand;
    }
    const double va = value(gamma);
    const double vb = value(gamma * uel);
    const double ratio = va / std::max(vb, 1e-300);
    c_emp = std::max(c_emp, ratio);
    if (t < sample / 2) c_half = std::max(c_half, ratio);
    c_triangle = std::max(
        c_triangle, ratio / std::pow(1.0 + length(uel), d >= 0 ? d : -d));
  }

  VerificationReport rep;
  rep.statement_id = "lem-stability";
  rep.inputs["d"] = d;
  rep.inputs["neighborhood_radius"] = neighborhood_radius;
  rep.inputs["sample"] = sample;
  rep.inputs["ball_radius"] = ball_radius;
  rep.inputs["seed"] = seed;
  rep.add_constant("c_emp", c_emp);
  rep.add_constant("c_half_sample", c_half);
  rep.add_constant("c_triangle_normalized", c_triangle);
  rep.add_constant("min_pairwise_distance", min_l);
  rep.add_residual("finite", std::isfinite(c_emp) ? 0.0 : 1.0);
  rep.add_residual("sample_stability_ratio",
                   c_emp / std::max(c_half, 1e-300));
  rep.add_tolerance("finite", 0.5);
  rep.add_tolerance("sample_stability_ratio", 1.5);
  rep.evaluate();
  return rep;
}

DiscretizationResult check_discretization(double d, const GroupPresentation& p,
                                          const BoundaryFunction& xi,
                                          int radius,
                                          const ChamberQuadrature& quad,
                                          const ExecConfig& exec) {
  if (!xi.is_nonnegative())
    raise(ErrorCode::NegativeMass, "discretization needs a nonnegative xi");
  const RootSystemData roots = make_root_system(p.n);
  const auto rxi = make_radial_xi(p.n);
  const CdResult cd_res = cd_constant(d, quad, *rxi, roots, exec);

  auto ball = cached_ball(p, radius);
  const auto& L = ball->lengths();
  const auto& X = ball->xi_values();
  const KQuadrature& grid = xi.grid();
  const double rhs = cd_res.value * xi.norm1();

  std::vector<double> ratios;
  double lhs = 0;
  std::size_t next = 0;
  for (int r = 0; r <= radius; ++r) {
    const std::size_t end = ball->sphere_end(r);
    for (std::size_t i = next; i < end; ++i) {
      const double phi = X[i] * std::pow(1.0 + L[i], -2.0 * d);
      lhs += phi * pair_pi_one(ball->element(i), grid, xi.samples(), exec).real();
    }
    next = end;
    if (r >= 1) ratios.push_back(lhs / rhs);
  }

  DiscretizationResult out;
  out.cd_value = cd_res.value;
  out.c_disc = ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());

  VerificationReport& rep = out.report;
  rep.statement_id = "prop-discretization";
  rep.inputs["d"] = d;
  rep.inputs["radius"] = radius;
  rep.inputs["cutoff"] = quad.cutoff;
  rep.add_constant("cd_value", cd_res.value);
  rep.add_constant("cd_tail_bound", cd_res.tail_bound);
  rep.add_constant("c_disc", out.c_disc);
  for (std::size_t i = 0; i < ratios.size(); ++i)
    rep.add_constant("ratio_r" + std::to_string(i + 1), ratios[i]);
  rep.add_residual("ratio_max_over_median",
                   out.c_disc / std::max(median_of(ratios), 1e-300));
  rep.add_tolerance("ratio_max_over_median", 2.0);
  rep.evaluate();
  return out;
}

VerificationReport check_convolution_bound(double d, const GroupPresentation& p,
                                           const TestCorpus& corpus, int radius,
                                           const ExecConfig& exec) {
  const RootSystemData roots = make_root_system(p.n);
  if (2.0 * d <= roots.dim_a + 2.0 * roots.r)
    throw DivergentExponentError(min_admissible_d(roots),
                                 "convolution bound needs 2d > dim a + 2r");
  auto target = cached_ball(p, 2 * radius);
  const auto rxi = make_radial_xi(p.n);

  double max_ratio = 0;
  double min_split_slack = 1e300;
  int pairs = 0;
  for (std::size_t c = 0; c + 1 < corpus.functions.size(); c += 2) {
    const GroupFunction& f1 = corpus.functions[c];
    const GroupFunction& f2 = corpus.functions[c + 1];
    const GroupFunction conv = convolve(f1, f2, target, exec);
    const double n1 = schwartz_norm(f1, 2 * d, exec);
    const double n2 = schwartz_norm(f2, 2 * d, exec);
    const double nc = schwartz_norm(conv, 2 * d, exec);
    if (n1 > 0 && n2 > 0) {
      max_ratio = std::max(max_ratio, nc / (n1 * n2));
      ++pairs;
    }

    // proof split at L(gamma) <= L(g)/2 for the Schwartz-max attaining g:
    // each piece is bounded by 2^{2d} (1+L(g))^{-2d} sum phi_{2d} Xi(.)
    const auto& Lc = conv.ball().lengths();
    const auto& Xc = conv.ball().xi_values();
    std::size_t gidx = 0;
    double best = -1;
    for (const auto i : conv.support()) {
      const double v = std::abs(conv[i]) * std::pow(1.0 + Lc[i], 2 * d) / Xc[i];
      if (v > best) {
        best = v;
        gidx = i;
      }
    }
    if (best < 0) continue;
    const Eigen::MatrixXd gmat = conv.ball().matrix(gidx);
    const double Lg = Lc[gidx];
    auto fball = corpus.functions[c].ball_ptr();
    const auto& Lf = fball->lengths();
    const auto& Xf = fball->xi_values();
    double piece1 = 0, piece2 = 0, bound_sum1 = 0, bound_sum2 = 0;
    for (std::size_t i = 0; i < fball->size(); ++i) {
      const Eigen::MatrixXd gam = fball->matrix(i);
      const GroupElement invprod(gam.inverse() * gmat);
      const double Lip = length(invprod);
      const double Xip = rxi->at_group(invprod);
      const double phi = Xf[i] * std::pow(1.0 + Lf[i], -2.0 * d);
      const double term = phi * Xip * std::pow(1.0 + Lip, -2.0 * d);
      if (Lf[i] <= 0.5 * Lg) piece1 += term;
      else piece2 += term;
      bound_sum1 += phi * Xip;
      const GroupElement prod_g(gmat * gam.inverse());
      bound_sum2 += phi * rxi->at_group(prod_g);
    }
    const double pref = std::pow(2.0, 2 * d) * std::pow(1.0 + Lg, -2.0 * d);
    min_split_slack = std::min(min_split_slack, pref * bound_sum1 - piece1);
    min_split_slack = std::min(min_split_slack, pref * bound_sum2 - piece2);
  }

  VerificationReport rep;
  rep.statement_id = "thm1-item1";
  rep.inputs["d"] = d;
  rep.inputs["radius"] = radius;
  rep.inputs["pairs"] = pairs;
  rep.add_constant("max_submultiplicativity_ratio", max_ratio);
  rep.add_constant("min_split_slack", min_split_slack);
  rep.add_residual("split_negative_slack",
                   std::max(0.0, -std::min(min_split_slack, 0.0)));
  rep.add_tolerance("split_negative_slack", 1e-9);
  rep.evaluate();
  return rep;
}

VerificationReport check_main_inequality(double d, const GroupPresentation& p,
                                         const TestCorpus& corpus, int R,
                                         const KQuadrature& grid,
                                         const ChamberQuadrature& quad,
                                         double c_disc,
                                         const ExecConfig& exec) {
  const RootSystemData roots = make_root_system(p.n);
  const auto rxi = make_radial_xi(p.n);
  const double dc = min_admissible_d(roots) + 0.5;
  const CdResult cd_res = cd_constant(dc, quad, *rxi, roots, exec);
  if (corpus.positive.empty())
    raise(ErrorCode::NegativeMass, "main inequality needs nonnegative functions");

  double max_ratio = 0;
  double chain1_violation = 0;  // lambda_lower - pi_estimate
  double chain2_violation = 0;  // pi_estimate - theorem rhs at the vectors
  double max_c_chain = 0;
  LambdaNormOptions lopt;
  lopt.exec = exec;
  lopt.tol = 1e-6;

  for (const GroupFunction& f : corpus.positive) {
    if (!f.is_nonnegative()) raise(ErrorCode::NegativeMass, "corpus not positive");
    if (f.support().empty()) continue;
    const NormEstimate lam = lambda_norm_lower(f, R, lopt);
    const double sd = schwartz_norm(f, d, exec);
    if (sd > 0) max_ratio = std::max(max_ratio, lam.lower / sd);

    const PiNormEstimate pi = pi_operator_norm(f, grid, 1e-8, 4000, exec);
    chain1_violation = std::max(chain1_violation, lam.lower - pi.value);

    // theorem chain at the extremal vectors: ||pi(f)|| <= ||f||_{S^{2dc}}
    // sqrt(D(|u|^2) D(|v|^2)) with D over the support ball
    const int s = f.support_radius();
    auto sball = cached_ball(p, s);
    const auto& Ls = sball->lengths();
    const auto& Xs = sball->xi_values();
    const double s2dc = schwartz_norm(f, 2 * dc, exec);
    auto d_of = [&](const std::vector<cd>& vec) {
      // normalize to nu-l2 norm one, then D(|vec|^2)
      double nrm2 = 0;
      for (std::size_t j = 0; j < vec.size(); ++j)
        nrm2 += grid.weights[j] * std::norm(vec[j]);
      std::vector<cd> zeta(vec.size());
      for (std::size_t j = 0; j < vec.size(); ++j)
        zeta[j] = std::norm(vec[j]) / nrm2;
      double acc = 0;
      for (std::size_t i = 0; i < sball->size(); ++i) {
        const double phi = Xs[i] * std::pow(1.0 + Ls[i], -2.0 * dc);
        acc += phi *
               pair_pi_one(sball->element(i), grid, zeta, exec).real();
      }
      return acc;
    };
    if (!pi.left.empty() && !pi.right.empty()) {
      const double du = d_of(pi.left);
      const double dv = d_of(pi.right);
      const double rhs2 = s2dc * std::sqrt(std::max(0.0, du * dv));
      chain2_violation =
          std::max(chain2_violation, (pi.value - rhs2) / std::max(1.0, rhs2));
      max_c_chain = std::max(max_c_chain,
                             std::max(du, dv) / cd_res.value);
    }
  }

  VerificationReport rep;
  rep.statement_id = "thm1-item2";
  rep.inputs["d"] = d;
  rep.inputs["R"] = R;
  rep.inputs["chain_dc"] = dc;
  rep.add_constant("max_ratio", max_ratio);
  rep.add_constant("cd_value", cd_res.value);
  rep.add_constant("c_disc_input", c_disc);
  rep.add_constant("max_d_ratio_over_cd", max_c_chain);
  rep.add_residual("chain_lambda_le_pi", std::max(0.0, chain1_violation));
  rep.add_residual("chain_pi_le_schwartz_bound", std::max(0.0, chain2_violation));
  rep.add_tolerance("chain_lambda_le_pi", 1e-4);
  rep.add_tolerance("chain_pi_le_schwartz_bound", 1e-6);
  rep.evaluate();
  return rep;
}

VerificationReport check_summability(double d, const GroupPresentation& p,
                                     int radius, SummabilityExpectation expect,
                                     const ExecConfig& exec) {
  const std::vector<double> partial = xi_summability_partial(p, d, radius, exec);
  std::vector<double> increments{partial[0]};
  for (std::size_t i = 1; i < partial.size(); ++i)
    increments.push_back(partial[i] - partial[i - 1]);

  double max_ratio_tail = 0, min_ratio_tail = 1e300;
  for (std::size_t i = 4; i < increments.size(); ++i) {
    const double r = increments[i] / std::max(increments[i - 1], 1e-300);
    max_ratio_tail = std::max(max_ratio_tail, r);
    min_ratio_tail = std::min(min_ratio_tail, r);
  }

  VerificationReport rep;
  rep.statement_id = "summability";
  rep.inputs["d"] = d;
  rep.inputs["radius"] = radius;
  rep.inputs["expect"] =
      expect == SummabilityExpectation::Converge ? "converge" : "diverge";
  for (std::size_t i = 0; i < partial.size(); ++i)
    rep.add_constant("partial_r" + std::to_string(i + 1), partial[i]);
  if (expect == SummabilityExpectation::Converge) {
    rep.add_residual("max_increment_ratio_from_r4", max_ratio_tail);
    rep.add_tolerance("max_increment_ratio_from_r4", 1.0 - 1e-9);
  } else {
    // divergence detected: increments must keep growing
    rep.add_residual("growth_violation",
                     min_ratio_tail > 1.0 ? 0.0 : 1.0);
    rep.add_tolerance("growth_violation", 0.5);
  }
  rep.evaluate();
  return rep;
}

// ---- statement runners -------------------------------------------------------

std::vector<std::string> statement_ids() {
  return {"prop-radial",         "lem-cs",      "lem-stability",
          "prop-discretization", "thm1-item1",  "thm1-item2",
          "summability"};
}

namespace {

VerificationReport merge_max(const std::string& id,
                             std::vector<VerificationReport> parts) {
  // aggregate per-instance reports: max of each named residual
  VerificationReport rep;
  rep.statement_id = id;
  if (parts.empty()) return rep;
  rep.inputs = parts[0].inputs;
  rep.inputs["instances"] = parts.size();
  for (const auto& [name, tol] : parts[0].tolerances) {
    double worst = -1e300;
    for (const auto& p : parts) worst = std::max(worst, p.residual(name));
    rep.add_residual(name, worst);
    rep.add_tolerance(name, tol);
  }
  rep.evaluate();
  return rep;
}

GroupElement random_sl_element(int n, std::mt19937_64& rng, double max_length) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int tries = 0; tries < 64; ++tries) {
    Eigen::MatrixXd x(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) x(r, c) = u(rng);
    x.diagonal().array() -= x.trace() / n;
    GroupElement g(mat_exp(max_length / 1.5 * x / std::max(1.0, x.norm())));
    if (length(g) <= max_length) return g;
  }
  return GroupElement::identity(n);
}

}  // namespace

VerificationReport run_statement(const std::string& id, const VerifyConfig& cfg) {
  ExecConfig exec = cfg.exec;
  if (cfg.deterministic) exec.mode = Exec::ParallelDeterministic;
  const RootSystemData roots = make_root_system(cfg.group.n);
  const double d = cfg.effective_d(roots);
  std::mt19937_64 rng(cfg.seed);

  if (id == "prop-radial") {
    auto grid = std::make_shared<const KQuadrature>(
        build_k_quadrature(2, cfg.grid_resolution));
    const ChamberQuadrature quad = build_chamber_quadrature(2, 2.25);
    std::vector<VerificationReport> parts;
    const int triples = 20;
    for (int t = 0; t < triples; ++t) {
      const bool mean_zero = (t < triples / 5);
      BoundaryFunction xi =
          random_boundary_function(grid, rng, 6, false, mean_zero);
      BoundaryFunction eta = random_boundary_function(grid, rng, 6);
      std::uniform_real_distribution<double> us(0.3, 1.9);
      double a = us(rng), b = us(rng);
      if (a > b) std::swap(a, b);
      if (b - a < 0.2) b = a + 0.2;
      RadialFunction fr{[a, b](double L) { return (L >= a && L <= b) ? 1.0 : 0.0; },
                        b};
      parts.push_back(check_radial_identity(fr, xi, eta, quad, 341, exec));
    }
    return merge_max("prop-radial", std::move(parts));
  }

  if (id == "lem-cs") {
    auto grid = std::make_shared<const KQuadrature>(
        build_k_quadrature(2, std::max(cfg.grid_resolution, 2048)));
    std::vector<VerificationReport> parts;
    for (int t = 0; t < 100; ++t) {
      const GroupElement g = random_sl_element(2, rng, 3.0);
      BoundaryFunction xi = random_boundary_function(grid, rng, 6);
      BoundaryFunction eta = random_boundary_function(grid, rng, 6);
      parts.push_back(check_cs_lemma(g, xi, eta, exec));
    }
    // exact-equality case xi = eta = 1: both sides are Xi(g)
    const BoundaryFunction ones = BoundaryFunction::ones(grid);
    const GroupElement g0 = random_sl_element(2, rng, 2.0);
    const double lhs = std::abs(pairing(apply_pi(g0, ones, exec), ones, exec));
    const double r1 =
        pair_pi_one(g0, *grid, ones.samples(), exec).real();
    const double r2 =
        pair_pi_one(g0.inverse(), *grid, ones.samples(), exec).real();
    VerificationReport ones_rep;
    ones_rep.statement_id = "lem-cs";
    ones_rep.add_residual("negative_slack",
                          std::abs(std::sqrt(r1 * r2) - lhs));
    ones_rep.add_tolerance("negative_slack", 1e-8);
    ones_rep.evaluate();
    std::vector<VerificationReport> all = std::move(parts);
    all.push_back(ones_rep);
    return merge_max("lem-cs", std::move(all));
  }

  if (id == "lem-stability") {
    auto grid = std::make_shared<const KQuadrature>(
        build_k_quadrature(cfg.group.n, cfg.group.n == 2 ? cfg.grid_resolution : 12));
    BoundaryFunction xi =
        cfg.group.n == 2
            ? random_boundary_function(grid, rng, 4, true)
            : BoundaryFunction::ones(grid);
    return check_stability(d, cfg.group, xi, 0.12, 400,
                           std::min(cfg.radius, 4), cfg.seed, exec);
  }

  if (id == "prop-discretization") {
    auto grid = std::make_shared<const KQuadrature>(
        build_k_quadrature(cfg.group.n, cfg.group.n == 2 ? 512 : 12));
    BoundaryFunction xi = cfg.group.n == 2
                              ? random_boundary_function(grid, rng, 4, true)
                              : BoundaryFunction::ones(grid);
    const ChamberQuadrature quad =
        build_chamber_quadrature(cfg.group.n, cfg.chamber_cutoff);
    return check_discretization(d, cfg.group, xi, cfg.radius + 2, quad, exec)
        .report;
  }

  if (id == "thm1-item1") {
    std::vector<VerificationReport> parts;
    std::vector<double> seq;
    for (int r = std::max(2, cfg.radius - 2); r <= cfg.radius; ++r) {
      auto ball = cached_ball(cfg.group, r);
      const TestCorpus corpus =
          TestCorpus::generate(ball, cfg.seed + (unsigned)r, cfg.corpus_size);
      VerificationReport part =
          check_convolution_bound(d, cfg.group, corpus, r, exec);
      for (const auto& [k, v] : part.empirical_constants)
        if (k == "max_submultiplicativity_ratio") seq.push_back(v);
      parts.push_back(std::move(part));
    }
    VerificationReport rep = merge_max("thm1-item1", std::move(parts));
    const double mx = *std::max_element(seq.begin(), seq.end());
    for (std::size_t i = 0; i < seq.size(); ++i)
      rep.add_constant("max_ratio_radius" + std::to_string(i), seq[i]);
    rep.add_residual("ratio_max_over_median", mx / std::max(median_of(seq), 1e-300));
    rep.add_tolerance("ratio_max_over_median", 2.0);
    rep.evaluate();
    return rep;
  }

  if (id == "thm1-item2") {
    auto grid = std::make_shared<const KQuadrature>(
        build_k_quadrature(2, std::min(cfg.grid_resolution, 512)));
    const ChamberQuadrature quad =
        build_chamber_quadrature(cfg.group.n, cfg.chamber_cutoff);
    BoundaryFunction xi1 = BoundaryFunction::ones(grid);
    const DiscretizationResult disc =
        check_discretization(min_admissible_d(roots) + 0.5, cfg.group, xi1,
                             cfg.radius + 2, quad, exec);
    std::vector<VerificationReport> parts;
    std::vector<double> seq;
    for (int s = 2; s <= cfg.radius; ++s) {
      auto ball = cached_ball(cfg.group, s);
      const TestCorpus corpus = TestCorpus::generate_sparse_positive(
          ball, cfg.seed + (unsigned)s, 2, 10);
      VerificationReport part =
          check_main_inequality(d, cfg.group, corpus, s + 8, *grid, quad,
                                disc.c_disc, exec);
      for (const auto& [k, v] : part.empirical_constants)
        if (k == "max_ratio") seq.push_back(v);
      parts.push_back(std::move(part));
    }
    VerificationReport rep = merge_max("thm1-item2", std::move(parts));
    const double mx = *std::max_element(seq.begin(), seq.end());
    for (std::size_t i = 0; i < seq.size(); ++i)
      rep.add_constant("max_ratio_support" + std::to_string(i + 2), seq[i]);
    rep.add_residual("ratio_max_over_median",
                     mx / std::max(median_of(seq), 1e-300));
    rep.add_tolerance("ratio_max_over_median", 2.0);
    rep.evaluate();
    return rep;
  }

  if (id == "summability") {
    const SummabilityExpectation expect =
        (2.0 * d > roots.dim_a + 2.0 * roots.r)
            ? SummabilityExpectation::Converge
            : SummabilityExpectation::Diverge;
    return check_summability(d, cfg.group, cfg.radius + 4, expect, exec);
  }

  raise(ErrorCode::InvalidArgument, "unknown statement id '" + id + "'");
}

ReportBundle run_suite(const std::vector<std::string>& ids,
                       const VerifyConfig& cfg) {
  ReportBundle bundle;
  bundle.deterministic = cfg.deterministic;
  bundle.config["group"] = cfg.group.name;
  bundle.config["n"] = cfg.group.n;
  bundle.config["d"] = cfg.d;
  bundle.config["radius"] = cfg.radius;
  bundle.config["R"] = cfg.R;
  bundle.config["grid_resolution"] = cfg.grid_resolution;
  bundle.config["chamber_cutoff"] = cfg.chamber_cutoff;
  bundle.config["corpus_size"] = cfg.corpus_size;
  bundle.config["seed"] = cfg.seed;
  bundle.config["deterministic"] = cfg.deterministic;
  bundle.config_hash = hash_config(bundle.config);
  for (const auto& id : ids) bundle.reports.push_back(run_statement(id, cfg));
  return bundle;
}

}  // namespace hcs
