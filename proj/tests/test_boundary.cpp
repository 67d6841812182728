#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "hcs/ball.hpp"
#include "hcs/boundary.hpp"
#include "hcs/group_function.hpp"
#include "hcs/spline.hpp"
#include "hcs/xi_radial.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hcs;
using cdx = std::complex<double>;

static std::shared_ptr<const KQuadrature> grid2(int m) {
  return std::make_shared<const KQuadrature>(build_k_quadrature(2, m));
}

static GroupElement diag_t(double t) {
  return GroupElement(Eigen::Vector2d(std::exp(t / 2), std::exp(-t / 2))
                          .asDiagonal()
                          .toDenseMatrix());
}

TEST_CASE("periodic cubic spline reproduces smooth periodic functions") {
  const std::size_t m = 256;
  std::vector<cdx> s(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double th = 2 * M_PI * j / m;
    s[j] = std::cos(3 * th) + cdx(0, 1) * std::sin(2 * th);
  }
  const auto c = PeriodicCubicSpline::solve_coeffs(s);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 2 * M_PI);
  for (int k = 0; k < 200; ++k) {
    const double x = u(rng);
    const cdx want = std::cos(3 * x) + cdx(0, 1) * std::sin(2 * x);
    CHECK(std::abs(PeriodicCubicSpline::eval(c, x) - want) <= 2e-7);
  }
  // exact at the nodes
  for (std::size_t j = 0; j < m; j += 17)
    CHECK(std::abs(PeriodicCubicSpline::eval(c, 2 * M_PI * j / m) - s[j]) <= 1e-13);
}

TEST_CASE("spline transpose is the adjoint of evaluation") {
  const std::size_t m = 64;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 2 * M_PI);
  std::vector<double> x(40);
  for (auto& v : x) v = u(rng);
  std::uniform_real_distribution<double> uc(-1, 1);
  std::vector<cdx> a(m), b(x.size());
  for (auto& v : a) v = cdx(uc(rng), uc(rng));
  for (auto& v : b) v = cdx(uc(rng), uc(rng));
  // <S a, b> = <a, S^T b> with plain sums
  const auto coeff = PeriodicCubicSpline::solve_coeffs(a);
  cdx lhs(0);
  for (std::size_t i = 0; i < x.size(); ++i)
    lhs += PeriodicCubicSpline::eval(coeff, x[i]) * std::conj(b[i]);
  const auto stb = PeriodicCubicSpline::apply_transpose(b, x, m);
  cdx rhs(0);
  for (std::size_t j = 0; j < m; ++j) rhs += a[j] * std::conj(stb[j]);
  CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("cocycle closed form for diagonal elements") {
  auto g = grid2(128);
  const double t = 1.3;
  const GroupElement a = diag_t(t);
  for (std::size_t b = 0; b < g->size(); b += 7) {
    const double th = g->angles[b];
    const double expect =
        1.0 / (std::exp(-t) * std::cos(th) * std::cos(th) +
               std::exp(t) * std::sin(th) * std::sin(th));
    CHECK(cocycle(a, *g, b) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("cocycle is 1 for the identity and for rotations") {
  auto g = grid2(64);
  const GroupElement e = GroupElement::identity(2);
  Eigen::MatrixXd r(2, 2);
  r << std::cos(0.9), -std::sin(0.9), std::sin(0.9), std::cos(0.9);
  const GroupElement k(r);
  for (std::size_t b = 0; b < g->size(); ++b) {
    CHECK(cocycle(e, *g, b) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cocycle(k, *g, b) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("cocycle matches numerical differentiation of the boundary action") {
  // c(g, theta) = d/dtheta [angle(g^{-1} u_theta)] for the uniform measure
  auto g = grid2(256);
  std::mt19937_64 rng(3);
  for (int c = 0; c < 10; ++c) {
    const GroupElement el(random_sl_matrix(2, rng, 1.0));
    const Eigen::Matrix2d gi = el.mat().inverse();
    for (std::size_t b = 0; b < g->size(); b += 37) {
      const double th = g->angles[b];
      auto moved = [&](double x) {
        const Eigen::Vector2d u(std::cos(x), std::sin(x));
        const Eigen::Vector2d v = gi * u;
        return std::atan2(v[1], v[0]);
      };
      const double hstep = 1e-6;
      double dm = (moved(th + hstep) - moved(th - hstep)) / (2 * hstep);
      // the angle map can jump by pi across the branch cut
      while (dm < 0) dm += M_PI / hstep * 0;  // derivative of a monotone lift is > 0
      const double want = cocycle(el, *g, b);
      if (dm > 0)  // skip branch-cut straddles
        CHECK(dm == doctest::Approx(want).epsilon(1e-5));
    }
  }
}

TEST_CASE("cocycle chain rule and normalization") {
  auto g = grid2(512);
  std::mt19937_64 rng(5);
  for (int c = 0; c < 20; ++c) {
    const GroupElement a(random_sl_matrix(2, rng, 1.2));
    const GroupElement b(random_sl_matrix(2, rng, 1.2));
    const GroupElement ab = a * b;
    const auto ca = cocycle_all(a, *g);
    const auto cab = cocycle_all(ab, *g);
    const auto moved = moved_angles(a, *g);
    // c(ab, x) = c(a, x) c(b, a^{-1} x)
    for (std::size_t j = 0; j < g->size(); j += 61) {
      const Eigen::Matrix2d bi = b.mat().inverse();
      const double th = moved[j];
      const Eigen::Vector2d u(std::cos(th), std::sin(th));
      const Eigen::Vector2d v = bi * u;
      const double cb = 1.0 / v.squaredNorm();
      CHECK(cab[j] == doctest::Approx(ca[j] * cb).epsilon(1e-8));
    }
    // sum_b w_b c(g,b) = 1
    double mass = 0;
    for (std::size_t j = 0; j < g->size(); ++j) mass += g->weights[j] * ca[j];
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("apply_pi: identity, unitarity, positivity") {
  auto g = grid2(1024);
  std::mt19937_64 rng(7);
  std::vector<cdx> s(g->size());
  for (std::size_t j = 0; j < g->size(); ++j) {
    const double th = g->angles[j];
    s[j] = std::cos(2 * th) + 0.3 * std::sin(4 * th) + cdx(0, 0.2) * std::cos(6 * th);
  }
  const BoundaryFunction xi(g, s);
  const BoundaryFunction same = apply_pi(GroupElement::identity(2), xi);
  for (std::size_t j = 0; j < g->size(); j += 100)
    CHECK(std::abs(same.samples()[j] - s[j]) <= 1e-12);

  for (int c = 0; c < 10; ++c) {
    const GroupElement el(random_sl_matrix(2, rng, 1.0));
    const BoundaryFunction out = apply_pi(el, xi);
    CHECK(out.norm2() == doctest::Approx(xi.norm2()).epsilon(1e-8));
  }

  // exact positivity on nonnegative samples
  std::vector<cdx> pos(g->size());
  for (std::size_t j = 0; j < g->size(); ++j)
    pos[j] = 1.0 + std::cos(2 * g->angles[j]);  // touches zero
  const BoundaryFunction fpos(g, pos);
  const GroupElement el(random_sl_matrix(2, rng, 1.5));
  const BoundaryFunction moved = apply_pi(el, fpos);
  for (const auto& v : moved.samples()) {
    CHECK(v.imag() == 0.0);
    CHECK(v.real() >= 0.0);
  }
}

TEST_CASE("pairing basics") {
  auto g = grid2(256);
  const BoundaryFunction ones = BoundaryFunction::ones(g);
  CHECK(pairing(ones, ones).real() == doctest::Approx(1.0).epsilon(1e-13));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cdx> a(g->size()), b(g->size());
  for (auto& v : a) v = cdx(u(rng), u(rng));
  for (auto& v : b) v = cdx(u(rng), u(rng));
  const BoundaryFunction fa(g, a), fb(g, b);
  // conjugate symmetry and positivity
  CHECK(std::abs(pairing(fa, fb) - std::conj(pairing(fb, fa))) <= 1e-14);
  CHECK(pairing(fa, fa).real() >= 0.0);
  CHECK(std::abs(pairing(fa, fa).imag()) <= 1e-14);
}

TEST_CASE("Xi: both backends, trivial cases and symmetry") {
  const KQuadrature g = build_k_quadrature(2, 4096);
  CHECK(harish_chandra_xi(GroupElement::identity(2), XiMethod::Boundary, g) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(harish_chandra_xi(GroupElement::identity(2), XiMethod::Iwasawa, g) ==
        doctest::Approx(1.0).epsilon(1e-10));
  Eigen::MatrixXd r(2, 2);
  r << std::cos(1.1), -std::sin(1.1), std::sin(1.1), std::cos(1.1);
  CHECK(harish_chandra_xi(GroupElement(r), XiMethod::Boundary, g) ==
        doctest::Approx(1.0).epsilon(1e-10));

  std::mt19937_64 rng(11);
  for (int c = 0; c < 25; ++c) {
    const GroupElement el(random_sl_matrix(2, rng, 1.3));
    const double xb = harish_chandra_xi(el, XiMethod::Boundary, g);
    const double xw = harish_chandra_xi(el, XiMethod::Iwasawa, g);
    CHECK(std::abs(xb - xw) <= 1e-6);
    CHECK(xb > 0.0);
    CHECK(xb <= 1.0);
    // inverse and bi-K symmetry
    CHECK(harish_chandra_xi(el.inverse(), XiMethod::Iwasawa, g) ==
          doctest::Approx(xw).epsilon(1e-8));
    const GroupElement k1(random_rotation(2, rng)), k2(random_rotation(2, rng));
    CHECK(harish_chandra_xi(k1 * el * k2, XiMethod::Iwasawa, g) ==
          doctest::Approx(xw).epsilon(1e-8));
  }
}

TEST_CASE("Xi against the trapezoid oracle at t = 2") {
  const KQuadrature g = build_k_quadrature(2, 4096);
  const double oracle = oracle_xi_trapezoid(2.0, 1'000'000);
  CHECK(harish_chandra_xi(diag_t(2.0), XiMethod::Boundary, g) ==
        doctest::Approx(oracle).epsilon(1e-9));
  CHECK(harish_chandra_xi(diag_t(2.0), XiMethod::Iwasawa, g) ==
        doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("Xi for n = 3 via both backends") {
  const KQuadrature g = build_k_quadrature(3, 24);
  CHECK(harish_chandra_xi(GroupElement::identity(3), XiMethod::Iwasawa, g) ==
        doctest::Approx(1.0).epsilon(1e-10));
  Eigen::VectorXd h(3);
  h << 0.4, 0.1, -0.5;
  const GroupElement a(Eigen::MatrixXd(h.array().exp().matrix().asDiagonal()));
  const double xb = harish_chandra_xi(a, XiMethod::Boundary, g);
  const double xw = harish_chandra_xi(a, XiMethod::Iwasawa, g);
  CHECK(std::abs(xb - xw) <= 1e-10);  // both sum the same nodes
  const Sl3RadialXi radial;
  CHECK(xw == doctest::Approx(radial(ChamberVector(h))).epsilon(1e-5));
}

TEST_CASE("decay bound diagnostic: Xi e^{rho} / (1+L)^r bounded") {
  double sup = 0;
  for (double t = 0.0; t <= 20.0; t += 0.25) {
    const double v = xi_sl2_t(t) * std::exp(0.5 * t) / (1.0 + t / std::sqrt(2.0));
    sup = std::max(sup, v);
  }
  CHECK(std::isfinite(sup));
  CHECK(sup >= 0.9);
  CHECK(sup <= 1.1);  // empirical constant for SL(2)
}

TEST_CASE("pi_operator_norm on deltas") {
  auto ball = cached_ball(GroupPresentation::sl2z(), 3);
  const KQuadrature g = build_k_quadrature(2, 256);
  // delta_e: identity operator
  const GroupFunction de = GroupFunction::delta(ball, 0);
  const PiNormEstimate e1 = pi_operator_norm(de, g);
  CHECK(e1.value == doctest::Approx(1.0).epsilon(1e-10));
  // delta_gamma: unitary within grid tolerance
  const GroupFunction dg = GroupFunction::delta(ball, ball->size() / 2);
  const PiNormEstimate e2 = pi_operator_norm(dg, g, 1e-9, 4000);
  CHECK(e2.value == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(e2.value <= 1.0 + 1e-8);
  // empty support: zero
  const GroupFunction zero(ball);
  CHECK(pi_operator_norm(zero, g).value == 0.0);
}

TEST_CASE("pi_operator_norm is unsupported on n=3 grids") {
  auto ball = cached_ball(GroupPresentation::sl3z(), 1);
  const KQuadrature g3 = build_k_quadrature(3, 8);
  const GroupFunction f = GroupFunction::delta(ball, 0);
  CHECK_THROWS_AS(pi_operator_norm(f, g3), Error);
}

TEST_CASE("boundary pairing reproduces Xi through apply_pi for n=3") {
  const auto gp = std::make_shared<const KQuadrature>(build_k_quadrature(3, 16));
  const BoundaryFunction ones = BoundaryFunction::ones(gp);
  Eigen::VectorXd h(3);
  h << 0.3, 0.0, -0.3;
  const GroupElement a(Eigen::MatrixXd(h.array().exp().matrix().asDiagonal()));
  const double via_pairing = pairing(apply_pi(a, ones), ones).real();
  const double via_backend = harish_chandra_xi(a, XiMethod::Iwasawa, *gp);
  CHECK(via_pairing == doctest::Approx(via_backend).epsilon(1e-12));
}
