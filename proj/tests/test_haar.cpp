#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hcs/haar.hpp"
#include "hcs/xi_radial.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hcs;

static ChamberVector cv2(double a) {
  Eigen::VectorXd v(2);
  v << a, -a;
  return ChamberVector(v);
}

TEST_CASE("cartan density closed values") {
  const RootSystemData r2 = make_root_system(2);
  const RootSystemData r3 = make_root_system(3);
  CHECK(cartan_density(cv2(0.5), r2) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
  CHECK(cartan_density(cv2(0.0), r2) == 0.0);
  Eigen::VectorXd h(3);
  h << 1, 0, -1;
  CHECK(cartan_density(ChamberVector(h), r3) ==
        doctest::Approx(std::sinh(1.0) * std::sinh(1.0) * std::sinh(2.0))
            .epsilon(1e-14));
  CHECK(cartan_density(ChamberVector(h), r3) == doctest::Approx(5.00905).epsilon(1e-5));
}

TEST_CASE("density overflow guard") {
  const RootSystemData r2 = make_root_system(2);
  CHECK_THROWS_AS(cartan_density(cv2(400.0), r2), Error);
}

TEST_CASE("K quadrature weights normalize") {
  for (int n : {2, 3}) {
    const KQuadrature q = build_k_quadrature(n, 8);
    double w = 0;
    for (double x : q.weights) w += x;
    CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& k : q.nodes)
      CHECK((k.transpose() * k - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-12);
  }
  CHECK(build_k_quadrature(2, 8).size() == 8);
  CHECK_THROWS_AS(build_k_quadrature(4, 8), Error);
  CHECK_THROWS_AS(build_k_quadrature(2, 3), Error);
}

TEST_CASE("SO(3) Haar symmetry: mean of k11 vanishes") {
  const KQuadrature q = build_k_quadrature(3, 12);
  double acc = 0;
  for (std::size_t i = 0; i < q.size(); ++i) acc += q.weights[i] * q.nodes[i](0, 0);
  CHECK(std::abs(acc) <= 1e-10);
}

TEST_CASE("n=2 K-grid shift invariance is exact") {
  const KQuadrature q = build_k_quadrature(2, 16);
  auto f = [](double th) { return std::cos(3 * th) + 0.5 * std::sin(th); };
  const int shift = 5;  // integrate f(k_phi k_theta) with phi a grid angle
  double a = 0, b = 0;
  for (int j = 0; j < 16; ++j) {
    a += q.weights[j] * f(q.angles[j]);
    b += q.weights[j] * f(q.angles[(j + shift) % 16]);
  }
  CHECK(a == doctest::Approx(b).epsilon(1e-15));
}

TEST_CASE("chamber quadratures nest across cutoffs") {
  const ChamberQuadrature q10 = build_chamber_quadrature(2, 10);
  const ChamberQuadrature q20 = build_chamber_quadrature(2, 20);
  REQUIRE(q10.size() < q20.size());
  for (std::size_t i = 0; i < q10.size(); ++i) {
    CHECK(q10.nodes[i].values() == q20.nodes[i].values());
    CHECK(q10.weights[i] == q20.weights[i]);
  }
}

TEST_CASE("bi-K-invariant integration against a 1-D oracle") {
  // f(e^H) = e^{-2 rho(H)}: with t = alpha(H), rho(H) = t/2, so the integral
  // is int_0^T e^{-t} sinh(t) dt / sqrt(2), T = sqrt(2) * cutoff
  const RootSystemData r2 = make_root_system(2);
  const ChamberQuadrature quad = build_chamber_quadrature(2, 12);
  auto f = [&](const ChamberVector& h) {
    return std::exp(-2.0 * rho_pairing(h.values(), r2));
  };
  const ChamberIntegral got = integrate_bi_k_invariant(f, quad, r2);
  const double T = std::sqrt(2.0) * quad.cutoff;
  const double expect = oracle_adaptive_simpson(
      [](double t) { return std::exp(-t) * std::sinh(t); }, 0.0, T,
      1e-13) / std::sqrt(2.0);
  CHECK(got.value == doctest::Approx(expect).epsilon(1e-10));

  // linearity and the zero function
  auto f2 = [&](const ChamberVector& h) { return 2.0 * f(h); };
  CHECK(integrate_bi_k_invariant(f2, quad, r2).value ==
        doctest::Approx(2.0 * got.value).epsilon(1e-13));
  auto zero = [](const ChamberVector&) { return 0.0; };
  CHECK(integrate_bi_k_invariant(zero, quad, r2).value == 0.0);
}

TEST_CASE("indicator-ball volume is monotone in the radius") {
  const RootSystemData r2 = make_root_system(2);
  const ChamberQuadrature quad = build_chamber_quadrature(2, 8);
  double prev = 0;
  for (double c : {1.0, 2.0, 4.0, 7.0}) {
    auto ind = [c](const ChamberVector& h) { return h.norm() <= c ? 1.0 : 0.0; };
    const double v = integrate_bi_k_invariant(ind, quad, r2).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("C_d values match the closed-form-Xi 1-D oracle") {
  const RootSystemData r2 = make_root_system(2);
  const Sl2RadialXi xi;
  for (double d : {2.0, 3.0}) {
    double prev_value = 0.0, prev_tail = 1e300;
    for (double cutoff : {10.0, 20.0, 40.0}) {
      const ChamberQuadrature quad = build_chamber_quadrature(2, cutoff);
      const CdResult r = cd_constant(d, quad, xi, r2);
      // 1-D oracle at the same effective cutoff, via the AGM closed form
      const double T = std::sqrt(2.0) * quad.cutoff;
      const double expect =
          oracle_adaptive_simpson(
              [d](double t) {
                const double x = std::exp(-0.5 * t);
                double a = 1.0, b = std::exp(-t);
                for (int i = 0; i < 40 && std::abs(a - b) > 1e-17 * a; ++i) {
                  const double am = 0.5 * (a + b);
                  b = std::sqrt(a * b);
                  a = am;
                }
                const double xi_t = x / (0.5 * (a + b));
                return xi_t * xi_t * std::sinh(t) *
                       std::pow(1.0 + t / std::sqrt(2.0), -2.0 * d);
              },
              0.0, T, 1e-13) /
          std::sqrt(2.0);
      CHECK(r.value == doctest::Approx(expect).epsilon(1e-6));
      CHECK(r.value >= prev_value);        // monotone in cutoff
      CHECK(r.tail_bound <= prev_tail + 1e-18);
      prev_value = r.value;
      prev_tail = r.tail_bound;
    }
  }
}

TEST_CASE("C_d monotone decreasing in d at equal cutoff") {
  const RootSystemData r2 = make_root_system(2);
  const Sl2RadialXi xi;
  const ChamberQuadrature quad = build_chamber_quadrature(2, 15);
  const double v2 = cd_constant(2.0, quad, xi, r2).value;
  const double v25 = cd_constant(2.5, quad, xi, r2).value;
  const double v3 = cd_constant(3.0, quad, xi, r2).value;
  CHECK(v25 <= v2);
  CHECK(v3 <= v25);
}

TEST_CASE("divergent exponent raises with the minimal admissible d") {
  const RootSystemData r2 = make_root_system(2);
  const Sl2RadialXi xi;
  const ChamberQuadrature quad = build_chamber_quadrature(2, 10);
  CHECK_THROWS_AS(cd_constant(1.0, quad, xi, r2), DivergentExponentError);
  try {
    cd_constant(1.0, quad, xi, r2);
  } catch (const DivergentExponentError& e) {
    CHECK(e.min_admissible_d() == doctest::Approx(1.5));
  }
}

TEST_CASE("serial and parallel chamber integration agree") {
  const RootSystemData r2 = make_root_system(2);
  const ChamberQuadrature quad = build_chamber_quadrature(2, 20);
  auto f = [&](const ChamberVector& h) {
    return std::exp(-1.7 * rho_pairing(h.values(), r2)) * (1.0 + h.norm());
  };
  const double s = integrate_bi_k_invariant(f, quad, r2, ExecConfig::serial()).value;
  const double p = integrate_bi_k_invariant(f, quad, r2, ExecConfig::parallel()).value;
  const double d1 = integrate_bi_k_invariant(f, quad, r2, ExecConfig::deterministic(1)).value;
  const double d2 = integrate_bi_k_invariant(f, quad, r2, ExecConfig::deterministic(2)).value;
  CHECK(s == doctest::Approx(p).epsilon(1e-13));
  CHECK(d1 == d2);
}

TEST_CASE("radial Xi evaluators: SL(2) against the trapezoid oracle") {
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    const double o = oracle_xi_trapezoid(t, 200'000);
    CHECK(xi_sl2_t(t) == doctest::Approx(o).epsilon(1e-9));
  }
  CHECK(xi_sl2_t(0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("radial Xi for SL(3) matches the Euler grid at small H") {
  // the Euler grid's alpha/gamma trapezoid error is ~ e^{-res * e^{-span}},
  // so keep the H span small and the resolution high for this cross-check
  const Sl3RadialXi xi3;
  const KQuadrature grid = build_k_quadrature(3, 40);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.05, 0.35);
  for (int c = 0; c < 3; ++c) {
    double a = u(rng), b = u(rng) * 0.4;
    Eigen::VectorXd h(3);
    h << a + b, b - 0.5 * a, -0.5 * a - 2 * b;
    std::sort(h.data(), h.data() + 3, std::greater<double>());
    h.array() -= h.mean();
    const ChamberVector hv(h);
    const double grid_val = [&] {
      // direct Iwasawa sum over the Euler grid
      double acc = 0;
      const Eigen::Matrix3d gi =
          (-h.array()).exp().matrix().asDiagonal().toDenseMatrix();
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const Eigen::Matrix3d x = gi * grid.nodes[j];
        const Eigen::Vector3d c1 = x.col(0), c2 = x.col(1);
        acc += grid.weights[j] / (c1.norm() * c1.cross(c2).norm());
      }
      return acc;
    }();
    CHECK(xi3(hv) == doctest::Approx(grid_val).epsilon(2e-6));
  }
  // identity normalization
  CHECK(xi3(ChamberVector::zero(3)) == doctest::Approx(1.0).epsilon(1e-9));
}
