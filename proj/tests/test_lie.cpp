#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcs/lie.hpp"
#include "test_util.hpp"

using namespace hcs;

TEST_CASE("cartan of the identity") {
  const auto t = cartan_decompose(GroupElement::identity(2));
  CHECK(t.h.norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(t.k1.is_orthogonal());
  CHECK(t.k2.is_orthogonal());
}

TEST_CASE("cartan of a diagonal element is exact") {
  Eigen::MatrixXd m = Eigen::Vector2d(std::exp(1.0), std::exp(-1.0))
                          .asDiagonal()
                          .toDenseMatrix();
  const auto t = cartan_decompose(GroupElement(m));
  CHECK(t.h[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.h[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("cartan of [[2,1],[1,1]] hits the golden ratio") {
  // oracle: A^T A = [[5,3],[3,2]] has eigenvalues (7 +- 3 sqrt 5)/2, so
  // h_1 = log(lambda_max)/2 = log(phi^2)
  const double lam = 0.5 * (7.0 + 3.0 * std::sqrt(5.0));
  const double h_expect = 0.5 * std::log(lam);
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 1;
  const GroupElement g(m);
  const auto t = cartan_decompose(g);
  CHECK(t.h[0] == doctest::Approx(h_expect).epsilon(1e-12));
  CHECK(t.h[0] == doctest::Approx(0.9624236501192069).epsilon(1e-12));
  CHECK(length(g) == doctest::Approx(std::sqrt(2.0) * h_expect).epsilon(1e-12));
}

TEST_CASE("reconstruction holds on random elements of SL(2) and SL(3)") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3}) {
    for (int i = 0; i < 200; ++i) {
      const GroupElement g(random_sl_matrix(n, rng, 2.0));
      const auto t = cartan_decompose(g);
      const Eigen::MatrixXd rec = t.k1.mat() *
                                  t.h.values().array().exp().matrix().asDiagonal() *
                                  t.k2.mat();
      CHECK((rec - g.mat()).norm() <= 1e-9 * g.mat().norm());
      CHECK(t.k1.is_orthogonal());
      CHECK(t.k2.is_orthogonal());
      CHECK(std::abs(t.h.values().sum()) <= 1e-10);
    }
  }
}

TEST_CASE("length axioms") {
  std::mt19937_64 rng(11);
  CHECK(length(GroupElement::identity(3)) == 0.0);
  for (int n : {2, 3}) {
    for (int i = 0; i < 100; ++i) {
      const GroupElement g(random_sl_matrix(n, rng, 1.5));
      // inverse symmetry
      CHECK(length(g) == doctest::Approx(length(g.inverse())).epsilon(1e-9));
      // K bi-invariance
      const GroupElement k1(random_rotation(n, rng));
      const GroupElement k2(random_rotation(n, rng));
      CHECK(length(k1 * g * k2) == doctest::Approx(length(g)).epsilon(1e-9));
      // subadditivity
      const GroupElement h(random_sl_matrix(n, rng, 1.5));
      CHECK(subadditivity_check(g, h) >= -1e-9);
    }
  }
}

TEST_CASE("subadditivity trivial cases") {
  const GroupElement e = GroupElement::identity(2);
  CHECK(subadditivity_check(e, e) == doctest::Approx(0.0));
  std::mt19937_64 rng(3);
  const GroupElement g(random_sl_matrix(2, rng, 1.0));
  // (g, g^{-1}): slack is 2 L(g)
  CHECK(subadditivity_check(g, g.inverse()) ==
        doctest::Approx(2.0 * length(g)).epsilon(1e-9));
}

TEST_CASE("iwasawa projection") {
  Eigen::MatrixXd uni(2, 2);
  uni << 1, 5, 0, 1;
  const Eigen::VectorXd h1 = iwasawa_projection(GroupElement(uni));
  CHECK(h1.norm() == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::MatrixXd d = Eigen::Vector2d(std::exp(0.7), std::exp(-0.7))
                          .asDiagonal()
                          .toDenseMatrix();
  const Eigen::VectorXd h2 = iwasawa_projection(GroupElement(d));
  CHECK(h2[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(h2[1] == doctest::Approx(-0.7).epsilon(1e-12));

  Eigen::MatrixXd rot(2, 2);
  rot << std::cos(0.4), -std::sin(0.4), std::sin(0.4), std::cos(0.4);
  CHECK(iwasawa_projection(GroupElement(rot)).norm() ==
        doctest::Approx(0.0).epsilon(1e-12));

  // zero-sum on random elements
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd h = iwasawa_projection(GroupElement(random_sl_matrix(3, rng)));
    CHECK(std::abs(h.sum()) <= 1e-10);
  }
}

TEST_CASE("rho pairing") {
  const RootSystemData r2 = make_root_system(2);
  const RootSystemData r3 = make_root_system(3);
  CHECK(r2.r == 1);
  CHECK(r3.r == 3);
  CHECK(r2.rho.sum() == doctest::Approx(0.0));
  CHECK(r3.rho.sum() == doctest::Approx(0.0));
  Eigen::VectorXd h2(2);
  h2 << 1, -1;
  CHECK(rho_pairing(h2, r2) == doctest::Approx(1.0));
  Eigen::VectorXd h3(3);
  h3 << 1, 0, -1;
  CHECK(rho_pairing(h3, r3) == doctest::Approx(2.0));
  CHECK(rho_pairing(Eigen::VectorXd::Zero(3), r3) == doctest::Approx(0.0));
  CHECK_THROWS_AS(rho_pairing(h2, r3), Error);
}

TEST_CASE("error paths") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0, 0, std::nan("");
  CHECK_THROWS_AS(GroupElement{bad}, Error);
  Eigen::MatrixXd drift(2, 2);
  drift << 1.1, 0, 0, 1.0;
  CHECK_THROWS_AS(GroupElement{drift}, Error);
}

TEST_CASE("iwasawa equals cartan log-vector for positive diagonal") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 20; ++i) {
    Eigen::Vector3d v(u(rng), u(rng), 0.0);
    v[2] = -v[0] - v[1];
    const GroupElement g(
        Eigen::MatrixXd(v.array().exp().matrix().asDiagonal()));
    const Eigen::VectorXd hiw = iwasawa_projection(g);
    CHECK((hiw - v).norm() <= 1e-10);
  }
}
