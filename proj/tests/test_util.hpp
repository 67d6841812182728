#pragma once

#include <Eigen/Dense>
#include <random>

// test-side helpers, independent of the library paths they exercise

inline Eigen::MatrixXd test_mat_exp(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(x.rows(), x.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (term * x) / (double)k;
    sum += term;
    if (term.norm() < 1e-18 * sum.norm()) break;
  }
  return sum;
}

// random element of SL(n,R) as exp of a traceless matrix, scaled so the
// entries stay moderate
inline Eigen::MatrixXd random_sl_matrix(int n, std::mt19937_64& rng,
                                        double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = u(rng);
  x.diagonal().array() -= x.trace() / n;
  return test_mat_exp(scale * x);
}

inline Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}
