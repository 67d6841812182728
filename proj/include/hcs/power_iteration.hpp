#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <type_traits>
#include <vector>

#include "hcs/parallel.hpp"

namespace hcs {

struct PowerIterResult {
  double eigenvalue = 0.0;  // final Rayleigh quotient (lower bound for PSD)
  int iterations = 0;
  double residual = 0.0;  // ||A v - theta v|| / theta
  bool stalled = false;
};

// Power iteration for a positive semidefinite operator given by its apply
// callback.  The Rayleigh quotient of a PSD operator never exceeds the top
// eigenvalue, so the returned value is a certified lower bound even when
// the iteration stalls.
template <class Scalar>
PowerIterResult power_iterate_psd(
    std::size_t dim,
    const std::function<void(const std::vector<Scalar>&, std::vector<Scalar>&)>& apply,
    std::vector<Scalar>& v, double tol, int max_iter, const ExecConfig& exec) {
  auto dot_re = [&](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    return par::reduce_sum<double>(dim, exec, [&](std::size_t i) {
      if constexpr (std::is_same_v<Scalar, double>) return a[i] * b[i];
      else return (std::conj(a[i]) * b[i]).real();
    });
  };

  PowerIterResult res;
  std::vector<Scalar> av(dim);
  double nv2 = dot_re(v, v);
  if (!(nv2 > 0)) {
    v.assign(dim, Scalar(1));
    nv2 = (double)dim;
  }
  double theta = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    const double inv = 1.0 / std::sqrt(nv2);
    par::for_each(dim, exec, [&](std::size_t i) { v[i] = v[i] * inv; });
    apply(v, av);
    theta = dot_re(v, av);
    res.iterations = it;
    if (theta <= 0) break;
    const double r2 = dot_re(av, av) - theta * theta;  // ||Av||^2 - theta^2
    res.residual = std::sqrt(std::max(0.0, r2)) / theta;
    if (res.residual <= tol) break;
    std::swap(v, av);
    nv2 = dot_re(v, v);
  }
  res.eigenvalue = std::max(theta, 0.0);
  res.stalled = res.residual > tol;
  return res;
}

template <class Scalar>
std::vector<Scalar> seeded_start(std::size_t dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Scalar> v(dim);
  for (auto& x : v) x = Scalar(u(rng));
  return v;
}

}  // namespace hcs
