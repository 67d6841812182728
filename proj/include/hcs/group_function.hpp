#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "hcs/ball.hpp"
#include "hcs/parallel.hpp"

namespace hcs {

// Finitely supported complex function on Gamma, stored densely against a
// ball index.
class GroupFunction {
public:
  using cd = std::complex<double>;

  explicit GroupFunction(std::shared_ptr<const BallIndex> ball);
  GroupFunction(std::shared_ptr<const BallIndex> ball, std::vector<cd> values);

  static GroupFunction delta(std::shared_ptr<const BallIndex> ball,
                             std::size_t index);

  const BallIndex& ball() const { return *ball_; }
  std::shared_ptr<const BallIndex> ball_ptr() const { return ball_; }
  const std::vector<cd>& values() const { return values_; }
  cd& operator[](std::size_t i) { return values_[i]; }
  cd operator[](std::size_t i) const { return values_[i]; }

  std::vector<std::uint32_t> support() const;
  int support_radius() const;
  bool is_nonnegative() const;
  double l1_norm() const;
  double l2_norm() const;

private:
  std::shared_ptr<const BallIndex> ball_;
  std::vector<cd> values_;
};

// (f1 * f2)(g) = sum_gamma f1(gamma) f2(gamma^{-1} g), written into the
// target ball.  Requires target.radius >= r1 + r2.
GroupFunction convolve(const GroupFunction& f1, const GroupFunction& f2,
                       std::shared_ptr<const BallIndex> target,
                       const ExecConfig& exec = {});

// f*(gamma) = conj(f(gamma^{-1}))
GroupFunction adjoint(const GroupFunction& f);

// (sum |f|^2 (1+L)^{2d})^{1/2}
double sobolev_norm(const GroupFunction& f, double d,
                    const ExecConfig& exec = {});

// max over the support of |f| (1+L)^d / Xi
double schwartz_norm(const GroupFunction& f, double d,
                     const ExecConfig& exec = {});

// partial sums over balls of radius 1..radius of Xi^2 / (1+L)^{2d}
std::vector<double> xi_summability_partial(const GroupPresentation& p, double d,
                                           int radius,
                                           const ExecConfig& exec = {});

}  // namespace hcs
