#pragma once

#include "hcs/boundary.hpp"
#include "hcs/group_function.hpp"

namespace hcs {

struct NormEstimate {
  double lower = 0.0;  // certified lower bound of ||lambda(f)||
  int iterations = 0;
  double residual = 0.0;
  int truncation_radius = 0;
  bool stalled = false;
  bool factored = false;  // true when the large-support fallback was used
};

enum class StartVector {
  SeededRandom,  // per the power-iteration default
  BallProfile,   // deterministic 3^{-wl/2} profile; better Perron overlap on
                 // slowly-mixing tree-like balls
};

struct LambdaNormOptions {
  double tol = 1e-7;
  int max_iter = 10'000;
  unsigned seed = 12345;
  StartVector start = StartVector::SeededRandom;
  // above this support size of f* conv f the estimator switches from
  // ||P_R lambda(f* conv f) P_R||^{1/2} to the factored compression
  // ||P_R lambda(f) P_R|| (equal limits, quadratic memory savings)
  std::size_t hform_support_limit = 96;
  ExecConfig exec = {};
};

// Lower bound for ||lambda(f)||, from power iteration on the ball-truncated
// self-adjoint operator.  Compressions of a self-adjoint operator never
// exceed its norm and grow with the ball, so the estimate is certified and
// monotone in R.
NormEstimate lambda_norm_lower(const GroupFunction& f, int R, double tol);
NormEstimate lambda_norm_lower(const GroupFunction& f, int R,
                               const LambdaNormOptions& opts);

struct ShalomComparison {
  NormEstimate lambda;
  PiNormEstimate pi;
};

// Both sides of Shalom's comparison for a nonnegative f:
// ||lambda(f)|| <= ||pi_nu(f)||.  NegativeMass if f has a negative value.
ShalomComparison shalom_compare(const GroupFunction& f, int R,
                                const KQuadrature& grid,
                                const LambdaNormOptions& opts = {});

}  // namespace hcs
