#include "hcs/group_function.hpp"

#include <cmath>

namespace hcs {

GroupFunction::GroupFunction(std::shared_ptr<const BallIndex> ball)
    : ball_(std::move(ball)), values_(ball_->size(), cd(0)) {}

GroupFunction::GroupFunction(std::shared_ptr<const BallIndex> ball,
                             std::vector<cd> values)
    : ball_(std::move(ball)), values_(std::move(values)) {
  if (values_.size() != ball_->size())
    raise(ErrorCode::DimensionMismatch, "values not aligned with ball");
  for (const cd& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      raise(ErrorCode::NonFinite, "GroupFunction has non-finite values");
}

GroupFunction GroupFunction::delta(std::shared_ptr<const BallIndex> ball,
                                   std::size_t index) {
  GroupFunction f(std::move(ball));
  if (index >= f.ball().size())
    raise(ErrorCode::InvalidArgument, "delta: index outside ball");
  f.values_[index] = cd(1);
  return f;
}

std::vector<std::uint32_t> GroupFunction::support() const {
  std::vector<std::uint32_t> s;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] != cd(0)) s.push_back((std::uint32_t)i);
  return s;
}

int GroupFunction::support_radius() const {
  int r = 0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] != cd(0)) r = std::max(r, ball_->word_length(i));
  return r;
}

bool GroupFunction::is_nonnegative() const {
  for (const cd& v : values_)
    if (v.imag() != 0.0 || v.real() < 0.0) return false;
  return true;
}

double GroupFunction::l1_norm() const {
  double a = 0;
  for (const cd& v : values_) a += std::abs(v);
  return a;
}

double GroupFunction::l2_norm() const {
  double a = 0;
  for (const cd& v : values_) a += std::norm(v);
  return std::sqrt(a);
}

GroupFunction convolve(const GroupFunction& f1, const GroupFunction& f2,
                       std::shared_ptr<const BallIndex> target,
                       const ExecConfig& exec) {
  const BallIndex& b1 = f1.ball();
  const BallIndex& b2 = f2.ball();
  const BallIndex& tb = *target;
  if (b1.n() != b2.n() || b1.n() != tb.n())
    raise(ErrorCode::DimensionMismatch, "convolve: dimension mismatch");
  if (tb.radius() < f1.support_radius() + f2.support_radius())
    raise(ErrorCode::TargetTooSmall,
          "convolve: target radius < sum of support radii");

  const auto s1 = f1.support();
  const auto s2 = f2.support();
  GroupFunction out(target);

  if (exec.mode == Exec::Serial || s1.size() * s2.size() < 1 << 16) {
    // scatter: out[gamma delta] += f1(gamma) f2(delta)
    for (const auto i : s1) {
      const Eigen::MatrixXd gi = b1.matrix(i);
      for (const auto j : s2) {
        const std::ptrdiff_t t = tb.index_of(gi * b2.matrix(j));
        if (t < 0)
          raise(ErrorCode::TargetTooSmall, "convolve: product missed the target");
        out[(std::size_t)t] += f1[i] * f2[j];
      }
    }
    return out;
  }

  // parallel: scatter into fixed per-block buffers, reduced in block order so
  // the sum is deterministic for any thread count
  const std::size_t nb = (s1.size() + 63) / 64;
  std::vector<std::vector<std::pair<std::uint32_t, GroupFunction::cd>>> buf(nb);
  par::for_each(nb, exec, [&](std::size_t blk) {
    auto& local = buf[blk];
    const std::size_t lo = blk * 64, hi = std::min(s1.size(), lo + 64);
    for (std::size_t a = lo; a < hi; ++a) {
      const auto i = s1[a];
      const Eigen::MatrixXd gi = b1.matrix(i);
      for (const auto j : s2) {
        const std::ptrdiff_t t = tb.index_of(gi * b2.matrix(j));
        if (t >= 0) local.emplace_back((std::uint32_t)t, f1[i] * f2[j]);
        else local.emplace_back(UINT32_MAX, GroupFunction::cd(0));
      }
    }
  });
  for (const auto& local : buf)
    for (const auto& [t, v] : local) {
      if (t == UINT32_MAX)
        raise(ErrorCode::TargetTooSmall, "convolve: product missed the target");
      out[t] += v;
    }
  return out;
}

GroupFunction adjoint(const GroupFunction& f) {
  GroupFunction out(f.ball_ptr());
  for (const auto i : f.support()) {
    const std::size_t j = f.ball().inverse_index(i);
    out[j] = std::conj(f[i]);
  }
  return out;
}

double sobolev_norm(const GroupFunction& f, double d, const ExecConfig& exec) {
  const auto& L = f.ball().lengths();
  const double s =
      par::reduce_sum<double>(f.values().size(), exec, [&](std::size_t i) {
        return std::norm(f[i]) * std::pow(1.0 + L[i], 2.0 * d);
      });
  return std::sqrt(s);
}

double schwartz_norm(const GroupFunction& f, double d, const ExecConfig& exec) {
  const auto& L = f.ball().lengths();
  const auto& X = f.ball().xi_values();
  const auto supp = f.support();
  if (supp.empty()) return 0.0;
  for (const auto i : supp)
    if (X[i] <= 0.0)
      raise(ErrorCode::NonFinite,
            "schwartz_norm: Xi underflows at " + f.ball().word(i));
  // finite support makes the sup a max
  return par::reduce_max(supp.size(), exec, [&](std::size_t a) {
    const auto i = supp[a];
    return std::abs(f[i]) * std::pow(1.0 + L[i], d) / X[i];
  });
}

std::vector<double> xi_summability_partial(const GroupPresentation& p, double d,
                                           int radius, const ExecConfig& exec) {
  if (radius < 1) raise(ErrorCode::InvalidArgument, "radius >= 1");
  auto ball = cached_ball(p, radius);
  const auto& L = ball->lengths();
  const auto& X = ball->xi_values();
  std::vector<double> terms(ball->size());
  par::for_each(ball->size(), exec, [&](std::size_t i) {
    terms[i] = X[i] * X[i] * std::pow(1.0 + L[i], -2.0 * d);
  });
  std::vector<double> partial;
  double acc = 0;
  std::size_t next = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t end = ball->sphere_end(r);
    for (std::size_t i = next; i < end; ++i) acc += terms[i];
    next = end;
    partial.push_back(acc);
  }
  return partial;
}

}  // namespace hcs
