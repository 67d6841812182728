#include "hcs/opnorm.hpp"

#include <cmath>

#include "hcs/power_iteration.hpp"

namespace hcs {

namespace {

using cd = GroupFunction::cd;

// index maps i -> index(sigma^{-1} g_i) per support element sigma; the
// truncated convolution matvec then reduces to weighted gathers
template <class S>
struct ConvMaps {
  std::vector<S> weights;
  std::vector<std::vector<std::int32_t>> maps;
};

template <class S>
ConvMaps<S> build_maps(const GroupFunction& h, const BallIndex& domain,
                       const ExecConfig& exec) {
  ConvMaps<S> cm;
  const auto supp = h.support();
  cm.maps.resize(supp.size());
  const bool exact = domain.presentation().exact_integer &&
                     h.ball().presentation().exact_integer;
  for (std::size_t s = 0; s < supp.size(); ++s) {
    if constexpr (std::is_same_v<S, double>)
      cm.weights.push_back(h[supp[s]].real());
    else
      cm.weights.push_back(h[supp[s]]);
    auto& map = cm.maps[s];
    map.resize(domain.size());
    const std::size_t inv = h.ball().inverse_index(supp[s]);
    if (exact) {
      const std::int64_t* sig_inv = h.ball().int_entries(inv);
      par::for_each(domain.size(), exec, [&](std::size_t i) {
        const std::ptrdiff_t t = domain.index_of_int_left(sig_inv, i);
        map[i] = t < 0 ? -1 : (std::int32_t)t;
      });
    } else {
      const Eigen::MatrixXd sig_inv = h.ball().matrix(inv);
      par::for_each(domain.size(), exec, [&](std::size_t i) {
        const std::ptrdiff_t t = domain.index_of(sig_inv * domain.matrix(i));
        map[i] = t < 0 ? -1 : (std::int32_t)t;
      });
    }
  }
  return cm;
}

// out(g) = sum_sigma w_sigma v(sigma^{-1} g), truncated to the domain ball
template <class S>
void apply_conv(const ConvMaps<S>& cm, const std::vector<S>& v,
                std::vector<S>& out, const ExecConfig& exec) {
  std::fill(out.begin(), out.end(), S(0));
  for (std::size_t s = 0; s < cm.maps.size(); ++s) {
    const S w = cm.weights[s];
    const auto& map = cm.maps[s];
    par::for_each(v.size(), exec, [&](std::size_t i) {
      const std::int32_t j = map[i];
      if (j >= 0) out[i] += w * v[j];
    });
  }
}

template <class S>
std::vector<S> start_vector(const BallIndex& domain,
                            const LambdaNormOptions& o) {
  if (o.start == StartVector::SeededRandom)
    return seeded_start<S>(domain.size(), o.seed);
  std::vector<S> v(domain.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = S(std::pow(3.0, -0.5 * domain.word_length(i)) *
             (domain.radius() + 1 - domain.word_length(i)));
  return v;
}

template <class S>
PowerIterResult run_estimator(const GroupFunction& f, const GroupFunction& fh,
                              bool hform, const BallIndex& domain,
                              const LambdaNormOptions& opts) {
  std::vector<S> v = start_vector<S>(domain, opts);
  if (hform) {
    const ConvMaps<S> cm = build_maps<S>(fh, domain, opts.exec);
    std::function<void(const std::vector<S>&, std::vector<S>&)> ap =
        [&](const std::vector<S>& x, std::vector<S>& y) {
          apply_conv(cm, x, y, opts.exec);
        };
    return power_iterate_psd<S>(domain.size(), ap, v, opts.tol, opts.max_iter,
                                opts.exec);
  }
  // factored compression: C = P_R lambda(f) P_R, iterate C* C; same limit
  // as the h-form, quadratically smaller support loop
  auto domain_ptr = cached_ball(domain.presentation(), domain.radius());
  GroupFunction fd(domain_ptr);
  for (const auto i : f.support()) {
    const std::ptrdiff_t t = domain.index_of(f.ball().matrix(i));
    if (t < 0) raise(ErrorCode::TargetTooSmall, "support exceeds domain ball");
    fd[(std::size_t)t] = f[i];
  }
  const ConvMaps<S> fwd = build_maps<S>(fd, domain, opts.exec);
  const ConvMaps<S> rev = build_maps<S>(adjoint(fd), domain, opts.exec);
  std::vector<S> mid(domain.size());
  std::function<void(const std::vector<S>&, std::vector<S>&)> ap =
      [&](const std::vector<S>& x, std::vector<S>& y) {
        apply_conv(fwd, x, mid, opts.exec);
        apply_conv(rev, mid, y, opts.exec);
      };
  return power_iterate_psd<S>(domain.size(), ap, v, opts.tol, opts.max_iter,
                              opts.exec);
}

bool is_real(const GroupFunction& f) {
  for (const auto& v : f.values())
    if (v.imag() != 0.0) return false;
  return true;
}

}  // namespace

NormEstimate lambda_norm_lower(const GroupFunction& f, int R, double tol) {
  LambdaNormOptions o;
  o.tol = tol;
  return lambda_norm_lower(f, R, o);
}

NormEstimate lambda_norm_lower(const GroupFunction& f, int R,
                               const LambdaNormOptions& opts) {
  NormEstimate est;
  est.truncation_radius = R;
  const auto supp = f.support();
  if (supp.empty()) return est;  // zero function, zero operator
  const int s = f.support_radius();
  if (R < s)
    raise(ErrorCode::InvalidArgument,
          "lambda_norm_lower: R below the support radius");
  if (!(opts.tol > 0)) raise(ErrorCode::InvalidArgument, "tol > 0 required");

  const GroupPresentation& pres = f.ball().presentation();
  auto domain = cached_ball(pres, R);

  // h = f* conv f: self-adjoint, positive type; the compression norm is the
  // square of the compressed lambda(f) estimate
  auto hball = cached_ball(pres, 2 * s);
  GroupFunction fr(hball);
  for (const auto i : supp) {
    const std::ptrdiff_t t = hball->index_of(f.ball().matrix(i));
    if (t < 0) raise(ErrorCode::TargetTooSmall, "support exceeds the 2s ball");
    fr[(std::size_t)t] = f[i];
  }
  const GroupFunction fh = convolve(adjoint(fr), fr, hball, opts.exec);

  const bool hform = fh.support().size() <= opts.hform_support_limit;
  est.factored = !hform;

  const PowerIterResult pr =
      is_real(f) ? run_estimator<double>(fr, fh, hform, *domain, opts)
                 : run_estimator<cd>(fr, fh, hform, *domain, opts);
  est.lower = std::sqrt(std::max(0.0, pr.eigenvalue));
  est.iterations = pr.iterations;
  est.residual = pr.residual;
  est.stalled = pr.stalled;
  return est;
}

ShalomComparison shalom_compare(const GroupFunction& f, int R,
                                const KQuadrature& grid,
                                const LambdaNormOptions& opts) {
  if (!f.is_nonnegative())
    raise(ErrorCode::NegativeMass,
          "shalom_compare needs a nonnegative function (positive measure)");
  ShalomComparison out;
  out.lambda = lambda_norm_lower(f, R, opts);
  out.pi = pi_operator_norm(f, grid, opts.tol, opts.max_iter, opts.exec);
  return out;
}

}  // namespace hcs
