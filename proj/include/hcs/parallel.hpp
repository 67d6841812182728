#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hcs {

// Execution policy for the data-parallel kernels.  Every kernel in this
// project has a serial reference path (Serial) and an OpenMP path.  The
// deterministic flavour accumulates in fixed-size blocks that are reduced
// in index order, so the result is bit-identical for any thread count.
enum class Exec { Serial, Parallel, ParallelDeterministic };

struct ExecConfig {
  Exec mode = Exec::Parallel;
  int threads = 0;  // 0 = OpenMP default

  static ExecConfig serial() { return {Exec::Serial, 1}; }
  static ExecConfig parallel(int t = 0) { return {Exec::Parallel, t}; }
  static ExecConfig deterministic(int t = 0) {
    return {Exec::ParallelDeterministic, t};
  }
};

namespace par {

constexpr std::size_t kBlock = 1024;

template <class F>
void for_each(std::size_t n, const ExecConfig& cfg, F&& body) {
  if (cfg.mode == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  if (cfg.threads > 0) {
#pragma omp parallel for schedule(static) num_threads(cfg.threads)
    for (long long i = 0; i < (long long)n; ++i) body((std::size_t)i);
  } else {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)n; ++i) body((std::size_t)i);
  }
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

// Sum of term(i) for i in [0,n).  The deterministic path sums fixed blocks
// in parallel and combines the per-block partials serially in block order.
template <class T, class F>
T reduce_sum(std::size_t n, const ExecConfig& cfg, F&& term) {
  if (cfg.mode == Exec::Serial || n < 2 * kBlock) {
    T acc{};
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
  }
  if (cfg.mode == Exec::ParallelDeterministic) {
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<T> partial(nblocks, T{});
    for_each(nblocks, cfg, [&](std::size_t b) {
      const std::size_t lo = b * kBlock;
      const std::size_t hi = std::min(n, lo + kBlock);
      T acc{};
      for (std::size_t i = lo; i < hi; ++i) acc += term(i);
      partial[b] = acc;
    });
    T acc{};
    for (std::size_t b = 0; b < nblocks; ++b) acc += partial[b];
    return acc;
  }
#ifdef _OPENMP
  T acc{};
#pragma omp parallel
  {
    T local{};
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < (long long)n; ++i) local += term((std::size_t)i);
#pragma omp critical
    acc += local;
  }
  return acc;
#else
  T acc{};
  for (std::size_t i = 0; i < n; ++i) acc += term(i);
  return acc;
#endif
}

// Max of term(i); fp max is order-independent so one path serves all modes.
template <class F>
double reduce_max(std::size_t n, const ExecConfig& cfg, F&& term) {
  if (cfg.mode == Exec::Serial || n < 2 * kBlock) {
    double m = -1e308;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, term(i));
    return m;
  }
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, -1e308);
  for_each(nblocks, cfg, [&](std::size_t b) {
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double m = -1e308;
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, term(i));
    partial[b] = m;
  });
  double m = -1e308;
  for (std::size_t b = 0; b < nblocks; ++b) m = std::max(m, partial[b]);
  return m;
}

}  // namespace par
}  // namespace hcs
