#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hcs/parallel.hpp"

using namespace hcs;

TEST_CASE("serial, parallel and deterministic reductions agree") {
  const std::size_t n = 100'000;
  auto term = [](std::size_t i) {
    return std::sin(0.001 * (double)i) / (1.0 + (double)i);
  };
  const double s = par::reduce_sum<double>(n, ExecConfig::serial(), term);
  const double p = par::reduce_sum<double>(n, ExecConfig::parallel(), term);
  const double d1 = par::reduce_sum<double>(n, ExecConfig::deterministic(1), term);
  const double d2 = par::reduce_sum<double>(n, ExecConfig::deterministic(2), term);
  CHECK(std::abs(s - p) <= 1e-13 * std::abs(s));
  // deterministic mode is bit-stable across thread counts
  CHECK(d1 == d2);
  CHECK(std::abs(s - d1) <= 1e-13 * std::abs(s));
}

TEST_CASE("max reduction matches serial") {
  const std::size_t n = 50'000;
  auto term = [](std::size_t i) { return std::cos(0.01 * (double)i); };
  const double s = par::reduce_max(n, ExecConfig::serial(), term);
  const double p = par::reduce_max(n, ExecConfig::parallel(), term);
  CHECK(s == p);
}

TEST_CASE("for_each covers the range once") {
  const std::size_t n = 10'000;
  std::vector<int> hits(n, 0);
  par::for_each(n, ExecConfig::parallel(), [&](std::size_t i) { hits[i]++; });
  for (int h : hits) CHECK(h == 1);
}
