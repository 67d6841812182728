#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hcs/lie.hpp"
#include "hcs/xi_radial.hpp"

namespace hcs {

// Finitely generated discrete subgroup of SL(n,R), given by its generator
// matrices.  The generator list is closed under inversion.  Built-ins are
// exact-integer; custom generator sets with non-integer entries run in
// floating mode (rounded dedup keys with a collision audit).
struct GroupPresentation {
  std::string name;
  int n = 2;
  bool exact_integer = true;
  std::vector<Eigen::MatrixXd> generators;  // closed under inverse
  std::vector<std::string> gen_names;

  // free group of rank 2: T = [[1,2],[0,1]], B = [[1,0],[2,1]]
  static GroupPresentation sanov();
  // SL(2,Z) with S = [[0,-1],[1,0]], T = [[1,1],[0,1]]
  static GroupPresentation sl2z();
  // SL(3,Z) with the elementary matrices e_ij(1), i != j
  static GroupPresentation sl3z();
  static GroupPresentation by_name(const std::string& name);
  // inverses are appended automatically
  static GroupPresentation from_generators(const std::string& name,
                                           std::vector<Eigen::MatrixXd> gens);
};

// Breadth-first ball of words of length <= radius, deduplicated by an exact
// (or rounded) matrix key.  Element 0 is the identity; word lengths are
// non-decreasing along the index order, so a smaller ball is a prefix of a
// larger one.
class BallIndex {
public:
  static constexpr std::size_t kDefaultCap = 12'000'000;

  int n() const { return pres_.n; }
  int radius() const { return radius_; }
  const GroupPresentation& presentation() const { return pres_; }
  std::size_t size() const { return count_; }

  Eigen::MatrixXd matrix(std::size_t i) const;
  GroupElement element(std::size_t i) const { return GroupElement(matrix(i)); }
  int word_length(std::size_t i) const { return wl_[i]; }
  std::string word(std::size_t i) const;

  // elements of word length <= r occupy indices [0, sphere_end(r))
  std::size_t sphere_end(int r) const;

  // index of the given matrix, or -1 if outside the ball
  std::ptrdiff_t index_of(const Eigen::MatrixXd& m) const;
  std::ptrdiff_t index_of_product(std::size_t i, std::size_t j) const;
  // index of elem(i)^{-1} * elem(j); the workhorse of the convolution maps
  std::ptrdiff_t index_of_invprod(std::size_t i, std::size_t j) const;
  std::size_t inverse_index(std::size_t i) const;

  // exact mode only: raw integer entries and the allocation-free product
  // lookup index(a * elem(j)) used by the hot matvec map builders
  const std::int64_t* int_entries(std::size_t i) const {
    return ent_.data() + i * stride_;
  }
  std::ptrdiff_t index_of_int_left(const std::int64_t* a, std::size_t j) const;

  // cached geometry: L(gamma) and Xi(gamma) (radial evaluator of matching n)
  const std::vector<double>& lengths() const;
  const std::vector<double>& xi_values() const;

  friend std::shared_ptr<BallIndex> generate_ball(const GroupPresentation&,
                                                  int, std::size_t);

private:
  GroupPresentation pres_;
  int radius_ = 0;
  std::size_t count_ = 0;
  int stride_ = 4;  // n*n
  std::vector<std::int64_t> ent_;     // exact entries (exact mode)
  std::vector<double> fent_;          // raw entries (floating mode)
  std::vector<std::int64_t> key_;     // dedup keys (floating mode only)
  std::vector<std::uint16_t> wl_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> via_gen_;
  std::vector<std::uint32_t> order_;  // indices sorted by key
  std::vector<std::size_t> sphere_end_;

  mutable std::mutex cache_mutex_;
  mutable std::vector<double> L_;
  mutable std::vector<double> xi_;
  mutable std::vector<std::uint32_t> inv_;

  const std::int64_t* keyp(std::size_t i) const {
    return (pres_.exact_integer ? ent_.data() : key_.data()) + i * stride_;
  }
  std::ptrdiff_t find_key(const std::int64_t* k) const;
  void ensure_inverses() const;
};

std::shared_ptr<BallIndex> generate_ball(const GroupPresentation& p, int radius,
                                         std::size_t cap = BallIndex::kDefaultCap);

// process-wide cache so repeated sweeps share the heavy balls
std::shared_ptr<BallIndex> cached_ball(const GroupPresentation& p, int radius,
                                       std::size_t cap = BallIndex::kDefaultCap);

}  // namespace hcs
