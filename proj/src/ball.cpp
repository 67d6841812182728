#include "hcs/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>

#include "hcs/parallel.hpp"

namespace hcs {

namespace {

constexpr std::int64_t kEntryCap = (std::int64_t)1 << 30;  // int64 matmul safety
constexpr double kRoundScale = 1e8;  // floating-mode dedup keys
constexpr double kAuditTol = 1e-7;   // full-precision collision audit

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

bool is_integral(const Eigen::MatrixXd& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::round(m(i, j))) > 1e-12) return false;
  return true;
}

}  // namespace

GroupPresentation GroupPresentation::sanov() {
  GroupPresentation p;
  p.name = "sanov";
  p.n = 2;
  p.generators = {mat2(1, 2, 0, 1), mat2(1, -2, 0, 1), mat2(1, 0, 2, 1),
                  mat2(1, 0, -2, 1)};
  p.gen_names = {"a", "A", "b", "B"};
  return p;
}

GroupPresentation GroupPresentation::sl2z() {
  GroupPresentation p;
  p.name = "sl2z";
  p.n = 2;
  p.generators = {mat2(0, -1, 1, 0), mat2(0, 1, -1, 0), mat2(1, 1, 0, 1),
                  mat2(1, -1, 0, 1)};
  p.gen_names = {"s", "S", "t", "T"};
  return p;
}

GroupPresentation GroupPresentation::sl3z() {
  GroupPresentation p;
  p.name = "sl3z";
  p.n = 3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (int sign : {1, -1}) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
        m(i, j) = sign;
        p.generators.push_back(m);
        p.gen_names.push_back("e" + std::to_string(i + 1) +
                              std::to_string(j + 1) +
                              (sign > 0 ? "" : "'"));
      }
    }
  return p;
}

GroupPresentation GroupPresentation::by_name(const std::string& name) {
  if (name == "sanov") return sanov();
  if (name == "sl2z") return sl2z();
  if (name == "sl3z") return sl3z();
  raise(ErrorCode::InvalidArgument, "unknown presentation '" + name + "'");
}

GroupPresentation GroupPresentation::from_generators(
    const std::string& name, std::vector<Eigen::MatrixXd> gens) {
  if (gens.empty()) raise(ErrorCode::InvalidArgument, "no generators");
  GroupPresentation p;
  p.name = name;
  p.n = (int)gens[0].rows();
  p.exact_integer = true;
  std::vector<Eigen::MatrixXd> closed;
  int idx = 0;
  for (auto& g : gens) {
    GroupElement ge(g);  // validates
    closed.push_back(g);
    p.gen_names.push_back("g" + std::to_string(idx));
    closed.push_back(ge.inverse().mat());
    p.gen_names.push_back("g" + std::to_string(idx) + "'");
    ++idx;
    if (!is_integral(g)) p.exact_integer = false;
  }
  if (p.exact_integer)
    for (auto& g : closed)
      if (!is_integral(g)) p.exact_integer = false;
  for (auto& g : closed) p.generators.push_back(g);
  return p;
}

// ---- BallIndex -------------------------------------------------------------

Eigen::MatrixXd BallIndex::matrix(std::size_t i) const {
  const int nn = pres_.n;
  Eigen::MatrixXd m(nn, nn);
  if (pres_.exact_integer) {
    for (int r = 0; r < nn; ++r)
      for (int c = 0; c < nn; ++c)
        m(r, c) = (double)ent_[i * stride_ + r * nn + c];
  } else {
    for (int r = 0; r < nn; ++r)
      for (int c = 0; c < nn; ++c) m(r, c) = fent_[i * stride_ + r * nn + c];
  }
  return m;
}

std::string BallIndex::word(std::size_t i) const {
  if (i == 0) return "e";
  std::string w;
  while (i != 0) {
    w = pres_.gen_names[via_gen_[i]] + w;
    i = parent_[i];
  }
  return w;
}

std::size_t BallIndex::sphere_end(int r) const {
  if (r < 0) return 0;
  if (r >= (int)sphere_end_.size()) return count_;
  return sphere_end_[r];
}

std::ptrdiff_t BallIndex::find_key(const std::int64_t* k) const {
  const int s = stride_;
  auto cmp = [&](std::uint32_t a, const std::int64_t* kb) {
    const std::int64_t* ka = keyp(a);
    for (int t = 0; t < s; ++t) {
      if (ka[t] < kb[t]) return true;
      if (ka[t] > kb[t]) return false;
    }
    return false;
  };
  auto it = std::lower_bound(order_.begin(), order_.end(), k, cmp);
  if (it == order_.end()) return -1;
  const std::int64_t* ka = keyp(*it);
  for (int t = 0; t < s; ++t)
    if (ka[t] != k[t]) return -1;
  return (std::ptrdiff_t)*it;
}

std::ptrdiff_t BallIndex::index_of(const Eigen::MatrixXd& m) const {
  const int nn = pres_.n;
  std::int64_t k[9];
  if (pres_.exact_integer) {
    for (int r = 0; r < nn; ++r)
      for (int c = 0; c < nn; ++c) {
        const double v = m(r, c);
        if (std::abs(v - std::round(v)) > 1e-6) return -1;
        k[r * nn + c] = (std::int64_t)std::llround(v);
      }
  } else {
    for (int r = 0; r < nn; ++r)
      for (int c = 0; c < nn; ++c)
        k[r * nn + c] = (std::int64_t)std::llround(m(r, c) * kRoundScale);
  }
  const std::ptrdiff_t idx = find_key(k);
  if (idx >= 0 && !pres_.exact_integer) {
    for (int t = 0; t < stride_; ++t)
      if (std::abs(fent_[idx * stride_ + t] -
                   m(t / nn, t % nn)) > kAuditTol)
        raise(ErrorCode::KeyCollision, "floating lookup collision audit failed");
  }
  return idx;
}

std::ptrdiff_t BallIndex::index_of_product(std::size_t i, std::size_t j) const {
  const int nn = pres_.n;
  if (pres_.exact_integer) {
    std::int64_t prod[9];
    const std::int64_t* a = ent_.data() + i * stride_;
    const std::int64_t* b = ent_.data() + j * stride_;
    for (int r = 0; r < nn; ++r)
      for (int c = 0; c < nn; ++c) {
        std::int64_t acc = 0;
        for (int t = 0; t < nn; ++t) acc += a[r * nn + t] * b[t * nn + c];
        prod[r * nn + c] = acc;
      }
    return find_key(prod);
  }
  return index_of(matrix(i) * matrix(j));
}

std::ptrdiff_t BallIndex::index_of_invprod(std::size_t i, std::size_t j) const {
  return index_of_product(inverse_index(i), j);
}

std::ptrdiff_t BallIndex::index_of_int_left(const std::int64_t* a,
                                            std::size_t j) const {
  const int nn = pres_.n;
  std::int64_t prod[9];
  const std::int64_t* b = ent_.data() + j * stride_;
  for (int r = 0; r < nn; ++r)
    for (int c = 0; c < nn; ++c) {
      std::int64_t acc = 0;
      for (int t = 0; t < nn; ++t) acc += a[r * nn + t] * b[t * nn + c];
      prod[r * nn + c] = acc;
    }
  return find_key(prod);
}

void BallIndex::ensure_inverses() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!inv_.empty()) return;
  const int nn = pres_.n;
  std::vector<std::uint32_t> inv(count_);
  bool ok = true;
  par::for_each(count_, ExecConfig{}, [&](std::size_t i) {
    Eigen::MatrixXd m = matrix(i);
    Eigen::MatrixXd mi(nn, nn);
    if (nn == 2) {
      mi << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    } else {
      mi = m.inverse();
      if (pres_.exact_integer)
        for (int r = 0; r < nn; ++r)
          for (int c = 0; c < nn; ++c) mi(r, c) = std::round(mi(r, c));
    }
    const std::ptrdiff_t idx = index_of(mi);
    if (idx < 0) ok = false;
    else inv[i] = (std::uint32_t)idx;
  });
  if (!ok)
    raise(ErrorCode::SupportNotSymmetric,
          "an inverse fell outside the ball (inconsistent index)");
  inv_ = std::move(inv);
}

std::size_t BallIndex::inverse_index(std::size_t i) const {
  if (inv_.empty()) ensure_inverses();
  return inv_[i];
}

const std::vector<double>& BallIndex::lengths() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!L_.empty()) return L_;
  std::vector<double> L(count_);
  const int nn = pres_.n;
  if (nn == 2) {
    // closed form: cosh t = ||g||_F^2 / 2, L = t / sqrt(2)
    par::for_each(count_, ExecConfig{}, [&](std::size_t i) {
      double s = 0;
      if (pres_.exact_integer)
        for (int t = 0; t < 4; ++t) {
          const double e = (double)ent_[i * 4 + t];
          s += e * e;
        }
      else
        for (int t = 0; t < 4; ++t) {
          const double e = fent_[i * 4 + t];
          s += e * e;
        }
      L[i] = std::acosh(std::max(1.0, 0.5 * s)) / std::sqrt(2.0);
    });
  } else {
    par::for_each(count_, ExecConfig{}, [&](std::size_t i) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix(i));
      Eigen::VectorXd h = svd.singularValues().array().log().matrix();
      h.array() -= h.mean();
      L[i] = h.norm();
    });
  }
  L_ = std::move(L);
  return L_;
}

const std::vector<double>& BallIndex::xi_values() const {
  lengths();  // fill L_ first (cheap, also warms caches)
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!xi_.empty()) return xi_;
  std::vector<double> X(count_);
  const int nn = pres_.n;
  if (nn == 2) {
    par::for_each(count_, ExecConfig{}, [&](std::size_t i) {
      X[i] = xi_sl2_t(L_[i] * std::sqrt(2.0));
    });
  } else {
    // dedup by the Cartan vector: balls repeat H values heavily and the
    // n=3 radial Xi is an adaptive integral
    const Sl3RadialXi xi3;
    std::vector<Eigen::VectorXd> hs(count_);
    par::for_each(count_, ExecConfig{}, [&](std::size_t i) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix(i));
      Eigen::VectorXd h = svd.singularValues().array().log().matrix();
      h.array() -= h.mean();
      hs[i] = h;
    });
    std::map<std::array<long long, 3>, double> cache;
    for (std::size_t i = 0; i < count_; ++i) {
      std::array<long long, 3> key{};
      for (int t = 0; t < 3; ++t) key[t] = std::llround(hs[i][t] * 1e12);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, xi3(ChamberVector(hs[i]))).first;
      X[i] = it->second;
    }
  }
  xi_ = std::move(X);
  return xi_;
}

// ---- generation ------------------------------------------------------------

std::shared_ptr<BallIndex> generate_ball(const GroupPresentation& p, int radius,
                                         std::size_t cap) {
  if (radius < 0) raise(ErrorCode::InvalidArgument, "radius >= 0");
  auto ball = std::make_shared<BallIndex>();
  BallIndex& B = *ball;
  B.pres_ = p;
  B.radius_ = radius;
  const int nn = p.n;
  const int stride = nn * nn;
  B.stride_ = stride;
  const bool exact = p.exact_integer;

  // generator matrices in both representations
  const std::size_t ngen = p.generators.size();
  std::vector<std::int64_t> geni(ngen * stride);
  std::vector<double> genf(ngen * stride);
  for (std::size_t g = 0; g < ngen; ++g)
    for (int r = 0; r < nn; ++r)
      for (int c = 0; c < nn; ++c) {
        genf[g * stride + r * nn + c] = p.generators[g](r, c);
        geni[g * stride + r * nn + c] =
            (std::int64_t)std::llround(p.generators[g](r, c));
      }

  auto push_entries = [&](const std::int64_t* ei, const double* ef) {
    if (exact) {
      for (int t = 0; t < stride; ++t) {
        if (std::abs(ei[t]) > kEntryCap)
          raise(ErrorCode::Overflow, "ball entries exceed the int64 safety cap");
        B.ent_.push_back(ei[t]);
      }
    } else {
      for (int t = 0; t < stride; ++t) {
        B.fent_.push_back(ef[t]);
        B.key_.push_back((std::int64_t)std::llround(ef[t] * kRoundScale));
      }
    }
  };

  // identity
  {
    std::int64_t id_i[9] = {0};
    double id_f[9] = {0};
    for (int r = 0; r < nn; ++r) {
      id_i[r * nn + r] = 1;
      id_f[r * nn + r] = 1.0;
    }
    push_entries(id_i, id_f);
    B.wl_.push_back(0);
    B.parent_.push_back(0);
    B.via_gen_.push_back(0);
    B.count_ = 1;
    B.order_ = {0};
    B.sphere_end_.push_back(1);
  }

  struct Candidate {
    std::int64_t key[9];
    double raw[9];
    std::uint32_t parent;
    std::uint8_t gen;
  };

  auto key_less = [stride](const Candidate& a, const Candidate& b) {
    for (int t = 0; t < stride; ++t) {
      if (a.key[t] < b.key[t]) return true;
      if (a.key[t] > b.key[t]) return false;
    }
    return false;
  };
  auto idx_less = [&B, stride](std::uint32_t a, std::uint32_t b) {
    const std::int64_t* ka = B.keyp(a);
    const std::int64_t* kb = B.keyp(b);
    for (int t = 0; t < stride; ++t) {
      if (ka[t] < kb[t]) return true;
      if (ka[t] > kb[t]) return false;
    }
    return false;
  };

  // frontier expansion in bounded chunks: each chunk is sorted, deduplicated
  // against itself and the growing index, appended, and merged into the
  // key order so later chunks see it
  constexpr std::size_t kChunk = 2'000'000;
  std::size_t level_begin = 0, level_end = 1;
  std::vector<Candidate> cand;
  for (int r = 1; r <= radius; ++r) {
    for (std::size_t chunk_lo = level_begin; chunk_lo < level_end;
         chunk_lo += std::max<std::size_t>(1, kChunk / ngen)) {
      const std::size_t chunk_hi =
          std::min(level_end, chunk_lo + std::max<std::size_t>(1, kChunk / ngen));
      cand.clear();
      cand.reserve((chunk_hi - chunk_lo) * ngen);
      for (std::size_t i = chunk_lo; i < chunk_hi; ++i) {
        for (std::size_t g = 0; g < ngen; ++g) {
          Candidate c;
          c.parent = (std::uint32_t)i;
          c.gen = (std::uint8_t)g;
          if (exact) {
            const std::int64_t* a = B.ent_.data() + i * stride;
            const std::int64_t* b = geni.data() + g * stride;
            for (int rr = 0; rr < nn; ++rr)
              for (int cc = 0; cc < nn; ++cc) {
                std::int64_t acc = 0;
                for (int t = 0; t < nn; ++t)
                  acc += a[rr * nn + t] * b[t * nn + cc];
                c.key[rr * nn + cc] = acc;
              }
          } else {
            const double* a = B.fent_.data() + i * stride;
            const double* b = genf.data() + g * stride;
            for (int rr = 0; rr < nn; ++rr)
              for (int cc = 0; cc < nn; ++cc) {
                double acc = 0;
                for (int t = 0; t < nn; ++t)
                  acc += a[rr * nn + t] * b[t * nn + cc];
                c.raw[rr * nn + cc] = acc;
                c.key[rr * nn + cc] =
                    (std::int64_t)std::llround(acc * kRoundScale);
              }
          }
          cand.push_back(c);
        }
      }
      std::sort(cand.begin(), cand.end(), key_less);

      std::vector<std::uint32_t> fresh;
      for (std::size_t i = 0; i < cand.size(); ++i) {
        if (i > 0 && !key_less(cand[i - 1], cand[i])) {
          // duplicate key inside the chunk; audit in floating mode
          if (!exact) {
            for (int t = 0; t < stride; ++t)
              if (std::abs(cand[i].raw[t] - cand[i - 1].raw[t]) > kAuditTol)
                raise(ErrorCode::KeyCollision,
                      "two distinct elements share a rounded key");
          }
          continue;
        }
        if (B.find_key(cand[i].key) >= 0) continue;
        if (B.count_ >= cap)
          raise(ErrorCode::BallOverflow,
                "ball exceeds the configured cap of " + std::to_string(cap));
        push_entries(cand[i].key, cand[i].raw);
        B.wl_.push_back((std::uint16_t)r);
        B.parent_.push_back(cand[i].parent);
        B.via_gen_.push_back(cand[i].gen);
        fresh.push_back((std::uint32_t)B.count_);
        B.count_++;
      }
      std::vector<std::uint32_t> merged(B.order_.size() + fresh.size());
      std::merge(B.order_.begin(), B.order_.end(), fresh.begin(), fresh.end(),
                 merged.begin(), idx_less);
      B.order_ = std::move(merged);
    }
    B.sphere_end_.push_back(B.count_);
    level_begin = level_end;
    level_end = B.count_;
    if (level_begin == level_end) {
      // group exhausted; remaining spheres are empty
      while ((int)B.sphere_end_.size() <= radius)
        B.sphere_end_.push_back(B.count_);
      break;
    }
  }
  return ball;
}

std::shared_ptr<BallIndex> cached_ball(const GroupPresentation& p, int radius,
                                       std::size_t cap) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::shared_ptr<BallIndex>> reg;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p.name, radius);
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;
  auto b = generate_ball(p, radius, cap);
  reg[key] = b;
  return b;
}

}  // namespace hcs
