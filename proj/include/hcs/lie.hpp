#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hcs/error.hpp"

namespace hcs {

// Tolerances used by the validation invariants.  Defaults target double
// precision with n <= 4 and entry magnitudes up to ~1e6.
struct Tolerances {
  double det_rel = 1e-10;           // |det - 1| <= det_rel * ||g||_F
  double orthogonality = 1e-10;     // ||k^T k - I||_F
  double reconstruction_rel = 1e-9; // ||k1 e^h k2 - g|| / ||g||
  double zero_sum = 1e-10;          // |sum h_i|
};
Tolerances& tolerances();

// Element of SL(n,R), n >= 2.  Validated once on construction.
class GroupElement {
public:
  explicit GroupElement(Eigen::MatrixXd m);
  static GroupElement identity(int n);

  int dim() const { return (int)m_.rows(); }
  const Eigen::MatrixXd& mat() const { return m_; }

  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& o) const;
  bool is_orthogonal() const;

private:
  Eigen::MatrixXd m_;
};

// Point of the closed positive Weyl chamber of sl(n): the log-singular-value
// vector, sorted non-increasing, summing to zero.
class ChamberVector {
public:
  explicit ChamberVector(Eigen::VectorXd v);
  static ChamberVector zero(int n);

  int dim() const { return (int)v_.size(); }
  const Eigen::VectorXd& values() const { return v_; }
  double operator[](int i) const { return v_[i]; }

  // Euclidean norm |H|.  This is the length-function scale used throughout;
  // it differs from the Killing-form norm of sl(n) by the constant sqrt(2n).
  double norm() const { return v_.norm(); }

private:
  Eigen::VectorXd v_;
};

struct CartanTriple {
  GroupElement k1;
  ChamberVector h;
  GroupElement k2;
};

// Root data of sl(n,R): positive roots alpha_ij(H) = H_i - H_j (i<j), all
// with multiplicity one, rho_i = (n+1-2i)/2.
struct RootSystemData {
  int n = 0;
  int dim_a = 0;
  std::vector<std::pair<int, int>> positive_roots;
  Eigen::VectorXd rho;
  int r = 0;  // number of indivisible positive roots = n(n-1)/2
};
RootSystemData make_root_system(int n);

// g = k1 exp(diag(h)) k2 with k1,k2 in SO(n), h the descending
// log-singular-value vector.  SVD with a determinant-sign fix-up.
CartanTriple cartan_decompose(const GroupElement& g);

// Cartan projection H(g) without the K factors.
ChamberVector cartan_projection(const GroupElement& g);

// L(g) = |H(g)| (Euclidean).  Bi-K-invariant, symmetric, subadditive.
double length(const GroupElement& g);

// Log-diagonal of the upper-triangular factor of g = k r (positive
// diagonal).  Sums to zero; equals the Iwasawa a-part in log scale.
Eigen::VectorXd iwasawa_projection(const GroupElement& g);

// <rho, h> in diagonal coordinates.
double rho_pairing(const Eigen::VectorXd& h, const RootSystemData& roots);

// L(g1) + L(g2) - L(g1 g2); contract: >= -1e-9.
double subadditivity_check(const GroupElement& g1, const GroupElement& g2);

}  // namespace hcs
