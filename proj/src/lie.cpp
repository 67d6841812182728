#include "hcs/lie.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace hcs {

Tolerances& tolerances() {
  static Tolerances tol;
  return tol;
}

static void check_finite(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) raise(ErrorCode::NonFinite, "matrix has NaN/Inf entries");
}

GroupElement::GroupElement(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() < 2 || m_.rows() != m_.cols())
    raise(ErrorCode::DimensionMismatch, "GroupElement needs a square matrix, n >= 2");
  check_finite(m_);
  const double det = m_.determinant();
  const double scale = std::max(1.0, m_.norm());
  if (std::abs(det - 1.0) > tolerances().det_rel * scale)
    raise(ErrorCode::DeterminantDrift,
          "determinant " + std::to_string(det) + " drifts from 1");
}

GroupElement GroupElement::identity(int n) {
  return GroupElement(Eigen::MatrixXd::Identity(n, n));
}

GroupElement GroupElement::inverse() const {
  return GroupElement(m_.inverse());
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (dim() != o.dim()) raise(ErrorCode::DimensionMismatch, "dim mismatch in product");
  return GroupElement(m_ * o.m_);
}

bool GroupElement::is_orthogonal() const {
  return (m_.transpose() * m_ - Eigen::MatrixXd::Identity(dim(), dim())).norm() <=
         tolerances().orthogonality;
}

ChamberVector::ChamberVector(Eigen::VectorXd v) : v_(std::move(v)) {
  for (int i = 0; i + 1 < v_.size(); ++i)
    if (v_[i] < v_[i + 1] - 1e-12)
      raise(ErrorCode::InvalidArgument, "chamber vector not sorted non-increasing");
  if (std::abs(v_.sum()) > tolerances().zero_sum * std::max(1.0, v_.norm()))
    raise(ErrorCode::InvalidArgument, "chamber vector does not sum to zero");
}

ChamberVector ChamberVector::zero(int n) {
  return ChamberVector(Eigen::VectorXd::Zero(n));
}

RootSystemData make_root_system(int n) {
  if (n < 2) raise(ErrorCode::DimensionMismatch, "root system needs n >= 2");
  RootSystemData rs;
  rs.n = n;
  rs.dim_a = n - 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rs.positive_roots.emplace_back(i, j);
  rs.r = (int)rs.positive_roots.size();
  rs.rho.resize(n);
  for (int i = 0; i < n; ++i) rs.rho[i] = 0.5 * (n + 1 - 2 * (i + 1));
  return rs;
}

CartanTriple cartan_decompose(const GroupElement& g) {
  const int n = g.dim();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      g.mat(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u = svd.matrixU();
  Eigen::MatrixXd v = svd.matrixV();
  Eigen::VectorXd s = svd.singularValues();
  // det(U) = det(V) for det(g) = 1; if both are -1, flipping the last column
  // of each keeps U S V^T intact because flips commute with the diagonal.
  if (u.determinant() < 0) {
    u.col(n - 1) *= -1.0;
    v.col(n - 1) *= -1.0;
  }
  Eigen::VectorXd h = s.array().log().matrix();
  h.array() -= h.mean();  // remove the fp drift of sum(log sigma) from 0
  return CartanTriple{GroupElement(u), ChamberVector(h),
                      GroupElement(v.transpose())};
}

ChamberVector cartan_projection(const GroupElement& g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.mat());
  Eigen::VectorXd h = svd.singularValues().array().log().matrix();
  h.array() -= h.mean();
  return ChamberVector(h);
}

double length(const GroupElement& g) { return cartan_projection(g).norm(); }

Eigen::VectorXd iwasawa_projection(const GroupElement& g) {
  const int n = g.dim();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g.mat());
  Eigen::VectorXd d = qr.matrixQR().diagonal();
  Eigen::VectorXd h(n);
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(d[i]);
    if (!(a > 0.0) || !std::isfinite(a))
      raise(ErrorCode::NonFinite, "degenerate triangular factor");
    h[i] = std::log(a);
  }
  h.array() -= h.mean();
  return h;
}

double rho_pairing(const Eigen::VectorXd& h, const RootSystemData& roots) {
  if (h.size() != roots.rho.size())
    raise(ErrorCode::DimensionMismatch, "rho_pairing: wrong vector length");
  return roots.rho.dot(h);
}

double subadditivity_check(const GroupElement& g1, const GroupElement& g2) {
  if (g1.dim() != g2.dim())
    raise(ErrorCode::DimensionMismatch, "subadditivity_check: dim mismatch");
  return length(g1) + length(g2) - length(g1 * g2);
}

}  // namespace hcs
