#include "fdsec/linalg.hpp"

namespace fdsec {

CMat orthogonal_complement(const CVec& v) {
  const auto n = v.size();
  if (n < 1) throw DomainError("orthogonal_complement: empty vector");
  if (v.norm() < kDegenerateNorm) return CMat::Identity(n, n).rightCols(n - 1);
  Eigen::HouseholderQR<CMat> qr(v);
  const CMat q = qr.householderQ() * CMat::Identity(n, n);
  return q.rightCols(n - 1);
}

CVec any_orthogonal_unit(const CVec& v) {
  if (v.size() < 2) throw DomainError("any_orthogonal_unit: need at least two dimensions");
  return orthogonal_complement(v).col(0);
}

CVec project_out(const CVec& v, const CVec& x) {
  const double vv = v.squaredNorm();
  if (vv < kDegenerateNorm * kDegenerateNorm) return x;
  return x - v * (v.dot(x) / vv);
}

}  // namespace fdsec
