#include "hullcheck/linalg.hpp"

namespace hullcheck {

namespace {

Eigen::BDCSVD<Matrix> svd_of(const Matrix& m, unsigned opts) { return Eigen::BDCSVD<Matrix>(m, opts); }

int count_above(const Vector& s, double tol) {
  if (s.size() == 0 || !(s[0] > 0.0)) return 0;
  int r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s[i] > tol * s[0]) ++r;
  return r;
}

}  // namespace

int matrix_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  return count_above(svd_of(m, 0).singularValues(), tol);
}

Matrix row_space_basis(const Matrix& m, double tol) {
  if (m.size() == 0) return Matrix(m.cols(), 0);
  auto svd = svd_of(m, Eigen::ComputeFullV);
  int r = count_above(svd.singularValues(), tol);
  return svd.matrixV().leftCols(r);
}

Matrix AffineSpan::coordinates(const Matrix& points) const {
  return (points.rowwise() - origin) * basis;
}

AffineSpan affine_span(const Matrix& points, double tol) {
  AffineSpan span;
  span.origin = points.rows() ? RowVector(points.colwise().mean()) : RowVector::Zero(points.cols());
  Matrix centred = points.rowwise() - span.origin;
  span.basis = row_space_basis(centred, tol);
  return span;
}

}  // namespace hullcheck
