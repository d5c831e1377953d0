#include "hullcheck/forms.hpp"

#include <algorithm>
#include <cmath>

#include "hullcheck/error.hpp"
#include "hullcheck/minimal.hpp"

namespace hullcheck {

Matrix unit_simplex(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "simplex dimension must be >= 0");
  if (n == 0) return Matrix::Zero(1, 1);
  Matrix m(n + 1, n);
  m.topRows(n).setIdentity();
  m.row(n).setConstant(-1.0);
  return m;
}

namespace {

Dataset two_blocks(const Matrix& cases, const Matrix& noncases, int d1, int d0) {
  const int d = std::max(d1 + d0, 1);
  const Index n1 = cases.rows(), n0 = noncases.rows();
  Matrix x = Matrix::Zero(n1 + n0, d);
  if (d1 > 0) x.block(0, 0, n1, d1) = cases;
  if (d0 > 0) x.block(n1, d1, n0, d0) = noncases;
  std::vector<int> y(static_cast<std::size_t>(n1 + n0), 0);
  std::fill(y.begin(), y.begin() + n1, 1);
  return Dataset::from_rows(std::move(x), std::move(y));
}

Matrix regular_simplex(int k) {
  if (k == 0) return Matrix::Zero(1, 1);
  // Helmert contrasts give an orthonormal basis of the sum-zero subspace
  Matrix h = Matrix::Zero(k + 1, k);
  for (int j = 1; j <= k; ++j) {
    double s = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
    for (int i = 0; i < j; ++i) h(i, j - 1) = s;
    h(j, j - 1) = -j * s;
  }
  return h * std::sqrt((k + 1.0) / k);
}

}  // namespace

Dataset make_standard_type1(int d1, int d0) {
  if (d1 < 0 || d0 < 0) throw Error(ErrorCode::InvalidArgument, "d1 and d0 must be >= 0");
  return two_blocks(unit_simplex(d1), unit_simplex(d0), d1, d0);
}

Dataset make_equidistant(int d1, int d0) {
  if (d1 < 0 || d0 < 0 || d1 + d0 < 1)
    throw Error(ErrorCode::InvalidArgument, "need d1, d0 >= 0 and d1 + d0 >= 1");
  return two_blocks(regular_simplex(d1), regular_simplex(d0), d1, d0);
}

Dataset case_first(const Dataset& data) {
  std::vector<Index> order = data.rows_with(1);
  auto non = data.rows_with(0);
  order.insert(order.end(), non.begin(), non.end());
  return data.subset(order);
}

namespace {

struct Interim {
  Matrix v;
  Marginals m;
};

// Marginals from the span-restricted problem; S and V in the given coordinates.
Interim interim(const Dataset& ordered, double eps) {
  Dataset p = project_to_span(ordered);
  OverlapReport rep = classify(p, eps);
  if (rep.status != Status::Overlap)
    throw Error(ErrorCode::NotOverlapping, "interim form needs overlapping data");
  Interim out;
  out.m = *rep.marginals;
  out.m.S = out.m.u1.transpose() * ordered.case_matrix();
  out.m.F = out.m.u0.transpose() * ordered.noncase_matrix();
  Vector u(ordered.n());
  u << out.m.u1, out.m.u0;
  out.v = u.asDiagonal() * (ordered.x().rowwise() - out.m.S);
  return out;
}

}  // namespace

Matrix interim_form(const Dataset& data, double eps) { return interim(case_first(data), eps).v; }

StandardForm to_standard_form(const Dataset& data, double eps) {
  Dataset ordered = case_first(data);
  const int d_eff = span_dimension(ordered);
  if (ordered.n() != d_eff + 2 || !verify_minimal(ordered, eps))
    throw Error(ErrorCode::NotTypeI, "data are not a Type I configuration");
  if (d_eff < ordered.dim()) ordered = project_to_span(ordered);

  Interim im = interim(ordered, eps);
  StandardForm sf;
  sf.d1 = static_cast<int>(ordered.n_case()) - 1;
  sf.d0 = static_cast<int>(ordered.n_noncase()) - 1;
  if (d_eff == 0) {
    sf.lambda = Matrix::Zero(2, 1);
    sf.u1 = im.m.u1;
    sf.u0 = im.m.u0;
    return sf;
  }
  const Index n = ordered.n(), n1 = ordered.n_case();
  Matrix vminus(d_eff, d_eff);
  for (Index i = 0, r = 0; i < n; ++i)
    if (i != n1 - 1 && i != n - 1) vminus.row(r++) = im.v.row(i);
  Eigen::FullPivLU<Matrix> lu(vminus);
  if (lu.rank() < d_eff) throw Error(ErrorCode::SingularVminus, "V minus is singular");
  sf.lambda = im.v * lu.inverse();
  OverlapReport rep = classify(Dataset(sf.lambda, ordered.y(), ordered.rid()), eps);
  if (rep.status != Status::Overlap) throw Error(ErrorCode::NotTypeI, "standard form lost overlap");
  sf.u1 = rep.marginals->u1;
  sf.u0 = rep.marginals->u0;
  return sf;
}

}  // namespace hullcheck
