#include "hullcheck/status.hpp"

#include <cmath>

#include "hullcheck/error.hpp"
#include "hullcheck/simplex.hpp"

namespace hullcheck {

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Overlap: return "Overlap";
    case Status::QuasiSeparation: return "QuasiSeparation";
    case Status::CompleteSeparation: return "CompleteSeparation";
    case Status::NoMixedResults: return "NoMixedResults";
  }
  return "Unknown";
}

int exit_code(Status s) noexcept {
  switch (s) {
    case Status::Overlap: return 0;
    case Status::QuasiSeparation: return 2;
    case Status::CompleteSeparation: return 3;
    case Status::NoMixedResults: return 4;
  }
  return 1;
}

OverlapReport classify(const Dataset& data, double eps, const SolverOptions& opts) {
  OverlapReport rep;
  rep.epsilon = eps;
  if (data.n_case() == 0 || data.n_noncase() == 0) {
    rep.status = Status::NoMixedResults;
    return rep;
  }
  PairDeltas P = PairDeltas::from(data);
  const int r = P.rank();
  ELSolution sol = el_solve(P, opts);
  const double w = sol.w_tot;
  rep.rank = r;
  rep.w_tot = w;
  if (w < eps)
    rep.status = Status::CompleteSeparation;
  else if (r == data.dim() && w > 1.0 - eps)
    rep.status = Status::Overlap;
  else
    rep.status = Status::QuasiSeparation;
  if (rep.status == Status::Overlap) rep.marginals = marginal_weights(sol, data, eps);
  rep.solution = std::move(sol);
  return rep;
}

int span_dimension(const Dataset& data) { return affine_span(data.x()).dim(); }

Dataset project_to_span(const Dataset& data) {
  AffineSpan span = affine_span(data.x());
  return data.with_x(span.coordinates(data.x()));
}

Status classify_in_span(const Dataset& data, double eps) {
  return classify(project_to_span(data), eps).status;
}

// ---- LP oracles ------------------------------------------------------------

namespace {

// Columns: tau+, tau-, then one per displacement row. Rows: the weight total
// and the d moment conditions. tau = N t is the common weight floor scaled by
// the row count.
class InteriorProblem final : public lp::Problem {
 public:
  explicit InteriorProblem(const DeltaSource& D) : D_(D), d_(D.dim()), N_(D.size()) {
    rhs_ = Vector::Zero(d_ + 1);
    rhs_[0] = 1.0;
    std::vector<double> ones(static_cast<std::size_t>(N_), 1.0);
    Vector sum;
    D_.accumulate(ones, ones, sum, nullptr);
    mean_ = sum / static_cast<double>(N_);
  }

  Index rows() const override { return d_ + 1; }
  Index cols() const override { return N_ + 2; }
  const Vector& rhs() const override { return rhs_; }
  double cost(Index j) const override { return j == 0 ? -1.0 : j == 1 ? 1.0 : 0.0; }

  void column(Index j, Eigen::Ref<Vector> out) const override {
    if (j < 2) {
      double s = j == 0 ? 1.0 : -1.0;
      out[0] = s;
      out.tail(d_) = s * mean_;
      return;
    }
    out[0] = 1.0;
    Vector r(d_);
    D_.row(j - 2, r);
    out.tail(d_) = r;
  }

  std::optional<Index> first_improving(const Vector& y, const std::vector<char>& basic, double tol,
                                       bool phase_one) const override {
    for (Index j = 0; j < 2; ++j) {
      if (basic[j]) continue;
      double s = j == 0 ? 1.0 : -1.0;
      double rc = (phase_one ? 0.0 : cost(j)) - s * (y[0] + y.tail(d_).dot(mean_));
      if (rc < -tol) return j;
    }
    Vector yr = y.tail(d_);
    D_.project(yr, proj_);
    for (Index k = 0; k < N_; ++k) {
      if (basic[k + 2]) continue;
      if (-(y[0] + proj_[k]) < -tol) return k + 2;
    }
    return std::nullopt;
  }

 private:
  const DeltaSource& D_;
  Index d_, N_;
  Vector rhs_, mean_;
  mutable std::vector<double> proj_;
};

bool interior_from(const DeltaSource& D, int rank, double tol) {
  InteriorProblem prob(D);
  lp::Solution s = lp::solve(prob);
  if (s.outcome == lp::Outcome::Infeasible) return false;
  if (s.outcome != lp::Outcome::Optimal)
    throw Error(ErrorCode::InvalidArgument, "interior LP did not reach an optimum");
  double tau = s.value(0) - s.value(1);
  return tau > tol && rank == D.dim();
}

Vector unit_scale(const Vector& colmax) {
  Vector s(colmax.size());
  for (Index j = 0; j < s.size(); ++j) s[j] = colmax[j] > 0.0 ? 1.0 / colmax[j] : 1.0;
  return s;
}

}  // namespace

bool origin_interior_lp(const Matrix& delta, double tol) {
  if (delta.rows() == 0) throw Error(ErrorCode::InvalidArgument, "empty displacement matrix");
  if (delta.cols() == 0) return true;
  Vector s = unit_scale(delta.cwiseAbs().colwise().maxCoeff().transpose());
  DenseDeltas D(delta * s.asDiagonal());
  return interior_from(D, matrix_rank(delta), tol);
}

bool origin_interior_lp(const Dataset& data, double tol) {
  PairDeltas P = PairDeltas::from(data);
  if (data.dim() == 0) return true;
  PairDeltas S = P.scaled(unit_scale(P.column_max_abs()));
  return interior_from(S, P.rank(), tol);
}

SeparationVerdict lp_separation(const Dataset& data, double tol) {
  if (data.n_case() == 0 || data.n_noncase() == 0)
    throw Error(ErrorCode::NoMixedResults, "data lack either Cases or Non-Cases");
  const Index n = data.n(), d = data.dim();
  // extended rows (1, x) centred and scaled, signed by response
  RowVector mean = data.x().colwise().mean();
  Matrix xc = data.x().rowwise() - mean;
  Vector s = d ? unit_scale(xc.cwiseAbs().colwise().maxCoeff().transpose()) : Vector();
  Matrix A(n, d + 1);
  for (Index i = 0; i < n; ++i) {
    double sign = data.y()[i] == 1 ? 1.0 : -1.0;
    A(i, 0) = sign;
    for (Index j = 0; j < d; ++j) A(i, j + 1) = sign * xc(i, j) * s[j];
  }
  // The bounded primal max c.b, A b >= 0, |b| <= 1 is solved through its
  // dual: min sum(p + q) with -A^T mu + p - q = c; b comes back as the duals.
  const Index m = d + 1;
  Vector c = A.colwise().sum().transpose();
  Matrix M(m, n + 2 * m);
  M.leftCols(n) = -A.transpose();
  M.middleCols(n, m).setIdentity();
  M.rightCols(m) = -Matrix::Identity(m, m);
  Vector cost = Vector::Zero(n + 2 * m);
  cost.tail(2 * m).setOnes();
  lp::DenseProblem prob(std::move(M), c, std::move(cost));
  lp::Solution sol = lp::solve(prob);
  if (sol.outcome != lp::Outcome::Optimal)
    throw Error(ErrorCode::InvalidArgument, "separation LP did not reach an optimum");

  SeparationVerdict v;
  v.lp_value = sol.objective;
  const int rank = extended_rank(data.x()) - 1;
  v.separated = v.lp_value > tol || rank < d;
  v.direction = Vector::Zero(d);
  if (v.lp_value > tol) {
    const Vector& b = sol.duals;
    for (Index j = 0; j < d; ++j) v.direction[j] = b[j + 1] * s[j];
    v.intercept = b[0] - v.direction.dot(mean.transpose());
    double top = d ? v.direction.cwiseAbs().maxCoeff() : 0.0;
    if (top > 0.0) {
      v.direction /= top;
      v.intercept /= top;
    }
  }
  return v;
}

}  // namespace hullcheck
