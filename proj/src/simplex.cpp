#include "hullcheck/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hullcheck/error.hpp"

namespace hullcheck::lp {

std::optional<Index> Problem::first_improving(const Vector& y, const std::vector<char>& basic,
                                              double tol, bool phase_one) const {
  Vector a(rows());
  for (Index j = 0; j < cols(); ++j) {
    if (basic[j]) continue;
    column(j, a);
    double rc = (phase_one ? 0.0 : cost(j)) - y.dot(a);
    if (rc < -tol) return j;
  }
  return std::nullopt;
}

DenseProblem::DenseProblem(Matrix a, Vector b, Vector c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_.rows() != b_.size() || a_.cols() != c_.size())
    throw Error(ErrorCode::BadShape, "LP dimensions disagree");
}

double Solution::value(Index j) const {
  for (std::size_t r = 0; r < basis.size(); ++r)
    if (basis[r] == j) return basic_values[static_cast<Index>(r)];
  return 0.0;
}

namespace {

// Columns >= n are artificials, one per row, with sign flips folded in.
class Tableau {
 public:
  Tableau(const Problem& p, const Options& o) : p_(p), opts_(o), m_(p.rows()), n_(p.cols()) {
    sign_ = Vector::Ones(m_);
    b_ = p.rhs();
    for (Index i = 0; i < m_; ++i)
      if (b_[i] < 0) {
        sign_[i] = -1.0;
        b_[i] = -b_[i];
      }
    basic_.assign(static_cast<std::size_t>(n_), 0);
    basis_.resize(static_cast<std::size_t>(m_));
    for (Index i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  void col(Index j, Eigen::Ref<Vector> out) const {
    if (j >= n_) {
      out.setZero();
      out[j - n_] = 1.0;
      return;
    }
    p_.column(j, out);
    out = out.cwiseProduct(sign_);
  }

  double cost(Index j, bool phase_one) const {
    if (j >= n_) return phase_one ? 1.0 : 0.0;
    return phase_one ? 0.0 : p_.cost(j);
  }

  void factor() {
    Matrix B(m_, m_);
    for (Index r = 0; r < m_; ++r) col(basis_[r], B.col(r));
    lu_.compute(B);
    xb_ = lu_.solve(b_);
  }

  Vector duals(bool phase_one) const {
    Vector cb(m_);
    for (Index r = 0; r < m_; ++r) cb[r] = cost(basis_[r], phase_one);
    return lu_.transpose().solve(cb);
  }

  // Returns false when the problem is unbounded along column e.
  bool pivot_in(Index e) {
    Vector a(m_);
    col(e, a);
    Vector dir = lu_.solve(a);
    double best = std::numeric_limits<double>::infinity();
    for (Index r = 0; r < m_; ++r)
      if (dir[r] > opts_.pivot_tol) best = std::min(best, std::max(0.0, xb_[r]) / dir[r]);
    Index leave = -1;
    for (Index r = 0; r < m_; ++r) {
      if (dir[r] <= opts_.pivot_tol) continue;
      double ratio = std::max(0.0, xb_[r]) / dir[r];
      if (ratio <= best + 1e-12 * (1.0 + best) && (leave < 0 || basis_[r] < basis_[leave])) leave = r;
    }
    if (leave < 0) return false;
    set_basic(basis_[leave], false);
    basis_[leave] = e;
    set_basic(e, true);
    return true;
  }

  void set_basic(Index j, bool v) {
    if (j < n_) basic_[j] = v ? 1 : 0;
  }

  // Bland iterations until no improving column remains.
  Outcome run(bool phase_one, long& iter) {
    for (;;) {
      factor();
      if (++iter > opts_.max_iter) return Outcome::IterationLimit;
      Vector y = duals(phase_one);
      // in the folded problem column j is sign .* A_j, so y_folded . (sign .* A_j)
      // equals (sign .* y_folded) . A_j
      Vector y_orig = y.cwiseProduct(sign_);
      auto e = p_.first_improving(y_orig, basic_, opts_.cost_tol, phase_one);
      if (!e) return Outcome::Optimal;
      if (!pivot_in(*e)) return Outcome::Unbounded;
    }
  }

  // Pivots zero-level artificials out of the basis where a structural column
  // can replace them.
  void drive_out_artificials() {
    factor();
    Vector a(m_);
    for (Index r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      Vector er = Vector::Zero(m_);
      er[r] = 1.0;
      Vector row = lu_.transpose().solve(er);  // row r of B^-1
      for (Index j = 0; j < n_; ++j) {
        if (basic_[j]) continue;
        col(j, a);
        if (std::abs(row.dot(a)) > 1e-7) {
          basis_[r] = j;
          basic_[j] = 1;
          factor();
          break;
        }
      }
    }
  }

  double artificial_sum() const {
    double s = 0.0;
    for (Index r = 0; r < m_; ++r)
      if (basis_[r] >= n_) s += std::max(0.0, xb_[r]);
    return s;
  }

  Solution finish(Outcome out) {
    Solution s;
    s.outcome = out;
    factor();
    s.basis = basis_;
    s.basic_values = xb_;
    s.duals = duals(false).cwiseProduct(sign_);
    s.objective = 0.0;
    for (Index r = 0; r < m_; ++r) s.objective += cost(basis_[r], false) * xb_[r];
    return s;
  }

 private:
  const Problem& p_;
  Options opts_;
  Index m_, n_;
  Vector sign_, b_, xb_;
  std::vector<char> basic_;
  std::vector<Index> basis_;
  Eigen::PartialPivLU<Matrix> lu_;
};

}  // namespace

Solution solve(const Problem& problem, const Options& opts) {
  Tableau t(problem, opts);
  long iter = 0;
  Outcome o = t.run(true, iter);
  if (o == Outcome::IterationLimit) return t.finish(o);
  const double scale = std::max(1.0, problem.rhs().cwiseAbs().maxCoeff());
  if (t.artificial_sum() > opts.feasibility_tol * scale) {
    Solution s;
    s.outcome = Outcome::Infeasible;
    return s;
  }
  t.drive_out_artificials();
  o = t.run(false, iter);
  return t.finish(o);
}

}  // namespace hullcheck::lp
