#pragma once

#include <optional>
#include <vector>

#include "hullcheck/linalg.hpp"

namespace hullcheck::lp {

/// Column-generated problem in standard form:
///   minimize c.x  subject to  A x = b,  x >= 0.
/// Columns are produced on request so very wide problems never need A in
/// memory.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  virtual const Vector& rhs() const = 0;
  virtual double cost(Index j) const = 0;
  virtual void column(Index j, Eigen::Ref<Vector> out) const = 0;

  /// Smallest-index nonbasic column whose reduced cost c_j - y.A_j is below
  /// -tol (Bland's entering rule). In phase one every c_j is taken as 0.
  /// The default scans column().
  virtual std::optional<Index> first_improving(const Vector& y, const std::vector<char>& basic,
                                               double tol, bool phase_one) const;
};

/// Problem with an explicit dense A.
class DenseProblem final : public Problem {
 public:
  DenseProblem(Matrix a, Vector b, Vector c);

  Index rows() const override { return a_.rows(); }
  Index cols() const override { return a_.cols(); }
  const Vector& rhs() const override { return b_; }
  double cost(Index j) const override { return c_[j]; }
  void column(Index j, Eigen::Ref<Vector> out) const override { out = a_.col(j); }

 private:
  Matrix a_;
  Vector b_;
  Vector c_;
};

enum class Outcome { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Outcome outcome = Outcome::Infeasible;
  double objective = 0.0;
  std::vector<Index> basis;  // column indices, one per row
  Vector basic_values;
  Vector duals;  // y with y^T B = c_B

  /// Value of column j in the solution (0 when nonbasic).
  double value(Index j) const;
};

struct Options {
  double pivot_tol = 1e-9;
  double cost_tol = 1e-10;
  double feasibility_tol = 1e-9;
  long max_iter = 1000000;
};

/// Two-phase revised simplex, Bland's rule throughout. The basis is
/// refactorised every iteration, which suits problems with few rows.
Solution solve(const Problem& problem, const Options& opts = {});

}  // namespace hullcheck::lp
