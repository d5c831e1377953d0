#pragma once

#include <span>
#include <vector>

#include "hullcheck/dataset.hpp"
#include "hullcheck/linalg.hpp"

namespace hullcheck {

/// Read-only view of a weighted displacement set. Implementations either
/// hold the rows densely or derive them from the two predictor groups.
class DeltaSource {
 public:
  virtual ~DeltaSource() = default;

  virtual Index size() const = 0;
  virtual Index dim() const = 0;
  virtual double weight(Index k) const = 0;
  virtual void row(Index k, Eigen::Ref<Vector> out) const = 0;

  /// out[k] = y . delta_k for every k.
  virtual void project(const Vector& y, std::vector<double>& out) const = 0;

  /// grad = sum g[k] delta_k; hess (if non-null) = sum h[k] delta_k delta_k^T.
  virtual void accumulate(std::span<const double> g, std::span<const double> h,
                          Vector& grad, Matrix* hess) const = 0;

  double total_weight() const;
};

/// Rows held in a dense matrix.
class DenseDeltas final : public DeltaSource {
 public:
  explicit DenseDeltas(Matrix delta, std::vector<double> weights = {});

  Index size() const override { return delta_.rows(); }
  Index dim() const override { return delta_.cols(); }
  double weight(Index k) const override { return weights_.empty() ? 1.0 : weights_[k]; }
  void row(Index k, Eigen::Ref<Vector> out) const override { out = delta_.row(k).transpose(); }
  void project(const Vector& y, std::vector<double>& out) const override;
  void accumulate(std::span<const double> g, std::span<const double> h, Vector& grad,
                  Matrix* hess) const override;

  const Matrix& matrix() const { return delta_; }

 private:
  Matrix delta_;
  std::vector<double> weights_;
};

/// Rows X1_i - X0_j generated on demand in Case-major order, weights
/// c1_i * c0_j. Memory is O(n) rather than O(n1 n0).
class PairDeltas final : public DeltaSource {
 public:
  PairDeltas(Matrix cases, Matrix noncases, std::vector<double> case_counts = {},
             std::vector<double> noncase_counts = {});
  static PairDeltas from(const Dataset& data);

  Index size() const override { return x1_.rows() * x0_.rows(); }
  Index dim() const override { return x1_.cols(); }
  double weight(Index k) const override;
  void row(Index k, Eigen::Ref<Vector> out) const override;
  void project(const Vector& y, std::vector<double>& out) const override;
  void accumulate(std::span<const double> g, std::span<const double> h, Vector& grad,
                  Matrix* hess) const override;

  const Matrix& cases() const { return x1_; }
  const Matrix& noncases() const { return x0_; }
  const std::vector<double>& case_counts() const { return c1_; }
  const std::vector<double>& noncase_counts() const { return c0_; }

  /// Per-column max |delta| without materializing the rows.
  Vector column_max_abs() const;
  /// Rank of the displacement rows via the n-row matrix spanning the same space.
  int rank(double tol = kRankTolerance) const;
  PairDeltas scaled(const Vector& column_scale) const;

 private:
  Matrix x1_;
  Matrix x0_;
  std::vector<double> c1_;
  std::vector<double> c0_;
};

struct LogStar {
  double value;
  double d1;
  double d2;
};

/// Pseudo-logarithm with knot 1/n: ln z above the knot, the C2-matched
/// quadratic below it.
LogStar log_star(double z, double n);

struct SolverOptions {
  int max_iter = 100;
  double decrement_tol = 1e-12;
  double grad_tol = 1e-10;
};

struct ELSolution {
  Vector lambda;
  std::vector<double> weights;  // flattened in pair order
  double w_tot = 0.0;
  int iterations = 0;
  double decrement = 0.0;
  bool converged = false;
};

/// Dual objective f(lambda) = -sum c_k log*(1 + lambda . delta_k, N_eff)
/// with its gradient and Hessian; no preconditioning applied.
struct DualValue {
  double f;
  Vector grad;
  Matrix hess;
};

DualValue el_dual(const DeltaSource& deltas, const Vector& lambda);

/// Damped Newton on the dual, started at lambda = 0. Columns are rescaled to
/// unit max-abs before solving; the returned lambda is in original units.
/// Throws Error(NonFinite) for non-finite input rows.
ELSolution el_solve(const Displacements& d, const SolverOptions& opts = {});
ELSolution el_solve(const PairDeltas& d, const SolverOptions& opts = {});

/// Solver core without preconditioning, for any source.
ELSolution el_solve_raw(const DeltaSource& d, const SolverOptions& opts = {});

struct Marginals {
  Vector u1;
  Vector u0;
  RowVector S;
  RowVector F;
};

/// Row/column sums of the pair weights renormalised by w_tot, and the
/// common points S = u1 X1, F = u0 X0. Throws DegenerateWeights when
/// w_tot <= eps.
Marginals marginal_weights(const ELSolution& sol, const Dataset& data, double eps = 1e-8);
Marginals marginal_weights(const ELSolution& sol, const Displacements& d, const Dataset& data,
                           double eps = 1e-8);

Matrix reconstruct_product_weights(const Vector& u1, const Vector& u0);

}  // namespace hullcheck
