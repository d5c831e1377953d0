#include "hullcheck/elcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hullcheck/error.hpp"

namespace hullcheck {

double DeltaSource::total_weight() const {
  double s = 0.0;
  for (Index k = 0; k < size(); ++k) s += weight(k);
  return s;
}

// ---- dense rows ------------------------------------------------------------

DenseDeltas::DenseDeltas(Matrix delta, std::vector<double> weights)
    : delta_(std::move(delta)), weights_(std::move(weights)) {
  if (!weights_.empty() && static_cast<Index>(weights_.size()) != delta_.rows())
    throw Error(ErrorCode::BadShape, "weight count does not match displacement rows");
}

void DenseDeltas::project(const Vector& y, std::vector<double>& out) const {
  out.resize(static_cast<std::size_t>(delta_.rows()));
  Eigen::Map<Vector>(out.data(), delta_.rows()) = delta_ * y;
}

void DenseDeltas::accumulate(std::span<const double> g, std::span<const double> h, Vector& grad,
                             Matrix* hess) const {
  const Index N = delta_.rows();
  Eigen::Map<const Vector> gv(g.data(), N);
  grad = delta_.transpose() * gv;
  if (hess) {
    Eigen::Map<const Vector> hv(h.data(), N);
    *hess = delta_.transpose() * hv.asDiagonal() * delta_;
  }
}

// ---- pairs generated from the two groups -----------------------------------

PairDeltas::PairDeltas(Matrix cases, Matrix noncases, std::vector<double> case_counts,
                       std::vector<double> noncase_counts)
    : x1_(std::move(cases)),
      x0_(std::move(noncases)),
      c1_(std::move(case_counts)),
      c0_(std::move(noncase_counts)) {
  if (x1_.cols() != x0_.cols()) throw Error(ErrorCode::BadShape, "group column counts differ");
  if (c1_.empty()) c1_.assign(static_cast<std::size_t>(x1_.rows()), 1.0);
  if (c0_.empty()) c0_.assign(static_cast<std::size_t>(x0_.rows()), 1.0);
  if (static_cast<Index>(c1_.size()) != x1_.rows() || static_cast<Index>(c0_.size()) != x0_.rows())
    throw Error(ErrorCode::BadShape, "count vector length mismatch");
}

PairDeltas PairDeltas::from(const Dataset& data) {
  auto cases = data.rows_with(1);
  auto non = data.rows_with(0);
  if (cases.empty() || non.empty())
    throw Error(ErrorCode::NoMixedResults, "data lack either Cases or Non-Cases");
  std::vector<double> c1, c0;
  if (!data.counts().empty()) {
    for (Index i : cases) c1.push_back(data.counts()[i]);
    for (Index j : non) c0.push_back(data.counts()[j]);
  }
  return PairDeltas(data.case_matrix(), data.noncase_matrix(), std::move(c1), std::move(c0));
}

double PairDeltas::weight(Index k) const {
  const Index n0 = x0_.rows();
  return c1_[k / n0] * c0_[k % n0];
}

void PairDeltas::row(Index k, Eigen::Ref<Vector> out) const {
  const Index n0 = x0_.rows();
  out = (x1_.row(k / n0) - x0_.row(k % n0)).transpose();
}

void PairDeltas::project(const Vector& y, std::vector<double>& out) const {
  const Index n1 = x1_.rows(), n0 = x0_.rows();
  Vector a = x1_ * y;
  Vector b = x0_ * y;
  out.resize(static_cast<std::size_t>(n1 * n0));
  for (Index i = 0; i < n1; ++i) {
    double* o = out.data() + i * n0;
    for (Index j = 0; j < n0; ++j) o[j] = a[i] - b[j];
  }
}

void PairDeltas::accumulate(std::span<const double> g, std::span<const double> h, Vector& grad,
                            Matrix* hess) const {
  const Index n1 = x1_.rows(), n0 = x0_.rows();
  // g and h are row-major n1 x n0 blocks
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> G(g.data(), n1, n0);
  grad = x1_.transpose() * G.rowwise().sum() - x0_.transpose() * G.colwise().sum().transpose();
  if (hess) {
    Eigen::Map<const RowMajor> H(h.data(), n1, n0);
    Vector r = H.rowwise().sum();
    Vector s = H.colwise().sum().transpose();
    Matrix cross = x1_.transpose() * (H * x0_);  // sum_i x1_i (sum_j h_ij x0_j)^T
    *hess = x1_.transpose() * r.asDiagonal() * x1_ + x0_.transpose() * s.asDiagonal() * x0_ -
            cross - cross.transpose();
  }
}

Vector PairDeltas::column_max_abs() const {
  const Index d = dim();
  Vector m = Vector::Zero(d);
  if (x1_.rows() == 0 || x0_.rows() == 0) return m;
  for (Index j = 0; j < d; ++j) {
    double a = x1_.col(j).maxCoeff() - x0_.col(j).minCoeff();
    double b = x0_.col(j).maxCoeff() - x1_.col(j).minCoeff();
    m[j] = std::max(std::abs(a), std::abs(b));
  }
  return m;
}

int PairDeltas::rank(double tol) const {
  if (x0_.rows() == 0 || x1_.rows() == 0) return 0;
  Matrix rows(x1_.rows() + x0_.rows() - 1, dim());
  RowVector base = x0_.row(0);
  rows.topRows(x1_.rows()) = x1_.rowwise() - base;
  rows.bottomRows(x0_.rows() - 1) = x0_.bottomRows(x0_.rows() - 1).rowwise() - base;
  return matrix_rank(rows, tol);
}

PairDeltas PairDeltas::scaled(const Vector& column_scale) const {
  return PairDeltas(x1_ * column_scale.asDiagonal(), x0_ * column_scale.asDiagonal(), c1_, c0_);
}

// ---- pseudo-log ------------------------------------------------------------

LogStar log_star(double z, double n) {
  const double e0 = 1.0 / n;
  if (z >= e0) return {std::log(z), 1.0 / z, -1.0 / (z * z)};
  const double r = z / e0;
  return {std::log(e0) - 1.5 + 2.0 * r - 0.5 * r * r, 2.0 / e0 - z / (e0 * e0), -1.0 / (e0 * e0)};
}

// ---- solver ----------------------------------------------------------------

namespace {

struct Workspace {
  std::vector<double> proj, c, g, h;
};

double objective(const DeltaSource& D, const Vector& lambda, double n_eff, Workspace& ws) {
  D.project(lambda, ws.proj);
  double f = 0.0;
  for (std::size_t k = 0; k < ws.proj.size(); ++k) {
    if (ws.c[k] == 0.0) continue;
    f -= ws.c[k] * log_star(1.0 + ws.proj[k], n_eff).value;
  }
  return f;
}

DualValue evaluate(const DeltaSource& D, const Vector& lambda, double n_eff, Workspace& ws,
                   bool with_hessian) {
  D.project(lambda, ws.proj);
  const std::size_t N = ws.proj.size();
  ws.g.resize(N);
  ws.h.resize(N);
  double f = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    if (ws.c[k] == 0.0) {
      ws.g[k] = ws.h[k] = 0.0;
      continue;
    }
    auto ls = log_star(1.0 + ws.proj[k], n_eff);
    f -= ws.c[k] * ls.value;
    ws.g[k] = -ws.c[k] * ls.d1;
    ws.h[k] = -ws.c[k] * ls.d2;
  }
  DualValue out{f, Vector(), Matrix()};
  D.accumulate(ws.g, ws.h, out.grad, with_hessian ? &out.hess : nullptr);
  return out;
}

void init_weights(const DeltaSource& D, Workspace& ws) {
  ws.c.resize(static_cast<std::size_t>(D.size()));
  for (Index k = 0; k < D.size(); ++k) ws.c[k] = D.weight(k);
}

// Pseudo-inverse Newton step, restricted to the row space of the Hessian.
Vector newton_step(const Matrix& H, const Vector& g) {
  if (g.size() == 0) return g;
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  const Vector& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  const double cut = 1e-14 * top;
  Vector qg = es.eigenvectors().transpose() * g;
  for (Index i = 0; i < qg.size(); ++i) qg[i] = ev[i] > cut && top > 0 ? -qg[i] / ev[i] : 0.0;
  return es.eigenvectors() * qg;
}

}  // namespace

DualValue el_dual(const DeltaSource& deltas, const Vector& lambda) {
  Workspace ws;
  init_weights(deltas, ws);
  return evaluate(deltas, lambda, deltas.total_weight(), ws, true);
}

ELSolution el_solve_raw(const DeltaSource& D, const SolverOptions& opts) {
  if (D.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty displacement set");
  Workspace ws;
  init_weights(D, ws);
  const double n_eff = std::accumulate(ws.c.begin(), ws.c.end(), 0.0);
  if (!(n_eff > 0.0)) throw Error(ErrorCode::DegenerateWeights, "all pair weights are zero");

  ELSolution sol;
  sol.lambda = Vector::Zero(D.dim());
  for (int it = 0; it < opts.max_iter; ++it) {
    DualValue dv = evaluate(D, sol.lambda, n_eff, ws, true);
    if (dv.grad.size() == 0 || dv.grad.cwiseAbs().maxCoeff() < opts.grad_tol) {
      sol.converged = true;
      sol.decrement = 0.0;
      break;
    }
    Vector step = newton_step(dv.hess, dv.grad);
    const double slope = dv.grad.dot(step);
    sol.decrement = std::sqrt(std::max(0.0, -slope));
    if (-slope / 2.0 < opts.decrement_tol) {
      // inside the quadratic region the full step is safe and sharpens the weights
      if (objective(D, sol.lambda + step, n_eff, ws) <= dv.f) sol.lambda += step;
      sol.converged = true;
      break;
    }
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 40; ++halving, t *= 0.5) {
      double ft = objective(D, sol.lambda + t * step, n_eff, ws);
      if (std::isfinite(ft) && ft <= dv.f + 0.3 * t * slope) {
        accepted = true;
        break;
      }
    }
    sol.iterations = it + 1;
    if (!accepted) break;
    sol.lambda += t * step;
  }

  D.project(sol.lambda, ws.proj);
  sol.weights.resize(ws.proj.size());
  sol.w_tot = 0.0;
  for (std::size_t k = 0; k < ws.proj.size(); ++k) {
    double w = ws.c[k] * log_star(1.0 + ws.proj[k], n_eff).d1 / n_eff;
    sol.weights[k] = w > 0.0 ? w : 0.0;
    sol.w_tot += sol.weights[k];
  }
  return sol;
}

namespace {

Vector unit_scale(const Vector& colmax) {
  Vector s(colmax.size());
  for (Index j = 0; j < s.size(); ++j) s[j] = colmax[j] > 0.0 ? 1.0 / colmax[j] : 1.0;
  return s;
}

}  // namespace

ELSolution el_solve(const Displacements& d, const SolverOptions& opts) {
  if (!d.delta.allFinite()) throw Error(ErrorCode::NonFinite, "displacements contain non-finite values");
  Vector colmax = d.delta.rows() ? Vector(d.delta.cwiseAbs().colwise().maxCoeff().transpose())
                                 : Vector::Zero(d.delta.cols());
  Vector s = unit_scale(colmax);
  DenseDeltas D(d.delta * s.asDiagonal(), d.weights);
  ELSolution sol = el_solve_raw(D, opts);
  sol.lambda = sol.lambda.cwiseProduct(s);
  return sol;
}

ELSolution el_solve(const PairDeltas& d, const SolverOptions& opts) {
  if (!d.cases().allFinite() || !d.noncases().allFinite())
    throw Error(ErrorCode::NonFinite, "predictors contain non-finite values");
  Vector s = unit_scale(d.column_max_abs());
  ELSolution sol = el_solve_raw(d.scaled(s), opts);
  sol.lambda = sol.lambda.cwiseProduct(s);
  return sol;
}

// ---- marginals -------------------------------------------------------------

namespace {

Marginals finish(Vector u1, Vector u0, double w_tot, const Dataset& data) {
  Marginals m;
  m.u1 = u1 / w_tot;
  m.u0 = u0 / w_tot;
  m.S = m.u1.transpose() * data.case_matrix();
  m.F = m.u0.transpose() * data.noncase_matrix();
  return m;
}

}  // namespace

Marginals marginal_weights(const ELSolution& sol, const Dataset& data, double eps) {
  if (!(sol.w_tot > eps)) throw Error(ErrorCode::DegenerateWeights, "total weight is not above epsilon");
  const Index n1 = data.n_case(), n0 = data.n_noncase();
  if (static_cast<Index>(sol.weights.size()) != n1 * n0)
    throw Error(ErrorCode::BadShape, "weights do not match the data's pair count");
  Vector u1 = Vector::Zero(n1), u0 = Vector::Zero(n0);
  for (Index i = 0; i < n1; ++i)
    for (Index j = 0; j < n0; ++j) {
      double w = sol.weights[i * n0 + j];
      u1[i] += w;
      u0[j] += w;
    }
  return finish(std::move(u1), std::move(u0), sol.w_tot, data);
}

Marginals marginal_weights(const ELSolution& sol, const Displacements& d, const Dataset& data,
                           double eps) {
  if (!(sol.w_tot > eps)) throw Error(ErrorCode::DegenerateWeights, "total weight is not above epsilon");
  if (sol.weights.size() != d.pairs.size())
    throw Error(ErrorCode::BadShape, "weights do not match the displacement rows");
  Vector u1 = Vector::Zero(data.n_case()), u0 = Vector::Zero(data.n_noncase());
  for (std::size_t k = 0; k < d.pairs.size(); ++k) {
    u1[d.pairs[k].first] += sol.weights[k];
    u0[d.pairs[k].second] += sol.weights[k];
  }
  return finish(std::move(u1), std::move(u0), sol.w_tot, data);
}

Matrix reconstruct_product_weights(const Vector& u1, const Vector& u0) {
  return u1 * u0.transpose();
}

}  // namespace hullcheck
