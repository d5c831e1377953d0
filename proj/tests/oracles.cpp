#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

int rank_rr(Matrix a, double rel_tol) {
  const Index m = a.rows(), n = a.cols();
  double scale = 0.0;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  if (scale == 0.0) return 0;
  const double tol = rel_tol * scale * std::max<Index>(1, std::max(m, n));
  int rank = 0;
  std::vector<Index> cols(n);
  for (Index j = 0; j < n; ++j) cols[j] = j;
  for (Index r = 0; r < std::min(m, n); ++r) {
    Index pi = -1, pj = -1;
    double best = tol;
    for (Index i = r; i < m; ++i)
      for (Index j = r; j < n; ++j)
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    for (Index j = 0; j < n; ++j) std::swap(a(r, j), a(pi, j));
    for (Index i = 0; i < m; ++i) std::swap(a(i, r), a(i, pj));
    for (Index i = r + 1; i < m; ++i) {
      double f = a(i, r) / a(r, r);
      for (Index j = r; j < n; ++j) a(i, j) -= f * a(r, j);
    }
    ++rank;
  }
  return rank;
}

int extended_rank_rr(const Matrix& x, double rel_tol) {
  Matrix e(x.rows(), x.cols() + 1);
  for (Index i = 0; i < x.rows(); ++i) {
    e(i, 0) = 1.0;
    for (Index j = 0; j < x.cols(); ++j) e(i, j + 1) = x(i, j);
  }
  return rank_rr(e, rel_tol);
}

Matrix lambda_template(int d1, int d0) {
  const int d = std::max(1, d1 + d0);
  Matrix out = Matrix::Zero(d1 + d0 + 2, d);
  // Case block: e_1..e_d1 then the all -1 row over the first d1 columns.
  for (int i = 0; i < d1; ++i) out(i, i) = 1.0;
  for (int j = 0; j < d1; ++j) out(d1, j) = -1.0;
  const int base = d1 + 1;
  for (int i = 0; i < d0; ++i) out(base + i, d1 + i) = 1.0;
  for (int j = 0; j < d0; ++j) out(base + d0, d1 + j) = -1.0;
  return out;
}

double dual_value(const Matrix& delta, const Vector& lambda) {
  const double n = static_cast<double>(delta.rows());
  const double e = 1.0 / n;
  double f = 0.0;
  for (Index k = 0; k < delta.rows(); ++k) {
    double z = 1.0;
    for (Index j = 0; j < delta.cols(); ++j) z += lambda(j) * delta(k, j);
    double ls = z >= e ? std::log(z)
                       : std::log(e) + (z - e) / e - (z - e) * (z - e) / (2.0 * e * e);
    f -= ls;
  }
  return f;
}

Vector fd_gradient(const Matrix& delta, const Vector& lambda, double h) {
  Vector g(lambda.size());
  for (Index j = 0; j < lambda.size(); ++j) {
    Vector p = lambda, m = lambda;
    p(j) += h;
    m(j) -= h;
    g(j) = (dual_value(delta, p) - dual_value(delta, m)) / (2.0 * h);
  }
  return g;
}

Matrix fd_hessian(const Matrix& delta, const Vector& lambda, double h) {
  const Index d = lambda.size();
  Matrix H(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      auto at = [&](double si, double sj) {
        Vector v = lambda;
        v(i) += si * h;
        v(j) += sj * h;
        return dual_value(delta, v);
      };
      H(i, j) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
    }
  return H;
}

Matrix pair_differences(const Dataset& data) {
  std::vector<Index> c, o;
  for (Index i = 0; i < data.n(); ++i) (data.y()[i] ? c : o).push_back(i);
  Matrix out(static_cast<Index>(c.size() * o.size()), data.dim());
  Index k = 0;
  for (Index i : c)
    for (Index j : o) out.row(k++) = data.x().row(i) - data.x().row(j);
  return out;
}

namespace {

std::vector<int> coin_responses(std::mt19937_64& rng, Index n) {
  std::vector<int> y(n);
  do {
    for (auto& v : y) v = static_cast<int>(rng() & 1u);
  } while (std::count(y.begin(), y.end(), 1) == 0 || std::count(y.begin(), y.end(), 0) == 0);
  return y;
}

}  // namespace

Dataset random_dataset(std::mt19937_64& rng, Index n, int d) {
  std::normal_distribution<double> g;
  Matrix x(n, d);
  for (Index i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = g(rng);
  return Dataset::from_rows(std::move(x), coin_responses(rng, n));
}

Dataset random_lattice_dataset(std::mt19937_64& rng, Index n, int d) {
  std::uniform_int_distribution<int> u(-1, 1);
  Matrix x(n, d);
  for (Index i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = u(rng);
  return Dataset::from_rows(std::move(x), coin_responses(rng, n));
}

Dataset random_affine(std::mt19937_64& rng, const Dataset& data) {
  const Index d = data.dim();
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> s(0.5, 2.0);
  Matrix q(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) q(i, j) = g(rng);
  // Gram-Schmidt
  for (Index j = 0; j < d; ++j) {
    for (Index k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    q.col(j) /= q.col(j).norm();
  }
  Matrix a = q;
  for (Index j = 0; j < d; ++j) a.col(j) *= s(rng);
  Matrix x = data.x() * a;
  for (Index j = 0; j < d; ++j) {
    double b = 5.0 * g(rng);
    x.col(j).array() += b;
  }
  return data.with_x(std::move(x));
}

bool separates(const Dataset& data, double beta0, const Vector& beta, double tol) {
  bool strict = false;
  for (Index i = 0; i < data.n(); ++i) {
    double s = beta0;
    for (Index j = 0; j < data.dim(); ++j) s += data.x()(i, j) * beta(j);
    if (data.y()[i] == 0) s = -s;
    if (s < -tol) return false;
    if (s > tol) strict = true;
  }
  return strict;
}

}  // namespace oracle
