#pragma once

#include <Eigen/Dense>

namespace hullcheck {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Index = Eigen::Index;

inline constexpr double kRankTolerance = 1e-8;

/// Number of singular values above `tol` times the largest one. An empty or
/// all-zero matrix has rank 0.
int matrix_rank(const Matrix& m, double tol = kRankTolerance);

/// Orthonormal basis (columns) of the linear span of the rows of `m`, using
/// the same relative cutoff as matrix_rank.
Matrix row_space_basis(const Matrix& m, double tol = kRankTolerance);

/// Affine span of a point set: returns the origin (centroid) and an
/// orthonormal basis of the direction space.
struct AffineSpan {
  RowVector origin;
  Matrix basis;  // d x r

  int dim() const { return static_cast<int>(basis.cols()); }
  Matrix coordinates(const Matrix& points) const;
};

AffineSpan affine_span(const Matrix& points, double tol = kRankTolerance);

}  // namespace hullcheck
