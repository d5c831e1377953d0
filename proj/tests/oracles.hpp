// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's numerical routines.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hullcheck/dataset.hpp"

namespace oracle {

using hullcheck::Dataset;
using hullcheck::Index;
using hullcheck::Matrix;
using hullcheck::Vector;

/// Rank by Gaussian elimination with full pivoting, relative tolerance.
int rank_rr(Matrix a, double rel_tol = 1e-9);

/// Rank of (1, X).
int extended_rank_rr(const Matrix& x, double rel_tol = 1e-9);

/// Lambda(d1, d0) written out row by row from its block layout.
Matrix lambda_template(int d1, int d0);

/// Dual objective evaluated directly from its definition, any lambda.
double dual_value(const Matrix& delta, const Vector& lambda);

/// Central finite differences of dual_value.
Vector fd_gradient(const Matrix& delta, const Vector& lambda, double h = 1e-5);
Matrix fd_hessian(const Matrix& delta, const Vector& lambda, double h = 1e-4);

/// All Case-minus-Non-Case differences, Case index slowest.
Matrix pair_differences(const Dataset& data);

/// Gaussian predictors and fair-coin responses (both groups present).
Dataset random_dataset(std::mt19937_64& rng, Index n, int d);

/// Same, but coordinates drawn from {-1, 0, 1} so ties and degenerate
/// configurations are common.
Dataset random_lattice_dataset(std::mt19937_64& rng, Index n, int d);

/// x -> x A + b with A well conditioned (orthogonal times scales in [0.5, 2]).
Dataset random_affine(std::mt19937_64& rng, const Dataset& data);

/// Separating hyperplane check: sign(beta0 + x.beta) >= 0 for Cases and
/// <= 0 for Non-Cases, with at least one strict inequality.
bool separates(const Dataset& data, double beta0, const Vector& beta, double tol = 1e-9);

}  // namespace oracle
