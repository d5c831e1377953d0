#pragma once

#include <optional>
#include <string>

#include "hullcheck/dataset.hpp"
#include "hullcheck/elcore.hpp"

namespace hullcheck {

enum class Status { Overlap, QuasiSeparation, CompleteSeparation, NoMixedResults };

const char* to_string(Status s) noexcept;

inline constexpr double kDefaultEpsilon = 1e-8;

struct OverlapReport {
  Status status = Status::NoMixedResults;
  std::optional<int> rank;
  std::optional<double> w_tot;
  std::optional<Marginals> marginals;  // present iff Overlap
  double epsilon = kDefaultEpsilon;
  std::optional<ELSolution> solution;  // diagnostics; absent for NoMixedResults
};

/// Four-way status from rank(delta) and total EL weight:
///   w_tot < eps -> complete separation; w_tot > 1 - eps with full rank ->
///   overlap; anything else (including the boundaries) -> quasi separation.
OverlapReport classify(const Dataset& data, double eps = kDefaultEpsilon,
                       const SolverOptions& opts = {});

/// Status after projecting the predictors onto their own affine span, so a
/// configuration embedded in a higher-dimensional space is judged in the
/// dimension it actually occupies.
Status classify_in_span(const Dataset& data, double eps = kDefaultEpsilon);

/// Dimension of the affine span of the predictor rows.
int span_dimension(const Dataset& data);

/// Predictors re-expressed in an orthonormal basis of their affine span.
Dataset project_to_span(const Dataset& data);

struct SeparationVerdict {
  bool separated = false;
  Vector direction;  // zero when not separated
  double intercept = 0.0;
  double lp_value = 0.0;
};

/// LP separation test on the extended predictors: maximise
/// sum_i s_i (1, x_i) . beta subject to s_i (1, x_i) . beta >= 0 and
/// |beta_j| <= 1, with s_i = +1 for Cases and -1 for Non-Cases. Separated
/// when the optimum exceeds `tol` or rank(delta) < d.
SeparationVerdict lp_separation(const Dataset& data, double tol = 1e-7);

/// LP test that the origin is interior to conv(delta): maximise t subject to
/// w_k >= t, sum w = 1, sum w_k delta_k = 0. True iff t > tol and delta has
/// full column rank.
bool origin_interior_lp(const Matrix& delta, double tol = 1e-10);
bool origin_interior_lp(const Dataset& data, double tol = 1e-10);

/// Process exit code for a status (0, 2, 3, 4).
int exit_code(Status s) noexcept;

}  // namespace hullcheck
