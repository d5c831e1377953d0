#pragma once

#include "hullcheck/dataset.hpp"
#include "hullcheck/status.hpp"

namespace hullcheck {

/// (0) for n = 0; otherwise the n x n identity followed by a row of -1.
Matrix unit_simplex(int n);

/// The standard Type I configuration with d1+1 Cases and d0+1 Non-Cases in
/// d1+d0 predictors. Cases occupy the first d1 columns.
Dataset make_standard_type1(int d1, int d0);

/// Regular simplexes with unit-norm vertices, Cases in the first d1 columns.
Dataset make_equidistant(int d1, int d0);

/// V = diag(u1, u0) (X - 1 S), Case rows first. Throws NotOverlapping.
Matrix interim_form(const Dataset& data, double eps = kDefaultEpsilon);

/// Rows of `data` reordered Case block first, each block by row id.
Dataset case_first(const Dataset& data);

struct StandardForm {
  Matrix lambda;
  int d1 = 0;
  int d0 = 0;
  Vector u1;  // EL weights of lambda itself (uniform within each block)
  Vector u0;
};

/// Lambda = V V_-^{-1}, where V_- drops the last row of each block.
/// Predictors are first projected onto their span when it is smaller than
/// the ambient dimension. Throws NotTypeI.
StandardForm to_standard_form(const Dataset& data, double eps = kDefaultEpsilon);

}  // namespace hullcheck
