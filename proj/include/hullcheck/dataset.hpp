#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hullcheck/linalg.hpp"

namespace hullcheck {

enum class Format { Csv, Json };

/// Binary-response sensitivity data: predictor rows, responses (1 = Case,
/// 0 = Non-Case), distinct row ids and optional nonnegative count weights.
/// Immutable once constructed; every constructor path validates.
class Dataset {
 public:
  Dataset() = default;

  /// Throws ValidationError naming the offending field.
  Dataset(Matrix x, std::vector<int> y, std::vector<std::string> rid,
          std::vector<double> counts = {});

  /// Row ids default to "r1".."rn".
  static Dataset from_rows(Matrix x, std::vector<int> y);

  const Matrix& x() const { return x_; }
  const std::vector<int>& y() const { return y_; }
  const std::vector<std::string>& rid() const { return rid_; }
  const std::vector<double>& counts() const { return counts_; }

  Index n() const { return x_.rows(); }
  Index dim() const { return x_.cols(); }
  Index n_case() const;
  Index n_noncase() const { return n() - n_case(); }
  bool has_unit_counts() const;

  /// Rows (in original order) with the given response.
  std::vector<Index> rows_with(int response) const;
  Matrix case_matrix() const;
  Matrix noncase_matrix() const;

  Dataset subset(std::span<const Index> rows) const;
  Dataset without(Index row) const;
  Dataset with_x(Matrix x) const;
  Dataset flipped() const;

  /// Row index of `id`, or -1.
  Index find(const std::string& id) const;

 private:
  Matrix x_;
  std::vector<int> y_;
  std::vector<std::string> rid_;
  std::vector<double> counts_;
};

/// Case-minus-Non-Case predictor differences. Row k corresponds to
/// pairs[k] = (i, j): the i-th Case row and the j-th Non-Case row, both
/// counted within their group in original order; the Case index varies
/// slowest.
struct Displacements {
  Matrix delta;
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<double> weights;  // count_i * count_j

  Index size() const { return delta.rows(); }
};

Dataset load_dataset(std::istream& in, Format format);
Dataset load_dataset_file(const std::string& path);
Dataset parse_dataset(const std::string& text, Format format);

void write_csv(std::ostream& out, const Dataset& data);
std::string to_csv(const Dataset& data);
std::string to_json(const Dataset& data);

/// Throws Error(NoMixedResults) when either group is empty.
Displacements displacements(const Dataset& data);

/// Seeded row permutation; each row keeps its x, y, rid and count.
Dataset shuffle(const Dataset& data, std::uint64_t seed);
std::vector<Index> shuffled_order(Index n, std::uint64_t seed);

/// Extended-matrix rank of (1, X).
int extended_rank(const Matrix& x, double tol = kRankTolerance);

namespace fixtures {

/// The 16-run, three-predictor overlap demonstration set.
const Dataset& w0();
/// Case rows 7-8 and Non-Case rows 6-8 of w0 (Type I).
const Dataset& w1();
/// Case rows 1-3 and Non-Case rows 1-3 of w0 (Type II).
const Dataset& w2();
/// Added Type II configuration in five predictors built from three 1D pieces.
const Dataset& a1();

}  // namespace fixtures

}  // namespace hullcheck
