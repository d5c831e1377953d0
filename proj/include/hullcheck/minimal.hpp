#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hullcheck/dataset.hpp"
#include "hullcheck/status.hpp"

namespace hullcheck {

enum class ConfigKind { TypeI, TypeII };

const char* to_string(ConfigKind k) noexcept;

struct MinimalConfig {
  Dataset data;
  ConfigKind kind = ConfigKind::TypeI;
  int d_eff = 0;
  int n = 0;
  int doubleton_count = 0;
};

/// Design points tested with both responses. Two points coincide when their
/// infinity-distance is at most 1e-9 times the data scale.
int doubleton_count(const Dataset& data);

/// Overlap judged inside the affine span of the predictors. A
/// zero-dimensional span with both responses present counts as overlap.
bool overlaps_in_span(const Dataset& data, double eps = kDefaultEpsilon);

/// Overlaps in its own span and loses that property on every single-run
/// removal.
bool verify_minimal(const Dataset& data, double eps = kDefaultEpsilon);

/// Throws Error(NotMinimal) when verify_minimal fails.
ConfigKind config_kind(const Dataset& data);

/// Greedy removal until no single run can be dropped without losing overlap.
/// `order` lists row indices in the sequence they are tried; empty means
/// 0..n-1. Throws Error(NotOverlapping) when the input has no overlap in its
/// span.
MinimalConfig deflate(const Dataset& data, std::span<const Index> order = {},
                      double eps = kDefaultEpsilon);
MinimalConfig deflate_seeded(const Dataset& data, std::uint64_t seed,
                             double eps = kDefaultEpsilon);

struct DepthReport {
  std::optional<int> n_overlap;
  std::optional<int> n_complete;
  std::vector<std::string> witness_overlap;
  std::vector<std::string> witness_complete;
  int k_max = 0;
};

/// Exhaustive search over removal sets of size 1..k_max, smallest first and
/// lexicographic within a size. Throws BudgetExceeded when C(n, k_max) > 1e7
/// and NotOverlapping unless the input overlaps.
DepthReport removal_depths(const Dataset& data, int k_max, double eps = kDefaultEpsilon);

/// Every subset (as a bitmask over rows) that is itself a minimal overlap
/// configuration, paired with its span dimension. Limited to n <= 20.
struct SubConfig {
  std::uint32_t mask;
  int dim;
};
std::vector<SubConfig> minimal_subconfigs(const Dataset& data, double eps = kDefaultEpsilon);

}  // namespace hullcheck
