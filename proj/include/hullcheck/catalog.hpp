#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hullcheck/dataset.hpp"
#include "hullcheck/minimal.hpp"

namespace hullcheck {

/// Partitions of n into at least two parts, parts non-increasing, listed in
/// reverse-lexicographic order.
std::vector<std::vector<int>> partitions_min2(int n);

struct AddFormat {
  std::vector<int> dims;  // non-decreasing
  int m = 0;
  int d = 0;
  std::string label;  // e.g. "+0^2 1"
};

std::vector<AddFormat> add_formats(int d);

struct LinkFormat {
  std::vector<int> dims;  // non-decreasing, last entry is d_max
  int m = 0;
  int s = 0;
  int d = 0;
  int n = 0;
  std::string label;
};

std::vector<LinkFormat> link_formats(int d);

/// Anchor embedding: component i keeps its own span coordinates in block i
/// and sits at vertex i of unit_simplex(m-1) in the trailing m-1 columns.
/// Throws CompositionFailed unless the result is a minimal overlap
/// configuration.
Dataset add_compose(const std::vector<Dataset>& components);

struct CatalogEntry {
  std::string id;
  std::string format;
  ConfigKind kind = ConfigKind::TypeI;
  Dataset data;
  int dim = 0;
};

/// Entries defined in code: Type I a-f, 2D/1D Type II g-l and the added 3D
/// set A1-A9.
std::vector<CatalogEntry> builtin_entries();

/// The full catalog: built-in entries plus the linked 3D entries L1-L17
/// loaded from the embedded catalog document.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_entry(const std::string& id);

std::string catalog_to_json(const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> catalog_from_json(const std::string& text);

/// Equivalence invariant: the responses and the family of minimal
/// sub-configurations (with their span dimensions), brought to a canonical
/// run order. Two minimal configurations are treated as equivalent when
/// their signatures agree.
struct Signature {
  std::vector<int> y;
  std::vector<std::pair<std::uint32_t, int>> family;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

Signature signature(const Dataset& data, bool allow_flip = true);
bool equivalent(const Dataset& a, const Dataset& b, bool allow_flip = true);

struct CatalogMatch {
  std::string id;  // empty when no entry matches
  bool flip = false;
};

/// Throws NotMinimal, or DimensionUnsupported when the span dimension > 3.
CatalogMatch identify(const Dataset& data);

enum class Location { Bottom, Middle };

const char* to_string(Location l) noexcept;

struct SearchReport {
  std::string basis;
  Location location = Location::Bottom;
  int dimension = 3;
  int overlap_count = 0;
  int type2_count = 0;
  int new_count = 0;
  std::vector<std::pair<std::string, int>> ids_found;  // sorted by id
  std::vector<Dataset> type2_configs;                   // candidate order
};

/// Basis placed in one lattice plane, two extra runs stacked at a common
/// position in the remaining planes, four response pairs each. Throws
/// UnknownBasis.
SearchReport lattice_search(const std::string& basis, Location location, int dimension = 3,
                            double eps = kDefaultEpsilon);

/// Added configurations of dimension 2 or 3 built from lower-dimensional
/// catalog entries and deduplicated up to equivalence.
std::vector<CatalogEntry> enumerate_added(int d);

/// Quasi-separated data: a partial Type I core on a hyperplane with a
/// completely separated random cloud on either side. Throws BadShape.
Dataset make_quasi(Index n, int d, std::uint64_t seed);

}  // namespace hullcheck
