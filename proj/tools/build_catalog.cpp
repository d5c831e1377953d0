// Regenerates the catalog document: built-in entries followed by the linked
// 3D configurations found by the lattice searches.
//
//   build_catalog OUT.json
#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "hullcheck/catalog.hpp"
#include "hullcheck/error.hpp"

using namespace hullcheck;

namespace {

// Linked-component dimensions read from the Type I sub-configurations.
std::string link_label(const Dataset& d) {
  std::vector<int> dims;
  const std::uint32_t full = (1u << d.n()) - 1u;
  for (const auto& s : minimal_subconfigs(d))
    if (s.mask != full && std::popcount(s.mask) == s.dim + 2) dims.push_back(s.dim);
  std::sort(dims.begin(), dims.end());
  std::string out = "∪";
  static const char* sup[] = {"", "", "²", "³", "⁴", "⁵"};
  for (std::size_t i = 0; i < dims.size();) {
    std::size_t j = i;
    while (j < dims.size() && dims[j] == dims[i]) ++j;
    out += std::to_string(dims[i]);
    out += sup[std::min<std::size_t>(j - i, 5)];
    i = j;
  }
  return out;
}

struct Label {
  const char* basis;
  Location loc;
  const char* format;
  int count;
  int id;
};

// Numbering of the linked entries by search cell, format and repeat count.
const Label kLabels[] = {
    {"c", Location::Bottom, "∪12", 1, 2},  {"c", Location::Bottom, "∪12", 3, 3},
    {"c", Location::Bottom, "∪2²", 1, 8},  {"c", Location::Bottom, "∪2²", 9, 10},
    {"c", Location::Middle, "∪12", 1, 1},  {"c", Location::Middle, "∪12", 3, 4},
    {"c", Location::Middle, "∪2²", 6, 7},  {"c", Location::Middle, "∪2²", 3, 9},
    {"c", Location::Middle, "∪2²", 1, 11}, {"d", Location::Bottom, "∪12", 4, 6},
    {"d", Location::Bottom, "∪2²", 2, 11}, {"d", Location::Bottom, "∪2²", 8, 13},
    {"d", Location::Middle, "∪12", 4, 5},  {"d", Location::Middle, "∪2²", 8, 10},
    {"d", Location::Middle, "∪2²", 2, 12}, {"j", Location::Bottom, "∪1³", 1, 17},
    {"j", Location::Middle, "∪1³", 1, 14}, {"k", Location::Bottom, "∪1³", 1, 15},
    {"k", Location::Middle, "∪1³", 1, 16}, {"l", Location::Bottom, "∪1³", 1, 16},
    {"l", Location::Middle, "∪1³", 1, 17},
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: build_catalog OUT.json\n");
    return 64;
  }
  try {
    struct Class {
      Signature sig;
      Dataset rep;
      std::string format;
      int id = 0;
    };
    std::vector<Class> classes;
    bool ok = true;
    for (const char* basis : {"c", "d", "j", "k", "l"})
      for (Location loc : {Location::Bottom, Location::Middle}) {
        SearchReport rep = lattice_search(basis, loc, 3);
        std::map<std::size_t, int> counts;
        for (const auto& cfg : rep.type2_configs) {
          Signature s = signature(cfg, true);
          std::size_t k = 0;
          while (k < classes.size() && !(classes[k].sig == s)) ++k;
          if (k == classes.size()) classes.push_back({s, cfg, link_label(cfg)});
          ++counts[k];
        }
        std::printf("%s %-6s overlap %d type2 %d:", basis, to_string(loc), rep.overlap_count,
                    rep.type2_count);
        for (auto [k, c] : counts) {
          int id = 0;
          for (const auto& l : kLabels)
            if (basis == std::string(l.basis) && l.loc == loc && classes[k].format == l.format &&
                l.count == c)
              id = l.id;
          if (!id || (classes[k].id && classes[k].id != id)) {
            std::printf(" [unlabelled %s x%d]", classes[k].format.c_str(), c);
            ok = false;
          } else {
            classes[k].id = id;
          }
          std::printf(" L%d:%d", id, c);
        }
        std::printf("\n");
      }
    if (!ok || classes.size() != 17) {
      std::fprintf(stderr, "search did not produce the 17 expected linked classes (%zu)\n",
                   classes.size());
      return 1;
    }
    std::sort(classes.begin(), classes.end(), [](const Class& a, const Class& b) { return a.id < b.id; });
    std::vector<CatalogEntry> entries = builtin_entries();
    for (const auto& c : classes) {
      CatalogEntry e;
      e.id = "L" + std::to_string(c.id);
      e.format = c.format;
      e.kind = ConfigKind::TypeII;
      e.dim = 3;
      e.data = c.rep;
      entries.push_back(std::move(e));
    }
    std::ofstream out(argv[1]);
    out << catalog_to_json(entries) << '\n';
    std::printf("wrote %zu entries to %s\n", entries.size(), argv[1]);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
