#include "hullcheck/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include <json.hpp>

#include "hullcheck/error.hpp"
#include "hullcheck/forms.hpp"

namespace hullcheck {

namespace detail {
extern const char* const kCatalogJson;
}

// ---- partitions and formats ------------------------------------------------

std::vector<std::vector<int>> partitions_min2(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int cap) {
    if (rest == 0) {
      if (cur.size() >= 2) out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n - 1);
  return out;
}

namespace {

std::string superscript(int k) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char c : std::to_string(k)) s += digits[c - '0'];
  return s;
}

std::string dims_label(const std::vector<int>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size();) {
    std::size_t j = i;
    while (j < dims.size() && dims[j] == dims[i]) ++j;
    s += std::to_string(dims[i]);
    if (j - i > 1) s += superscript(static_cast<int>(j - i));
    i = j;
  }
  return s;
}

}  // namespace

std::vector<AddFormat> add_formats(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be at least 1");
  std::vector<AddFormat> out;
  for (const auto& part : partitions_min2(d + 1)) {
    AddFormat f;
    for (int p : part) f.dims.push_back(p - 1);
    std::sort(f.dims.begin(), f.dims.end());
    f.m = static_cast<int>(f.dims.size());
    f.d = d;
    f.label = "+" + dims_label(f.dims);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<LinkFormat> link_formats(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "d must be at least 2");
  std::vector<LinkFormat> out;
  for (int dmax = 1; dmax <= d; ++dmax)
    for (int m = 2; dmax + m - 1 <= d; ++m) {
      int s = d - dmax - (m - 1);
      if (s > dmax - 1) continue;
      // non-decreasing (m-1)-multisets from 1..dmax
      std::vector<int> pick(static_cast<std::size_t>(m - 1), 1);
      for (;;) {
        LinkFormat f;
        f.dims = pick;
        f.dims.push_back(dmax);
        f.m = m;
        f.s = s;
        f.d = d;
        f.n = d + m + 1;
        f.label = "∪" + dims_label(f.dims) + (s ? " s=" + std::to_string(s) : "");
        out.push_back(std::move(f));
        int p = m - 2;
        while (p >= 0 && pick[p] == dmax) --p;
        if (p < 0) break;
        ++pick[p];
        for (int q = p + 1; q < m - 1; ++q) pick[q] = pick[p];
      }
    }
  return out;
}

// ---- add composition -------------------------------------------------------

Dataset add_compose(const std::vector<Dataset>& components) {
  const int m = static_cast<int>(components.size());
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "add needs at least two components");
  std::vector<Matrix> coords;
  int total = 0;
  Index rows = 0;
  for (const auto& c : components) {
    if (!verify_minimal(c))
      throw Error(ErrorCode::CompositionFailed, "component is not a minimal overlap configuration");
    AffineSpan span = affine_span(c.x());
    // full-dimensional components keep their own coordinates
    Matrix z = span.dim() == c.dim() ? c.x() : span.coordinates(c.x());
    coords.push_back(z);
    total += span.dim();
    rows += c.n();
  }
  const int d = total + m - 1;
  Matrix anchors = unit_simplex(m - 1);
  Matrix x = Matrix::Zero(rows, d);
  std::vector<int> y;
  Index r = 0;
  int col = 0;
  for (int i = 0; i < m; ++i) {
    const auto& z = coords[i];
    for (Index k = 0; k < z.rows(); ++k, ++r) {
      x.block(r, col, 1, z.cols()) = z.row(k);
      x.block(r, total, 1, m - 1) = anchors.row(i);
      y.push_back(components[i].y()[k]);
    }
    col += static_cast<int>(z.cols());
  }
  Dataset out = Dataset::from_rows(std::move(x), std::move(y));
  if (classify(out).status != Status::Overlap)
    throw Error(ErrorCode::CompositionFailed, "composition does not overlap");
  if (!verify_minimal(out)) throw Error(ErrorCode::CompositionFailed, "composition is not minimal");
  return out;
}

// ---- entries ---------------------------------------------------------------

namespace {

Dataset lattice(std::initializer_list<std::pair<std::pair<double, double>, int>> pts) {
  Matrix x(static_cast<Index>(pts.size()), 2);
  std::vector<int> y;
  Index i = 0;
  for (const auto& [p, r] : pts) {
    x(i, 0) = p.first;
    x(i, 1) = p.second;
    y.push_back(r);
    ++i;
  }
  return Dataset::from_rows(std::move(x), std::move(y));
}

Dataset line(std::initializer_list<std::pair<double, int>> pts) {
  Matrix x(static_cast<Index>(pts.size()), 1);
  std::vector<int> y;
  Index i = 0;
  for (const auto& [p, r] : pts) {
    x(i++, 0) = p;
    y.push_back(r);
  }
  return Dataset::from_rows(std::move(x), std::move(y));
}

// Rounds compositions built from lattice pieces back onto the lattice.
Dataset tidy(const Dataset& d) {
  Matrix x = d.x();
  for (Index i = 0; i < x.size(); ++i) {
    double r = std::round(x.data()[i]);
    if (std::abs(x.data()[i] - r) < 1e-9) x.data()[i] = r == 0.0 ? 0.0 : r;
  }
  return d.with_x(std::move(x));
}

CatalogEntry entry(std::string id, std::string format, ConfigKind kind, Dataset data) {
  CatalogEntry e;
  e.id = std::move(id);
  e.format = std::move(format);
  e.kind = kind;
  e.dim = span_dimension(data);
  e.data = std::move(data);
  return e;
}

}  // namespace

std::vector<CatalogEntry> builtin_entries() {
  using K = ConfigKind;
  std::vector<CatalogEntry> out;
  const Dataset a = make_standard_type1(0, 0);
  const Dataset b = make_standard_type1(0, 1);
  out.push_back(entry("a", "Λ(0,0)", K::TypeI, a));
  out.push_back(entry("b", "Λ(0,1)", K::TypeI, b));
  out.push_back(entry("c", "Λ(0,2)", K::TypeI,
                      lattice({{{0, 0}, 1}, {{0, 1}, 0}, {{-1, -1}, 0}, {{1, -1}, 0}})));
  out.push_back(entry("d", "Λ(1,1)", K::TypeI,
                      lattice({{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 0}, {{0, -1}, 0}})));
  out.push_back(entry("e", "Λ(0,3)", K::TypeI, make_standard_type1(0, 3)));
  out.push_back(entry("f", "Λ(1,2)", K::TypeI, make_standard_type1(1, 2)));
  out.push_back(entry("g", "+0²", K::TypeII, line({{-1, 1}, {-1, 0}, {1, 1}, {1, 0}})));
  out.push_back(entry("h", "+01", K::TypeII, tidy(add_compose({a, b}))));
  out.push_back(entry("i", "+0³", K::TypeII, tidy(add_compose({a, a, a}))));
  out.push_back(entry("j", "∪1²", K::TypeII,
                      lattice({{{0, 0}, 1}, {{1, 0}, 0}, {{-1, 0}, 0}, {{0, 1}, 0}, {{0, -1}, 0}})));
  out.push_back(entry("k", "∪1²", K::TypeII,
                      lattice({{{0, -1}, 1}, {{-1, 0}, 1}, {{-1, -1}, 0}, {{1, -1}, 0}, {{-1, 1}, 0}})));
  out.push_back(entry("l", "∪1²", K::TypeII,
                      lattice({{{-1, -1}, 1}, {{1, -1}, 1}, {{0, 0}, 1}, {{0, -1}, 0}, {{0, 1}, 0}})));

  auto get = [&](const std::string& id) {
    for (const auto& e : out)
      if (e.id == id) return e.data;
    throw Error(ErrorCode::UnknownBasis, id);
  };
  const Dataset c = get("c"), d = get("d"), j = get("j"), k = get("k"), l = get("l");
  out.push_back(entry("A1", "+0⁴", K::TypeII, tidy(add_compose({a, a, a, a}))));
  out.push_back(entry("A2", "+0²1", K::TypeII, tidy(add_compose({a, a, b}))));
  out.push_back(entry("A3", "+02", K::TypeII, tidy(add_compose({a, c}))));
  out.push_back(entry("A4", "+02", K::TypeII, tidy(add_compose({a, d}))));
  out.push_back(entry("A5", "+02", K::TypeII, tidy(add_compose({a, j}))));
  out.push_back(entry("A6", "+02", K::TypeII, tidy(add_compose({a, k}))));
  out.push_back(entry("A7", "+02", K::TypeII, tidy(add_compose({a, l}))));
  out.push_back(entry("A8", "+1²", K::TypeII, tidy(add_compose({b, b}))));
  out.push_back(entry("A9", "+1²", K::TypeII, tidy(add_compose({b, b.flipped()}))));
  return out;
}

std::string catalog_to_json(const std::vector<CatalogEntry>& entries) {
  nlohmann::ordered_json doc;
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["id"] = e.id;
    j["format"] = e.format;
    j["kind"] = to_string(e.kind);
    nlohmann::ordered_json xs = nlohmann::ordered_json::array();
    for (Index i = 0; i < e.data.n(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (Index c = 0; c < e.data.dim(); ++c) row.push_back(e.data.x()(i, c));
      xs.push_back(row);
    }
    j["x"] = xs;
    j["y"] = e.data.y();
    doc["entries"].push_back(j);
  }
  return doc.dump(1);
}

std::vector<CatalogEntry> catalog_from_json(const std::string& text) {
  std::vector<CatalogEntry> out;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, e.what());
  }
  for (const auto& j : doc.at("entries")) {
    nlohmann::json d = {{"x", j.at("x")}, {"y", j.at("y")}};
    Dataset data = parse_dataset(d.dump(), Format::Json);
    ConfigKind kind = j.at("kind") == "TypeI" ? ConfigKind::TypeI : ConfigKind::TypeII;
    out.push_back(entry(j.at("id"), j.at("format"), kind, std::move(data)));
  }
  return out;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::string text = detail::kCatalogJson;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return builtin_entries();
    return catalog_from_json(text);
  }();
  return entries;
}

const CatalogEntry* find_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return &e;
  return nullptr;
}

// ---- equivalence -----------------------------------------------------------

namespace {

// Canonical form over run orders that list Non-Cases before Cases.
Signature canonical(const std::vector<int>& y, const std::vector<SubConfig>& family) {
  const int n = static_cast<int>(y.size());
  std::vector<int> zeros, ones;
  for (int i = 0; i < n; ++i) (y[i] ? ones : zeros).push_back(i);
  Signature best;
  bool have = false;
  std::vector<int> pos(static_cast<std::size_t>(n));  // new position of run i
  std::vector<std::pair<std::uint32_t, int>> fam(family.size());
  do {
    do {
      int p = 0;
      for (int i : zeros) pos[i] = p++;
      for (int i : ones) pos[i] = p++;
      for (std::size_t f = 0; f < family.size(); ++f) {
        std::uint32_t m = 0;
        for (int i = 0; i < n; ++i)
          if (family[f].mask >> i & 1u) m |= 1u << pos[i];
        fam[f] = {m, family[f].dim};
      }
      std::sort(fam.begin(), fam.end());
      if (!have || fam < best.family) {
        best.family = fam;
        have = true;
      }
    } while (std::next_permutation(ones.begin(), ones.end()));
  } while (std::next_permutation(zeros.begin(), zeros.end()));
  best.y.assign(zeros.size(), 0);
  best.y.insert(best.y.end(), ones.size(), 1);
  return best;
}

}  // namespace

Signature signature(const Dataset& data, bool allow_flip) {
  if (data.n() > 12) throw Error(ErrorCode::BudgetExceeded, "equivalence test limited to 12 runs");
  auto family = minimal_subconfigs(data);
  Signature s = canonical(data.y(), family);
  if (allow_flip) {
    std::vector<int> fy(data.y());
    for (auto& v : fy) v = 1 - v;
    s = std::min(s, canonical(fy, family));
  }
  return s;
}

bool equivalent(const Dataset& a, const Dataset& b, bool allow_flip) {
  if (a.n() != b.n()) return false;
  return signature(a, allow_flip) == signature(b, allow_flip);
}

namespace {

struct EntrySignatures {
  std::vector<Signature> plain, flipped;
};

const EntrySignatures& entry_signatures() {
  static const EntrySignatures sigs = [] {
    EntrySignatures s;
    for (const auto& e : catalog()) {
      s.plain.push_back(signature(e.data, false));
      s.flipped.push_back(signature(e.data.flipped(), false));
    }
    return s;
  }();
  return sigs;
}

}  // namespace

CatalogMatch identify(const Dataset& data) {
  if (!verify_minimal(data)) throw Error(ErrorCode::NotMinimal, "configuration is not minimal");
  if (span_dimension(data) > 3)
    throw Error(ErrorCode::DimensionUnsupported, "catalog covers dimensions up to 3");
  Signature s = signature(data, false);
  const auto& cat = catalog();
  const auto& sigs = entry_signatures();
  for (std::size_t i = 0; i < cat.size(); ++i)
    if (sigs.plain[i] == s) return {cat[i].id, false};
  for (std::size_t i = 0; i < cat.size(); ++i)
    if (sigs.flipped[i] == s) return {cat[i].id, true};
  return {};
}

const char* to_string(Location l) noexcept { return l == Location::Bottom ? "bottom" : "middle"; }

}  // namespace hullcheck
