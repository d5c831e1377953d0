#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "hullcheck/catalog.hpp"
#include "hullcheck/error.hpp"

namespace hullcheck {

// ---- lattice completeness search --------------------------------------------

SearchReport lattice_search(const std::string& basis, Location location, int dimension, double eps) {
  const CatalogEntry* base = find_entry(basis);
  if (dimension != 2 && dimension != 3)
    throw Error(ErrorCode::DimensionUnsupported, "lattice search runs in 2 or 3 dimensions");
  if (!base || base->data.dim() != dimension - 1)
    throw Error(ErrorCode::UnknownBasis, "no " + std::to_string(dimension - 1) +
                                             "D catalog basis named '" + basis + "'");
  const Dataset& b = base->data;
  const double zb = location == Location::Bottom ? -1.0 : 0.0;
  std::vector<double> planes;
  for (double z : {-1.0, 0.0, 1.0})
    if (z != zb) planes.push_back(z);
  const int pairs[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

  SearchReport rep;
  rep.basis = basis;
  rep.location = location;
  rep.dimension = dimension;
  std::map<std::string, int> found;
  const Index n = b.n() + 2;
  const int side = dimension == 3 ? 5 : 1;
  for (int gx = -2; gx <= 2; ++gx)
    for (int gi = 0; gi < side; ++gi) {
      const int gy = gi - 2;
      for (const auto& pr : pairs) {
        Matrix x = Matrix::Zero(n, dimension);
        x.topLeftCorner(b.n(), dimension - 1) = b.x();
        x.block(0, dimension - 1, b.n(), 1).setConstant(zb);
        std::vector<int> y = b.y();
        for (int t = 0; t < 2; ++t) {
          Index r = b.n() + t;
          x(r, 0) = gx;
          if (dimension == 3) x(r, 1) = gy;
          x(r, dimension - 1) = planes[t];
          y.push_back(pr[t]);
        }
        Dataset cand = Dataset::from_rows(std::move(x), std::move(y));
        if (classify(cand, eps).status != Status::Overlap) continue;
        ++rep.overlap_count;
        if (!verify_minimal(cand, eps) || n == span_dimension(cand) + 2) continue;
        ++rep.type2_count;
        CatalogMatch m = identify(cand);
        if (m.id.empty())
          ++rep.new_count;
        else
          ++found[m.id];
        rep.type2_configs.push_back(std::move(cand));
      }
    }
  // report in catalog order
  for (const auto& e : catalog()) {
    auto it = found.find(e.id);
    if (it != found.end()) rep.ids_found.emplace_back(e.id, it->second);
  }
  return rep;
}

// ---- added catalogs ------------------------------------------------------------

std::vector<CatalogEntry> enumerate_added(int d) {
  if (d != 2 && d != 3) throw Error(ErrorCode::DimensionUnsupported, "added enumeration covers d = 2, 3");
  struct Piece {
    Dataset data;
    int parts;  // constituents once nested additions are unfolded
  };
  std::map<int, std::vector<Piece>> pool;
  for (const auto& e : builtin_entries()) {
    if (e.dim >= d) continue;
    int parts = 1;
    if (!e.format.empty() && e.format.rfind("+", 0) == 0) {
      for (const auto& f : add_formats(std::max(e.dim, 1)))
        if (f.label == e.format) parts = f.m;
    }
    pool[e.dim].push_back({e.data, parts});
    Dataset fl = e.data.flipped();
    if (!equivalent(fl, e.data, false)) pool[e.dim].push_back({fl, parts});
  }

  struct Class {
    Signature sig;
    Dataset data;
    std::string format;
    int parts;
  };
  std::vector<Class> classes;
  for (const auto& fmt : add_formats(d)) {
    const int m = fmt.m;
    std::vector<std::size_t> choice(static_cast<std::size_t>(m), 0);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == m) {
        std::vector<Dataset> comps;
        int parts = 0;
        for (int i = 0; i < m; ++i) {
          const auto& p = pool[fmt.dims[i]][choice[i]];
          comps.push_back(p.data);
          parts += p.parts;
        }
        Dataset out;
        try {
          out = add_compose(comps);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::CompositionFailed) return;
          throw;
        }
        // nested additions unfold into the format with that many parts
        std::string label = fmt.label;
        if (parts != m)
          for (const auto& f : add_formats(d))
            if (f.m == parts) label = f.label;
        Signature s = signature(out, true);
        for (auto& c : classes)
          if (c.sig == s) {
            if (parts > c.parts) {
              c.parts = parts;
              c.format = label;
            }
            return;
          }
        classes.push_back({std::move(s), std::move(out), label, parts});
        return;
      }
      const auto& options = pool[fmt.dims[pos]];
      // equal dimensions are chosen in non-decreasing order
      std::size_t start = pos > 0 && fmt.dims[pos] == fmt.dims[pos - 1] ? choice[pos - 1] : 0;
      for (std::size_t k = start; k < options.size(); ++k) {
        choice[pos] = k;
        rec(pos + 1);
      }
    };
    rec(0);
  }

  std::vector<CatalogEntry> out;
  for (auto& c : classes) {
    CatalogEntry e;
    e.format = c.format;
    e.kind = ConfigKind::TypeII;
    e.dim = d;
    CatalogMatch m = identify(c.data);
    e.id = m.id;
    e.data = std::move(c.data);
    out.push_back(std::move(e));
  }
  return out;
}

// ---- quasi-separated generator -------------------------------------------------

Dataset make_quasi(Index n, int d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::BadShape, "d must be at least 1");
  if (n < d + 2) throw Error(ErrorCode::BadShape, "n must be at least d + 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const Index k = std::min<Index>(d, n - d - 1);  // doubletons on the hyperplane
  const Index cloud = n - 2 * k - 1;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vector v(d);
    for (int j = 0; j < d; ++j) v[j] = normal(rng);
    v.normalize();
    Matrix proj = Matrix::Identity(d, d) - v * v.transpose();
    auto in_plane = [&](double scale) {
      Vector p(d);
      for (int j = 0; j < d; ++j) p[j] = normal(rng) * scale;
      return Vector(proj * p);
    };
    Matrix x(n, d);
    std::vector<int> y;
    Index r = 0;
    for (Index i = 0; i < k; ++i) {
      Vector p = in_plane(1.0);
      x.row(r++) = p.transpose();
      y.push_back(1);
      x.row(r++) = p.transpose();
      y.push_back(0);
    }
    x.row(r++) = v.transpose();
    y.push_back(1);
    // the cloud sits beyond a margin on its response's side of the plane
    for (Index i = 0; i < cloud; ++i) {
      int resp = unif(rng) < 0.02 ? 1 : 0;
      if (i == 0) resp = 0;
      double offset = 0.5 + 3.0 * unif(rng);
      Vector p = in_plane(3.0) + (resp ? offset : -offset) * v;
      x.row(r++) = p.transpose();
      y.push_back(resp);
    }
    if (extended_rank(x) == d + 1) {
      std::vector<std::string> rid;
      for (Index i = 0; i < n; ++i) rid.push_back("q" + std::to_string(i + 1));
      return Dataset(std::move(x), std::move(y), std::move(rid));
    }
  }
  throw Error(ErrorCode::BadShape, "could not draw a full-rank configuration");
}

}  // namespace hullcheck
