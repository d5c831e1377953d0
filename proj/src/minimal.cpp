#include "hullcheck/minimal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "hullcheck/error.hpp"

namespace hullcheck {

const char* to_string(ConfigKind k) noexcept { return k == ConfigKind::TypeI ? "TypeI" : "TypeII"; }

int doubleton_count(const Dataset& data) {
  const Index n = data.n();
  if (n == 0) return 0;
  const double scale = std::max(1.0, data.x().cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;
  std::vector<Index> cluster(static_cast<std::size_t>(n), -1);
  int count = 0;
  for (Index i = 0; i < n; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = i;
    bool has[2] = {false, false};
    has[data.y()[i]] = true;
    for (Index j = i + 1; j < n; ++j) {
      if (cluster[j] >= 0) continue;
      double dist = data.dim() ? (data.x().row(i) - data.x().row(j)).cwiseAbs().maxCoeff() : 0.0;
      if (dist <= tol) {
        cluster[j] = i;
        has[data.y()[j]] = true;
      }
    }
    if (has[0] && has[1]) ++count;
  }
  return count;
}

bool overlaps_in_span(const Dataset& data, double eps) {
  if (data.n_case() == 0 || data.n_noncase() == 0) return false;
  Dataset p = project_to_span(data);
  if (p.dim() == 0) return true;
  return classify(p, eps).status == Status::Overlap;
}

bool verify_minimal(const Dataset& data, double eps) {
  if (!overlaps_in_span(data, eps)) return false;
  for (Index i = 0; i < data.n(); ++i)
    if (overlaps_in_span(data.without(i), eps)) return false;
  return true;
}

ConfigKind config_kind(const Dataset& data) {
  if (!verify_minimal(data)) throw Error(ErrorCode::NotMinimal, "configuration is not minimal");
  return data.n() == span_dimension(data) + 2 ? ConfigKind::TypeI : ConfigKind::TypeII;
}

namespace {

MinimalConfig describe(Dataset core) {
  MinimalConfig m;
  m.d_eff = span_dimension(core);
  m.n = static_cast<int>(core.n());
  m.kind = m.n == m.d_eff + 2 ? ConfigKind::TypeI : ConfigKind::TypeII;
  m.doubleton_count = doubleton_count(core);
  m.data = std::move(core);
  return m;
}

}  // namespace

MinimalConfig deflate(const Dataset& data, std::span<const Index> order, double eps) {
  if (!overlaps_in_span(data, eps))
    throw Error(ErrorCode::NotOverlapping, "data have no overlap to deflate");
  std::vector<Index> seq;
  if (order.empty()) {
    seq.resize(static_cast<std::size_t>(data.n()));
    std::iota(seq.begin(), seq.end(), Index{0});
  } else {
    seq.assign(order.begin(), order.end());
  }
  std::vector<char> kept(static_cast<std::size_t>(data.n()), 1);
  auto rows_kept = [&] {
    std::vector<Index> r;
    for (Index i = 0; i < data.n(); ++i)
      if (kept[i]) r.push_back(i);
    return r;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (Index i : seq) {
      if (i < 0 || i >= data.n()) throw Error(ErrorCode::InvalidArgument, "order index out of range");
      if (!kept[i]) continue;
      kept[i] = 0;
      if (overlaps_in_span(data.subset(rows_kept()), eps))
        changed = true;
      else
        kept[i] = 1;
    }
  }
  return describe(data.subset(rows_kept()));
}

MinimalConfig deflate_seeded(const Dataset& data, std::uint64_t seed, double eps) {
  auto order = shuffled_order(data.n(), seed);
  return deflate(data, order, eps);
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

DepthReport removal_depths(const Dataset& data, int k_max, double eps) {
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be at least 1");
  const int n = static_cast<int>(data.n());
  k_max = std::min(k_max, n);
  if (binomial(n, k_max) > 1e7)
    throw Error(ErrorCode::BudgetExceeded, "C(n, k_max) exceeds 1e7 subsets");
  if (classify(data, eps).status != Status::Overlap)
    throw Error(ErrorCode::NotOverlapping, "removal depths need overlapping data");

  DepthReport rep;
  rep.k_max = k_max;
  auto ids = [&](const std::vector<int>& idx) {
    std::vector<std::string> out;
    for (int i : idx) out.push_back(data.rid()[i]);
    return out;
  };
  for (int k = 1; k <= k_max && !(rep.n_overlap && rep.n_complete); ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<Index> keep;
      for (int i = 0, p = 0; i < n; ++i) {
        if (p < k && idx[p] == i) {
          ++p;
          continue;
        }
        keep.push_back(i);
      }
      Status s = classify(data.subset(keep), eps).status;
      if (!rep.n_overlap && s != Status::Overlap) {
        rep.n_overlap = k;
        rep.witness_overlap = ids(idx);
      }
      if (!rep.n_complete && s == Status::CompleteSeparation) {
        rep.n_complete = k;
        rep.witness_complete = ids(idx);
      }
      if (rep.n_overlap && rep.n_complete) break;
      // next combination in lexicographic order
      int p = k - 1;
      while (p >= 0 && idx[p] == n - k + p) --p;
      if (p < 0) break;
      ++idx[p];
      for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return rep;
}

std::vector<SubConfig> minimal_subconfigs(const Dataset& data, double eps) {
  const int n = static_cast<int>(data.n());
  if (n > 16) throw Error(ErrorCode::BudgetExceeded, "sub-configuration family limited to 16 runs");
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<signed char> ov(static_cast<std::size_t>(full) + 1, -1);
  auto rows_of = [&](std::uint32_t mask) {
    std::vector<Index> r;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) r.push_back(i);
    return r;
  };
  auto overlap = [&](std::uint32_t mask) {
    if (ov[mask] < 0) ov[mask] = std::popcount(mask) >= 2 && overlaps_in_span(data.subset(rows_of(mask)), eps);
    return ov[mask] == 1;
  };
  std::vector<SubConfig> out;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) < 2 || !overlap(mask)) continue;
    bool minimal = true;
    for (int i = 0; i < n && minimal; ++i)
      if ((mask >> i & 1u) && overlap(mask & ~(1u << i))) minimal = false;
    if (minimal) out.push_back({mask, span_dimension(data.subset(rows_of(mask)))});
  }
  return out;
}

}  // namespace hullcheck
