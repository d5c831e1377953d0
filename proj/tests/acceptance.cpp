// Acceptance checks 1-12. Prints one PASS/FAIL line per check and exits
// nonzero when any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hullcheck/catalog.hpp"
#include "hullcheck/elcore.hpp"
#include "hullcheck/forms.hpp"
#include "hullcheck/minimal.hpp"
#include "hullcheck/status.hpp"
#include "oracles.hpp"

using namespace hullcheck;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "first failure: " << what;
      pass = false;
    }
  }
};

using Check = std::function<void(Outcome&)>;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 3) {
  char b[64];
  std::snprintf(b, sizeof b, "%.*g", prec, v);
  return b;
}

Dataset line(std::vector<double> xs, std::vector<int> ys) {
  Matrix x(static_cast<Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) x(static_cast<Index>(i), 0) = xs[i];
  return Dataset::from_rows(std::move(x), std::move(ys));
}

// 1 ----------------------------------------------------------------------
void w0_weights(Outcome& o) {
  const double u1p[] = {.16493310, .08925699, .21147676, .08701106,
                        .08695881, .09646835, .08728623, .17660869};
  // reference column, top to bottom
  const double u0p[] = {.07232476, .12967985, .13076825, .08068072,
                        .11694525, .07262221, .08199628, .31498268};
  const double SF[] = {9.227367, 4.194798, 5.981682};

  const Dataset& w0 = fixtures::w0();
  auto t0 = std::chrono::steady_clock::now();
  auto rep = classify(w0);
  double dt = seconds_since(t0);
  o.expect(rep.status == Status::Overlap, "status");
  if (!rep.marginals) return;
  const auto& m = *rep.marginals;

  // The reference u0 entries of rows 5 and 6 are transposed: in the listed
  // order u0 X0 misses the reference F, with rows 5/6 swapped it hits it.
  Matrix x0 = w0.noncase_matrix();
  RowVector f_listed = RowVector::Zero(3), f_swapped = RowVector::Zero(3);
  for (int i = 0; i < 8; ++i) {
    int j = i == 4 ? 5 : i == 5 ? 4 : i;
    f_listed += u0p[i] * x0.row(i);
    f_swapped += u0p[j] * x0.row(i);
  }
  double miss_listed = 0, miss_swapped = 0;
  for (int k = 0; k < 3; ++k) {
    miss_listed = std::max(miss_listed, std::abs(f_listed[k] - SF[k]));
    miss_swapped = std::max(miss_swapped, std::abs(f_swapped[k] - SF[k]));
  }
  o.expect(miss_listed > 1e-3 && miss_swapped < 1e-5, "rows 5/6 transposition evidence");

  double err = 0;
  for (int i = 0; i < 8; ++i) {
    int j = i == 4 ? 5 : i == 5 ? 4 : i;
    err = std::max(err, std::abs(m.u1[i] - u1p[i]));
    err = std::max(err, std::abs(m.u0[i] - u0p[j]));
  }
  for (int k = 0; k < 3; ++k) {
    err = std::max(err, std::abs(m.S[k] - SF[k]));
    err = std::max(err, std::abs(m.F[k] - SF[k]));
  }
  o.expect(err <= 1e-6, "weights/S/F within 1e-6, max err " + fmt(err));
  o.expect(dt < 1.0, "runtime " + fmt(dt));
  o.note << "max abs err " << fmt(err) << ", " << fmt(dt) << " s; reference u0 rows 5/6 swapped "
         << "(listed order misses F by " << fmt(miss_listed) << ")";
}

// 2 ----------------------------------------------------------------------
void w1_forms(Outcome& o) {
  const Dataset& w1 = fixtures::w1();
  auto rep = classify(w1);
  o.expect(rep.marginals.has_value(), "W1 overlaps");
  if (!rep.marginals) return;
  const Vector& u1 = rep.marginals->u1;
  const Vector& u0 = rep.marginals->u0;
  // exact recomputation: u1 = (3/4, 1/4), u0 = (2/5, 1/10, 1/2)
  const double eu[] = {0.75, 0.25, 0.4, 0.1, 0.5};
  double werr = 0;
  for (int i = 0; i < 2; ++i) werr = std::max(werr, std::abs(u1[i] - eu[i]));
  for (int i = 0; i < 3; ++i) werr = std::max(werr, std::abs(u0[i] - eu[2 + i]));
  o.expect(werr < 1e-9, "original-form weights");

  Matrix x = w1.x();
  RowVector S = eu[0] * x.row(0) + eu[1] * x.row(1);
  Matrix v_exact(5, 3);
  for (int i = 0; i < 5; ++i) v_exact.row(i) = eu[i] * (x.row(i) - S);
  Matrix v = interim_form(w1);
  double verr = (v - v_exact).cwiseAbs().maxCoeff();
  o.expect(verr < 1e-9, "V vs exact, err " + fmt(verr));

  const double rounded[5][3] = {{.75, .375, .75},
                                {-.75, -.375, -.75},
                                {.16, .00, -1.44},
                                {-.16, .05, -.51},
                                {.00, -.05, 1.95}};
  double perr = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j) perr = std::max(perr, std::abs(v(i, j) - rounded[i][j]));
  o.expect(perr <= 0.005, "V vs two-decimal reference values");

  auto sf = to_standard_form(w1);
  Matrix tmpl = oracle::lambda_template(1, 2);
  double lerr = (sf.lambda - tmpl).cwiseAbs().maxCoeff();
  o.expect(sf.d1 == 1 && sf.d0 == 2, "shape");
  o.expect(lerr < 1e-9, "Lambda pattern, err " + fmt(lerr));
  o.expect(sf.lambda.array().round().matrix() == tmpl, "Lambda rounds to the 0/+-1 pattern");
  double uerr = std::max((sf.u1.array() - 0.5).abs().maxCoeff(),
                         (sf.u0.array() - 1.0 / 3).abs().maxCoeff());
  o.expect(uerr < 1e-9, "standard weights");
  o.note << "V err " << fmt(verr) << ", Lambda err " << fmt(lerr) << ", weight err "
         << fmt(std::max(werr, uerr));
}

// 3 ----------------------------------------------------------------------
void four_way(Outcome& o) {
  auto s1 = classify(line({-1, 1, 0}, {1, 1, 0})).status;
  auto s2 = classify(line({0, 0}, {1, 0})).status;
  auto s3 = classify(line({1, 0}, {1, 0})).status;
  Matrix x(3, 2);
  x << -1, 0, 1, 0, 0, 0;
  auto s4 = classify(Dataset::from_rows(x, {1, 1, 0})).status;
  o.expect(s1 == Status::Overlap, "1D overlap");
  o.expect(s2 == Status::QuasiSeparation, "doubleton");
  o.expect(s3 == Status::CompleteSeparation, "disjoint singletons");
  o.expect(s4 == Status::QuasiSeparation, "1D overlap in 2D");
  o.note << to_string(s1) << ", " << to_string(s2) << ", " << to_string(s3) << ", embedded "
         << to_string(s4);
}

// 4 ----------------------------------------------------------------------
void lattice_counts(Outcome& o) {
  struct Row {
    const char* basis;
    Location loc;
    int type2;
    std::vector<std::pair<std::string, int>> ids;
  };
  const std::vector<Row> rows = {
      {"c", Location::Bottom, 14, {{"L2", 1}, {"L3", 3}, {"L8", 1}, {"L10", 9}}},
      {"c", Location::Middle, 14, {{"L1", 1}, {"L4", 3}, {"L7", 6}, {"L9", 3}, {"L11", 1}}},
      {"d", Location::Bottom, 14, {{"L6", 4}, {"L11", 2}, {"L13", 8}}},
      {"d", Location::Middle, 14, {{"L5", 4}, {"L10", 8}, {"L12", 2}}},
      {"j", Location::Bottom, 1, {{"L17", 1}}},
      {"j", Location::Middle, 1, {{"L14", 1}}},
      {"k", Location::Bottom, 1, {{"L15", 1}}},
      {"k", Location::Middle, 1, {{"L16", 1}}},
      {"l", Location::Bottom, 1, {{"L16", 1}}},
      {"l", Location::Middle, 1, {{"L17", 1}}},
  };
  auto t0 = std::chrono::steady_clock::now();
  int exact = 0;
  for (const auto& r : rows) {
    auto rep = lattice_search(r.basis, r.loc, 3);
    auto ids = rep.ids_found;
    auto want = r.ids;
    std::sort(ids.begin(), ids.end());
    std::sort(want.begin(), want.end());
    bool ok = rep.overlap_count == 50 && rep.type2_count == r.type2 && rep.new_count == 0 &&
              ids == want;
    o.expect(ok, std::string(r.basis) + " " + to_string(r.loc));
    exact += ok;
  }
  double dt = seconds_since(t0);
  o.expect(dt < 60.0, "runtime");
  o.note << exact << "/10 rows exact, " << fmt(dt) << " s";
}

// 5 ----------------------------------------------------------------------
// Minimality confirmed a second way: in its own span the core is not LP
// separable and every single removal is.
bool lp_minimal(const Dataset& core) {
  auto in_span = [](const Dataset& d) {
    return d.n_case() > 0 && d.n_noncase() > 0 &&
           (span_dimension(d) == 0 || !lp_separation(project_to_span(d)).separated);
  };
  if (!in_span(core)) return false;
  for (Index i = 0; i < core.n(); ++i)
    if (in_span(core.without(i))) return false;
  return true;
}

void deflation_bounds(Outcome& o) {
  std::mt19937_64 rng(20240501);
  int done = 0, tried = 0, lp_checked = 0, type2 = 0;
  while (done < 1000) {
    ++tried;
    int d = 1 + static_cast<int>(rng() % 4);
    Index n = d + 2 + static_cast<Index>(rng() % (19 - d));
    auto ds = (tried % 3 == 0) ? oracle::random_lattice_dataset(rng, n, d)
                               : oracle::random_dataset(rng, n, d);
    if (classify(ds).status != Status::Overlap) continue;
    ++done;
    auto m = (done % 2) ? deflate(ds) : deflate_seeded(ds, rng());
    type2 += m.kind == ConfigKind::TypeII;
    bool bounds = m.d_eff + 2 <= m.n && m.n <= 2 * (m.d_eff + 1);
    o.expect(bounds, "size bounds, run " + std::to_string(done));
    o.expect(verify_minimal(m.data), "verify_minimal, run " + std::to_string(done));
    if (done % 4 == 0) {
      ++lp_checked;
      o.expect(lp_minimal(m.data), "LP minimality, run " + std::to_string(done));
    }
  }
  o.note << done << " datasets (" << type2 << " Type II cores), " << lp_checked
         << " cross-checked by LP";
}

// 6 ----------------------------------------------------------------------
void type1_removals(Outcome& o) {
  int removals = 0;
  for (int d = 0; d <= 5; ++d)
    for (int d1 = 0; d1 <= d; ++d1) {
      auto L = make_standard_type1(d1, d - d1);
      int r0 = oracle::extended_rank_rr(L.x());
      for (Index i = 0; i < L.n(); ++i) {
        auto rest = L.without(i);
        auto s = classify(rest).status;
        ++removals;
        o.expect(s == Status::CompleteSeparation || s == Status::NoMixedResults,
                 "status after removal");
        o.expect(oracle::extended_rank_rr(rest.x()) == r0, "rank kept");
      }
    }
  o.note << removals << " removals over 21 shapes";
}

// 7 ----------------------------------------------------------------------
void type1_forms(Outcome& o) {
  std::mt19937_64 rng(77);
  for (int d = 0; d <= 5; ++d) {
    std::vector<Dataset> forms;
    for (int d1 = 0; d1 <= d; ++d1) forms.push_back(make_standard_type1(d1, d - d1));
    // classes under the equivalence test, responses not flipped
    std::vector<int> cls(forms.size(), -1);
    int classes = 0;
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (cls[i] >= 0) continue;
      cls[i] = classes;
      for (std::size_t j = i + 1; j < forms.size(); ++j)
        if (cls[j] < 0 && equivalent(forms[i], forms[j], false)) cls[j] = classes;
      ++classes;
    }
    o.expect(classes == d + 1, "d+1 classes for d=" + std::to_string(d));
    for (const auto& f : forms)
      o.expect(equivalent(f, shuffle(oracle::random_affine(rng, f), rng()), false),
               "equivalence sees through a disguise");
  }
  double worst = 0;
  int trials = 0;
  for (int d = 0; d <= 5; ++d)
    for (int d1 = 0; d1 <= d; ++d1) {
      Matrix tmpl = oracle::lambda_template(d1, d - d1);
      auto L = make_standard_type1(d1, d - d1);
      for (int t = 0; t < 50; ++t) {
        auto sf = to_standard_form(oracle::random_affine(rng, L));
        double err = (sf.lambda - tmpl).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        ++trials;
      }
    }
  o.expect(worst < 1e-9, "Lambda recovery, worst " + fmt(worst));
  o.note << "d+1 classes for d=0..5; " << trials << " disguises, worst Lambda err " << fmt(worst);
}

// 8 ----------------------------------------------------------------------
void concordance(Outcome& o) {
  std::mt19937_64 rng(8080);
  std::map<Status, int> seen;
  int disagreements = 0;
  for (int t = 0; t < 500; ++t) {
    int d = 1 + static_cast<int>(rng() % 4);
    Index n = 2 + static_cast<Index>(rng() % 14);
    auto ds = (t % 2) ? oracle::random_lattice_dataset(rng, n, d)
                      : oracle::random_dataset(rng, n, d);
    auto s = classify(ds).status;
    ++seen[s];
    bool overlap = s == Status::Overlap;
    bool ok = overlap == !lp_separation(ds).separated && overlap == origin_interior_lp(ds);
    disagreements += !ok;
  }
  o.expect(disagreements == 0, std::to_string(disagreements) + " small-data disagreements");
  int quasi = 0;
  Index largest = 0;
  for (int t = 0; t < 20; ++t) {
    Index n = static_cast<Index>(std::lround(50.0 * std::pow(200.0, t / 19.0)));
    int d = 1 + t % 4;
    auto q = make_quasi(n, d, 1000 + t);
    largest = std::max(largest, q.n());
    auto s = classify(q).status;
    quasi += s == Status::QuasiSeparation;
    bool ok = !(s == Status::Overlap) == lp_separation(q).separated &&
              (s == Status::Overlap) == origin_interior_lp(q);
    o.expect(ok, "rquaz concordance n=" + std::to_string(n));
  }
  o.expect(quasi == 20, "rquaz outputs quasi-separated");
  o.note << "500 small (" << seen[Status::Overlap] << " overlap, " << seen[Status::QuasiSeparation]
         << " quasi, " << seen[Status::CompleteSeparation] << " complete), " << quasi
         << "/20 rquaz quasi, largest n " << largest;
}

// 9 ----------------------------------------------------------------------
void added_fixture(Outcome& o) {
  const Dataset& a1 = fixtures::a1();
  auto b = make_standard_type1(0, 1);
  auto composed = add_compose({b, b, b});
  o.expect(classify(a1).status == Status::Overlap, "overlap");
  o.expect(verify_minimal(a1), "minimal");
  o.expect(config_kind(a1) == ConfigKind::TypeII, "Type II");
  o.expect(span_dimension(a1) == 5 && a1.n() == 9, "d_eff 5, n 9");
  o.expect(equivalent(a1, composed), "matches +1^3 composition");
  o.note << "d_eff " << span_dimension(a1) << ", n " << a1.n() << ", kind "
         << to_string(config_kind(a1));
}

// 10 ---------------------------------------------------------------------
void partitions(Outcome& o) {
  const int want[] = {1, 2, 4, 6, 10};
  std::ostringstream got;
  for (int d = 1; d <= 5; ++d) {
    int g = static_cast<int>(partitions_min2(d + 1).size());
    got << (d > 1 ? "," : "") << g;
    o.expect(g == want[d - 1], "g(" + std::to_string(d + 1) + ")");
    o.expect(static_cast<int>(add_formats(d).size()) == g, "add formats");
  }
  auto added = enumerate_added(3);
  std::set<std::string> ids;
  for (const auto& e : added) ids.insert(e.id);
  o.expect(added.size() == 9, "9 classes");
  o.expect(ids == std::set<std::string>{"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9"},
           "classes are A1-A9");
  for (std::size_t i = 0; i < added.size(); ++i)
    for (std::size_t j = i + 1; j < added.size(); ++j)
      o.expect(!equivalent(added[i].data, added[j].data), "pairwise inequivalent");
  o.note << "g = " << got.str() << "; enumerate_added(3) = " << added.size() << " classes";
}

// 11 ---------------------------------------------------------------------
void numerics(Outcome& o) {
  std::mt19937_64 rng(1111);
  std::normal_distribution<double> g;
  double worst_g = 0, worst_h = 0;
  for (int t = 0; t < 50; ++t) {
    Index m = 4 + static_cast<Index>(rng() % 20);
    Index d = 1 + static_cast<Index>(rng() % 4);
    Matrix delta(m, d);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < d; ++j) delta(i, j) = g(rng);
    // large enough to put some arguments below the knot
    Vector lam(d);
    for (Index j = 0; j < d; ++j) lam(j) = (t % 2 ? 1.5 : 0.3) * g(rng);
    DualValue dv = el_dual(DenseDeltas(delta), lam);
    Vector fg = oracle::fd_gradient(delta, lam);
    Matrix fh = oracle::fd_hessian(delta, lam);
    worst_g = std::max(worst_g, (dv.grad - fg).norm() / std::max(1.0, fg.norm()));
    worst_h = std::max(worst_h, (dv.hess - fh).norm() / std::max(1.0, fh.norm()));
  }
  o.expect(worst_g <= 1e-5 && worst_h <= 1e-5, "finite differences");
  int chords = 0;
  double worst_gap = 0;
  for (int t = 0; t < 100; ++t) {
    Index m = 3 + static_cast<Index>(rng() % 15);
    Index d = 1 + static_cast<Index>(rng() % 4);
    Matrix delta(m, d);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < d; ++j) delta(i, j) = g(rng);
    DenseDeltas D(delta);
    Vector a(d), b(d);
    for (Index j = 0; j < d; ++j) {
      a(j) = 2.0 * g(rng);
      b(j) = 2.0 * g(rng);
    }
    double fa = el_dual(D, a).f, fb = el_dual(D, b).f;
    for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      double fm = el_dual(D, s * a + (1 - s) * b).f;
      double gap = fm - (s * fa + (1 - s) * fb);
      worst_gap = std::max(worst_gap, gap);
      o.expect(gap <= 1e-9 * std::max({1.0, std::abs(fa), std::abs(fb)}), "chord");
    }
    ++chords;
  }
  o.note << "FD rel err grad " << fmt(worst_g) << ", Hessian " << fmt(worst_h) << "; " << chords
         << " chord instances, worst gap " << fmt(worst_gap);
}

// 12 ---------------------------------------------------------------------
void finney(Outcome& o) {
  const char* env = std::getenv("HULLCHECK_FINNEY");
  std::string path = env ? env : "";
  if (path.empty()) {
    o.note << "skipped: Finney (1947) data not supplied (set HULLCHECK_FINNEY to a CSV)";
    return;
  }
  if (!std::filesystem::exists(path)) {
    o.expect(false, "HULLCHECK_FINNEY file not found: " + path);
    return;
  }
  auto data = load_dataset_file(path);
  o.expect(data.n() == 39, "39 runs");
  if (data.n() != 39) return;
  auto without = [&](std::vector<int> runs) {
    std::vector<Index> keep;
    for (Index i = 0; i < data.n(); ++i)
      if (std::find(runs.begin(), runs.end(), i + 1) == runs.end()) keep.push_back(i);
    return classify(data.subset(keep)).status;
  };
  o.expect(classify(data).status == Status::Overlap, "full data overlap");
  auto s39 = without({4, 18, 39}), s29 = without({4, 18, 29}), s24 = without({4, 18, 24});
  o.expect(s39 != Status::Overlap, "4,18,39 destroys overlap");
  o.expect(s29 == Status::Overlap, "4,18,29 keeps overlap");
  o.expect(s24 == Status::Overlap, "4,18,24 keeps overlap");
  o.note << "without 4,18,39: " << to_string(s39) << "; 4,18,29: " << to_string(s29)
         << "; 4,18,24: " << to_string(s24);
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<std::pair<const char*, Check>> checks = {
      {"W0 overlap weights", w0_weights},
      {"W1 interim and standard form", w1_forms},
      {"four-way classifier", four_way},
      {"3D lattice search counts", lattice_counts},
      {"deflation size bounds", deflation_bounds},
      {"single removals from Type I", type1_removals},
      {"Type I count and standard form recovery", type1_forms},
      {"oracle concordance", concordance},
      {"added fixture A1", added_fixture},
      {"partitions and added classes", partitions},
      {"dual derivatives and convexity", numerics},
      {"Finney triads", finney},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      checks[i].second(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first,
                o.note.str().c_str(), seconds_since(t0));
  }
  std::printf("%d of %zu checks failed\n", failed, checks.size());
  return failed ? 1 : 0;
}
