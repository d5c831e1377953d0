#include "hullcheck.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hullcheck/catalog.hpp"
#include "hullcheck/dataset.hpp"
#include "hullcheck/error.hpp"
#include "hullcheck/forms.hpp"
#include "hullcheck/minimal.hpp"
#include "hullcheck/render.hpp"
#include "hullcheck/status.hpp"

struct hc_dataset {
  hullcheck::Dataset data;
};

namespace {

using hullcheck::Dataset;
using hullcheck::ErrorCode;
using hullcheck::Index;
using json = nlohmann::ordered_json;

thread_local std::string g_last_error;

hc_error map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return HC_E_PARSE;
    case ErrorCode::Validation: return HC_E_VALIDATION;
    case ErrorCode::NoMixedResults: return HC_E_NO_MIXED;
    case ErrorCode::NonFinite: return HC_E_NONFINITE;
    case ErrorCode::DegenerateWeights: return HC_E_DEGENERATE;
    case ErrorCode::NotOverlapping: return HC_E_NOT_OVERLAPPING;
    case ErrorCode::NotMinimal: return HC_E_NOT_MINIMAL;
    case ErrorCode::NotTypeI: return HC_E_NOT_TYPE1;
    case ErrorCode::SingularVminus: return HC_E_SINGULAR;
    case ErrorCode::BudgetExceeded: return HC_E_BUDGET;
    case ErrorCode::CompositionFailed: return HC_E_COMPOSITION;
    case ErrorCode::UnknownBasis: return HC_E_UNKNOWN_BASIS;
    case ErrorCode::BadShape: return HC_E_BAD_SHAPE;
    case ErrorCode::DimensionUnsupported: return HC_E_DIMENSION;
    case ErrorCode::InvalidArgument: return HC_E_INVALID_ARGUMENT;
    case ErrorCode::Io: return HC_E_IO;
  }
  return HC_E_INTERNAL;
}

hc_error fail(hc_error code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <class F>
hc_error guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return HC_OK;
  } catch (const hullcheck::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(HC_E_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HC_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HC_E_INTERNAL, e.what());
  }
}

void require(const void* p, const char* name) {
  if (!p) throw hullcheck::Error(ErrorCode::InvalidArgument, std::string(name) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const json& j) {
  if (out) *out = dup(j.dump(2));
}

hc_dataset* wrap(Dataset d) { return new hc_dataset{std::move(d)}; }

double eps_of(const hc_options* o) { return o ? o->epsilon : hullcheck::kDefaultEpsilon; }

hullcheck::SolverOptions solver_of(const hc_options* o) {
  hullcheck::SolverOptions s;
  if (o) {
    s.max_iter = o->max_iter;
    s.decrement_tol = o->newton_tol;
    s.grad_tol = o->grad_tol;
  }
  return s;
}

json vec(const hullcheck::Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json vec(const hullcheck::RowVector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json mat(const hullcheck::Matrix& m) {
  json a = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

std::vector<std::string> rids_with(const Dataset& d, int response) {
  std::vector<std::string> out;
  for (Index i : d.rows_with(response)) out.push_back(d.rid()[i]);
  return out;
}

json classify_json(const Dataset& d, const hullcheck::OverlapReport& r) {
  json j;
  j["status"] = hullcheck::to_string(r.status);
  j["n"] = d.n();
  j["d"] = d.dim();
  j["epsilon"] = r.epsilon;
  j["rank"] = r.rank ? json(*r.rank) : json(nullptr);
  j["w_tot"] = r.w_tot ? json(*r.w_tot) : json(nullptr);
  if (r.solution) {
    j["iterations"] = r.solution->iterations;
    j["converged"] = r.solution->converged;
    j["lambda"] = vec(r.solution->lambda);
  }
  if (r.marginals) {
    j["case_rids"] = rids_with(d, 1);
    j["u1"] = vec(r.marginals->u1);
    j["noncase_rids"] = rids_with(d, 0);
    j["u0"] = vec(r.marginals->u0);
    j["S"] = vec(r.marginals->S);
    j["F"] = vec(r.marginals->F);
  }
  return j;
}

hc_status map_status(hullcheck::Status s) {
  switch (s) {
    case hullcheck::Status::Overlap: return HC_OVERLAP;
    case hullcheck::Status::QuasiSeparation: return HC_QUASI;
    case hullcheck::Status::CompleteSeparation: return HC_COMPLETE;
    case hullcheck::Status::NoMixedResults: break;
  }
  return HC_NO_MIXED;
}

std::string trim(std::string s) {
  const char* ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const hullcheck::CatalogEntry& entry_or_throw(const std::string& id) {
  const auto* e = hullcheck::find_entry(id);
  if (!e) throw hullcheck::Error(ErrorCode::InvalidArgument, "unknown catalog id '" + id + "'");
  return *e;
}

hullcheck::RenderOptions render_opts(int iso, double icon_size, int grid) {
  if (!(icon_size > 0))
    throw hullcheck::Error(ErrorCode::InvalidArgument, "icon size must be positive");
  hullcheck::RenderOptions o;
  o.projection = iso ? hullcheck::Projection::Iso : hullcheck::Projection::Xy;
  o.icon_size = icon_size;
  o.grid = grid != 0;
  return o;
}

}  // namespace

extern "C" {

void hc_options_default(hc_options* opts) {
  if (!opts) return;
  hullcheck::SolverOptions s;
  opts->epsilon = hullcheck::kDefaultEpsilon;
  opts->max_iter = s.max_iter;
  opts->newton_tol = s.decrement_tol;
  opts->grad_tol = s.grad_tol;
}

const char* hc_last_error(void) { return g_last_error.c_str(); }

void hc_string_free(char* s) { std::free(s); }

hc_error hc_dataset_read_file(const char* path, hc_dataset** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = wrap(hullcheck::load_dataset_file(path));
  });
}

hc_error hc_dataset_read_buffer(const char* text, int json_format, hc_dataset** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = wrap(hullcheck::parse_dataset(
        text, json_format ? hullcheck::Format::Json : hullcheck::Format::Csv));
  });
}

hc_error hc_dataset_from_arrays(size_t n, size_t d, const double* x, const int* y,
                                hc_dataset** out) {
  return guard([&] {
    require(out, "out");
    if (n > 0) {
      require(y, "y");
      if (d > 0) require(x, "x");
    }
    hullcheck::Matrix m(static_cast<Index>(n), static_cast<Index>(d));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < d; ++j) m(i, j) = x[i * d + j];
    *out = wrap(Dataset::from_rows(std::move(m), std::vector<int>(y, y + n)));
  });
}

void hc_dataset_free(hc_dataset* data) { delete data; }

size_t hc_dataset_rows(const hc_dataset* data) {
  return data ? static_cast<size_t>(data->data.n()) : 0;
}

size_t hc_dataset_cols(const hc_dataset* data) {
  return data ? static_cast<size_t>(data->data.dim()) : 0;
}

hc_error hc_dataset_to_text(const hc_dataset* data, int json_format, char** out) {
  return guard([&] {
    require(data, "data");
    require(out, "out");
    *out = dup(json_format ? hullcheck::to_json(data->data) : hullcheck::to_csv(data->data));
  });
}

hc_error hc_dataset_shuffle(const hc_dataset* data, uint64_t seed, hc_dataset** out) {
  return guard([&] {
    require(data, "data");
    require(out, "out");
    *out = wrap(hullcheck::shuffle(data->data, seed));
  });
}

hc_error hc_fixture(const char* name, hc_dataset** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    std::string n = name;
    namespace fx = hullcheck::fixtures;
    if (n == "w0") *out = wrap(fx::w0());
    else if (n == "w1") *out = wrap(fx::w1());
    else if (n == "w2") *out = wrap(fx::w2());
    else if (n == "a1") *out = wrap(fx::a1());
    else throw hullcheck::Error(ErrorCode::InvalidArgument, "unknown fixture '" + n + "'");
  });
}

hc_error hc_classify(const hc_dataset* data, const hc_options* opts, hc_status* status,
                     char** report_json) {
  return guard([&] {
    require(data, "data");
    auto r = hullcheck::classify(data->data, eps_of(opts), solver_of(opts));
    if (status) *status = map_status(r.status);
    put(report_json, classify_json(data->data, r));
  });
}

hc_error hc_lp_separation(const hc_dataset* data, int* separated, char** report_json) {
  return guard([&] {
    require(data, "data");
    auto v = hullcheck::lp_separation(data->data);
    if (separated) *separated = v.separated ? 1 : 0;
    json j;
    j["separated"] = v.separated;
    j["lp_value"] = v.lp_value;
    j["intercept"] = v.intercept;
    j["direction"] = vec(v.direction);
    put(report_json, j);
  });
}

hc_error hc_origin_interior(const hc_dataset* data, int* interior) {
  return guard([&] {
    require(data, "data");
    require(interior, "interior");
    *interior = hullcheck::origin_interior_lp(data->data) ? 1 : 0;
  });
}

hc_error hc_compare_lp(const hc_dataset* data, const hc_options* opts, int* agree,
                       char** report_json) {
  return guard([&] {
    require(data, "data");
    const Dataset& d = data->data;
    auto r = hullcheck::classify(d, eps_of(opts), solver_of(opts));
    bool overlap = r.status == hullcheck::Status::Overlap;
    bool separated = true, interior = false;
    if (r.status != hullcheck::Status::NoMixedResults) {
      separated = hullcheck::lp_separation(d).separated;
      interior = hullcheck::origin_interior_lp(d);
    }
    bool ok = overlap == !separated && overlap == interior;
    if (agree) *agree = ok ? 1 : 0;
    json j;
    j["status"] = hullcheck::to_string(r.status);
    j["w_tot"] = r.w_tot ? json(*r.w_tot) : json(nullptr);
    j["lp_separated"] = separated;
    j["origin_interior"] = interior;
    j["agree"] = ok;
    put(report_json, j);
  });
}

hc_error hc_deflate(const hc_dataset* data, int use_seed, uint64_t seed, const hc_options* opts,
                    hc_dataset** core, char** sidecar_json) {
  return guard([&] {
    require(data, "data");
    auto m = use_seed ? hullcheck::deflate_seeded(data->data, seed, eps_of(opts))
                      : hullcheck::deflate(data->data, {}, eps_of(opts));
    json j;
    j["kind"] = hullcheck::to_string(m.kind);
    j["d_eff"] = m.d_eff;
    j["n"] = m.n;
    j["doubletons"] = m.doubleton_count;
    j["rids"] = m.data.rid();
    put(sidecar_json, j);
    if (core) *core = wrap(std::move(m.data));
  });
}

hc_error hc_removal_depths(const hc_dataset* data, int k_max, const hc_options* opts,
                           char** report_json) {
  return guard([&] {
    require(data, "data");
    auto r = hullcheck::removal_depths(data->data, k_max, eps_of(opts));
    json j;
    j["k_max"] = r.k_max;
    j["n_overlap"] = r.n_overlap ? json(*r.n_overlap) : json(nullptr);
    j["n_complete"] = r.n_complete ? json(*r.n_complete) : json(nullptr);
    j["witness_overlap"] = r.witness_overlap;
    j["witness_complete"] = r.witness_complete;
    put(report_json, j);
  });
}

hc_error hc_interim_form(const hc_dataset* data, const hc_options* opts, char** csv) {
  return guard([&] {
    require(data, "data");
    require(csv, "csv");
    Dataset ordered = hullcheck::case_first(data->data);
    hullcheck::Matrix v = hullcheck::interim_form(ordered, eps_of(opts));
    // Reuse the dataset writer for identical number formatting.
    Dataset out(v, ordered.y(), ordered.rid());
    std::string text = hullcheck::to_csv(out);
    std::string header = "rid";
    for (Index c = 0; c < v.cols(); ++c) header += ",v" + std::to_string(c + 1);
    header += ",y";
    *csv = dup(header + text.substr(text.find('\n')));
  });
}

hc_error hc_standard_form(const hc_dataset* data, const hc_options* opts, char** report_json) {
  return guard([&] {
    require(data, "data");
    auto f = hullcheck::to_standard_form(data->data, eps_of(opts));
    json j;
    j["d1"] = f.d1;
    j["d0"] = f.d0;
    j["lambda"] = mat(f.lambda);
    j["u1"] = vec(f.u1);
    j["u0"] = vec(f.u0);
    put(report_json, j);
  });
}

hc_error hc_equidistant_form(const hc_dataset* data, const hc_options* opts, hc_dataset** out) {
  return guard([&] {
    require(data, "data");
    require(out, "out");
    auto f = hullcheck::to_standard_form(data->data, eps_of(opts));
    *out = wrap(hullcheck::make_equidistant(f.d1, f.d0));
  });
}

hc_error hc_gen_standard(int d1, int d0, hc_dataset** out) {
  return guard([&] {
    require(out, "out");
    if (d1 < 0 || d0 < 0) throw hullcheck::Error(ErrorCode::BadShape, "d1 and d0 must be >= 0");
    *out = wrap(hullcheck::make_standard_type1(d1, d0));
  });
}

hc_error hc_gen_equidistant(int d1, int d0, hc_dataset** out) {
  return guard([&] {
    require(out, "out");
    if (d1 < 0 || d0 < 0 || d1 + d0 < 1)
      throw hullcheck::Error(ErrorCode::BadShape, "need d1, d0 >= 0 and d1 + d0 >= 1");
    *out = wrap(hullcheck::make_equidistant(d1, d0));
  });
}

hc_error hc_gen_unit_simplex(int n, char** csv) {
  return guard([&] {
    require(csv, "csv");
    if (n < 0) throw hullcheck::Error(ErrorCode::BadShape, "n must be >= 0");
    hullcheck::Matrix m = hullcheck::unit_simplex(n);
    std::ostringstream os;
    os.precision(17);
    for (Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << "x" << c + 1;
    os << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(i, c);
      os << '\n';
    }
    *csv = dup(os.str());
  });
}

hc_error hc_gen_quasi(size_t n, int d, uint64_t seed, hc_dataset** out) {
  return guard([&] {
    require(out, "out");
    *out = wrap(hullcheck::make_quasi(static_cast<Index>(n), d, seed));
  });
}

hc_error hc_gen_add(const char* spec, hc_dataset** out) {
  return guard([&] {
    require(spec, "spec");
    require(out, "out");
    std::vector<Dataset> parts;
    for (std::string tok : split(spec, '+')) {
      bool flip = false;
      while (!tok.empty() && tok.back() == '\'') {
        flip = !flip;
        tok.pop_back();
      }
      const auto& e = entry_or_throw(trim(tok));
      parts.push_back(flip ? e.data.flipped() : e.data);
    }
    if (parts.size() < 2)
      throw hullcheck::Error(ErrorCode::InvalidArgument, "add needs at least two components");
    *out = wrap(hullcheck::add_compose(parts));
  });
}

hc_error hc_catalog_list(char** out) {
  return guard([&] {
    require(out, "out");
    *out = dup(hullcheck::catalog_to_json(hullcheck::catalog()));
  });
}

hc_error hc_catalog_entry(const char* id, hc_dataset** out) {
  return guard([&] {
    require(id, "id");
    require(out, "out");
    *out = wrap(entry_or_throw(id).data);
  });
}

hc_error hc_catalog_search(const char* basis, int middle, int dimension, const hc_options* opts,
                           char** report_json) {
  return guard([&] {
    require(basis, "basis");
    auto r = hullcheck::lattice_search(
        basis, middle ? hullcheck::Location::Middle : hullcheck::Location::Bottom, dimension,
        eps_of(opts));
    json j;
    j["basis"] = r.basis;
    j["location"] = hullcheck::to_string(r.location);
    j["dimension"] = r.dimension;
    j["overlap"] = r.overlap_count;
    j["type2"] = r.type2_count;
    j["new"] = r.new_count;
    json ids = json::array();
    for (const auto& [id, count] : r.ids_found) ids.push_back({{"id", id}, {"repeats", count}});
    j["ids"] = ids;
    put(report_json, j);
  });
}

hc_error hc_identify(const hc_dataset* data, char** report_json) {
  return guard([&] {
    require(data, "data");
    auto kind = hullcheck::config_kind(data->data);
    auto m = hullcheck::identify(data->data);
    json j;
    j["id"] = m.id.empty() ? json(nullptr) : json(m.id);
    j["flip"] = m.flip;
    j["kind"] = hullcheck::to_string(kind);
    j["d_eff"] = hullcheck::span_dimension(data->data);
    j["n"] = data->data.n();
    put(report_json, j);
  });
}

hc_error hc_render_svg(const hc_dataset* data, int iso, double icon_size, int grid, char** svg) {
  return guard([&] {
    require(data, "data");
    require(svg, "svg");
    *svg = dup(hullcheck::render_svg(data->data, render_opts(iso, icon_size, grid)));
  });
}

hc_error hc_render_catalog(const char* ids, int iso, double icon_size, int grid, char** svg) {
  return guard([&] {
    require(ids, "ids");
    require(svg, "svg");
    std::vector<std::pair<std::string, Dataset>> panels;
    for (const auto& id : split(ids, ',')) panels.emplace_back(id, entry_or_throw(id).data);
    if (panels.empty()) throw hullcheck::Error(ErrorCode::InvalidArgument, "no catalog ids");
    *svg = dup(hullcheck::render_gallery(panels, render_opts(iso, icon_size, grid)));
  });
}

}  // extern "C"
