// hullcheck command-line tool. Talks to the library through the C API only.

#include <glob.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hullcheck.h"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 64;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DatasetDeleter {
  void operator()(hc_dataset* d) const { hc_dataset_free(d); }
};
using DatasetPtr = std::unique_ptr<hc_dataset, DatasetDeleter>;

struct Text {
  char* p = nullptr;
  ~Text() { hc_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

void check(hc_error e, const std::string& what) {
  if (e != HC_OK) throw Failure(what + ": " + hc_last_error());
}

struct Globals {
  double eps = 1e-8;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  bool verbose = false;
  int max_iter = 0;
  double newton_tol = 0;
  double grad_tol = 0;

  hc_options options() const {
    hc_options o;
    hc_options_default(&o);
    o.epsilon = eps;
    if (max_iter > 0) o.max_iter = max_iter;
    if (newton_tol > 0) o.newton_tol = newton_tol;
    if (grad_tol > 0) o.grad_tol = grad_tol;
    return o;
  }
  bool json() const { return format == "json"; }
};

Globals g;

void emit(const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Failure("cannot write " + g.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

DatasetPtr load(const std::string& path) {
  hc_dataset* d = nullptr;
  check(hc_dataset_read_file(path.c_str(), &d), path);
  return DatasetPtr(d);
}

std::string dataset_text(const hc_dataset* d) {
  Text t;
  check(hc_dataset_to_text(d, g.json() ? 1 : 0, &t.p), "write");
  return t.str();
}

void emit_dataset(hc_dataset* raw) {
  DatasetPtr d(raw);
  emit(dataset_text(d.get()));
}

const char* status_name(hc_status s) {
  switch (s) {
    case HC_OVERLAP: return "Overlap";
    case HC_QUASI: return "QuasiSeparation";
    case HC_COMPLETE: return "CompleteSeparation";
    case HC_NO_MIXED: return "NoMixedResults";
  }
  return "?";
}

int cmd_status(const std::string& file) {
  auto d = load(file);
  hc_options o = g.options();
  hc_status s;
  Text report;
  check(hc_classify(d.get(), &o, &s, &report.p), file);
  std::string text = std::string(status_name(s)) + "\n";
  if (g.json() || g.verbose) text += report.str() + "\n";
  emit(text);
  return static_cast<int>(s);
}

int cmd_deflate(const std::string& file) {
  auto d = load(file);
  hc_options o = g.options();
  hc_dataset* core = nullptr;
  Text side;
  check(hc_deflate(d.get(), g.seed ? 1 : 0, g.seed.value_or(0), &o, &core, &side.p), file);
  emit_dataset(core);
  if (g.out.empty()) {
    std::cerr << side.str() << '\n';
  } else {
    std::ofstream f(g.out + ".json");
    if (!f) throw Failure("cannot write " + g.out + ".json");
    f << side.str() << '\n';
  }
  return 0;
}

int cmd_depth(const std::string& file, int kmax) {
  auto d = load(file);
  hc_options o = g.options();
  Text r;
  check(hc_removal_depths(d.get(), kmax, &o, &r.p), file);
  emit(r.str());
  return 0;
}

int cmd_forms(const std::string& which, const std::string& file) {
  auto d = load(file);
  hc_options o = g.options();
  Text t;
  if (which == "std") {
    check(hc_standard_form(d.get(), &o, &t.p), file);
    emit(t.str());
  } else if (which == "intrm") {
    check(hc_interim_form(d.get(), &o, &t.p), file);
    emit(t.str());
  } else {
    hc_dataset* e = nullptr;
    check(hc_equidistant_form(d.get(), &o, &e), file);
    emit_dataset(e);
  }
  return 0;
}

int cmd_gen(const std::string& kind, const std::vector<std::string>& args) {
  auto need = [&](std::size_t k) {
    if (args.size() != k)
      throw CLI::ValidationError("gen " + kind, "expects " + std::to_string(k) + " argument(s)");
  };
  auto num = [&](std::size_t i) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(args[i], &pos);
      if (pos != args[i].size()) throw std::invalid_argument(args[i]);
      return v;
    } catch (const std::exception&) {
      throw CLI::ValidationError("gen " + kind, "'" + args[i] + "' is not an integer");
    }
  };
  hc_dataset* d = nullptr;
  if (kind == "stdf") {
    need(2);
    check(hc_gen_standard(static_cast<int>(num(0)), static_cast<int>(num(1)), &d), "stdf");
  } else if (kind == "equid") {
    need(2);
    check(hc_gen_equidistant(static_cast<int>(num(0)), static_cast<int>(num(1)), &d), "equid");
  } else if (kind == "esimp") {
    need(1);
    Text t;
    check(hc_gen_unit_simplex(static_cast<int>(num(0)), &t.p), "esimp");
    emit(t.str());
    return 0;
  } else if (kind == "rquaz") {
    need(2);
    long long n = num(0);
    if (n < 0) throw CLI::ValidationError("gen rquaz", "N must be nonnegative");
    check(hc_gen_quasi(static_cast<size_t>(n), static_cast<int>(num(1)), g.seed.value_or(1), &d),
          "rquaz");
  } else {
    need(1);
    check(hc_gen_add(args[0].c_str(), &d), "add");
  }
  emit_dataset(d);
  return 0;
}

int cmd_catalog_list() {
  Text t;
  check(hc_catalog_list(&t.p), "catalog");
  emit(t.str());
  return 0;
}

int cmd_catalog_search(const std::string& basis, const std::string& location, int dimension) {
  hc_options o = g.options();
  Text t;
  check(hc_catalog_search(basis.c_str(), location == "middle" ? 1 : 0, dimension, &o, &t.p),
        "search");
  emit(t.str());
  return 0;
}

int cmd_identify(const std::string& file) {
  auto d = load(file);
  Text t;
  check(hc_identify(d.get(), &t.p), file);
  emit(t.str());
  return 0;
}

int cmd_render(const std::string& input, bool ids, bool xy, double icon, bool no_grid) {
  Text t;
  if (ids) {
    check(hc_render_catalog(input.c_str(), xy ? 0 : 1, icon, no_grid ? 0 : 1, &t.p), "render");
  } else {
    auto d = load(input);
    check(hc_render_svg(d.get(), xy ? 0 : 1, icon, no_grid ? 0 : 1, &t.p), input);
  }
  emit(t.str());
  return 0;
}

std::vector<std::string> expand_inputs(const std::string& pattern) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  std::error_code ec;
  if (fs::is_directory(pattern, ec)) {
    for (const auto& e : fs::directory_iterator(pattern)) {
      auto ext = e.path().extension().string();
      if (e.is_regular_file() && (ext == ".csv" || ext == ".json")) files.push_back(e.path());
    }
  } else {
    glob_t gl{};
    if (::glob(pattern.c_str(), 0, nullptr, &gl) == 0)
      for (std::size_t i = 0; i < gl.gl_pathc; ++i) files.emplace_back(gl.gl_pathv[i]);
    globfree(&gl);
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Failure("no input files match " + pattern);
  return files;
}

int cmd_compare_lp(const std::string& pattern) {
  hc_options o = g.options();
  std::string text;
  int disagreements = 0;  // errors count too
  for (const auto& f : expand_inputs(pattern)) {
    try {
      auto d = load(f);
      int agree = 0;
      Text r;
      check(hc_compare_lp(d.get(), &o, &agree, &r.p), f);
      if (!agree) ++disagreements;
      if (g.json()) {
        text += "{\"file\": \"" + f + "\", \"report\": " + r.str() + "}\n";
      } else {
        hc_status s;
        check(hc_classify(d.get(), &o, &s, nullptr), f);
        text += f + "\t" + status_name(s) + "\t" + (agree ? "agree" : "DISAGREE") + "\n";
      }
    } catch (const Failure& e) {
      ++disagreements;
      std::cerr << "hullcheck: " << e.what() << '\n';
      if (!g.json()) text += f + "\tERROR\t-\n";
    }
  }
  emit(text);
  return disagreements ? kExitError : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlap, separation and minimal-configuration tools for binary-response data"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--eps", g.eps, "Classification tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Write output to this file");
  app.add_option("--format", g.format, "Dataset output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--verbose", g.verbose, "Print the full report");
  app.add_option("--max-iter", g.max_iter, "Newton iteration cap")->check(CLI::PositiveNumber);
  app.add_option("--newton-tol", g.newton_tol, "Newton decrement tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--grad-tol", g.grad_tol, "Gradient tolerance")->check(CLI::PositiveNumber);

  std::string file, which, kind, basis, location = "bottom", input, pattern;
  std::vector<std::string> gen_args;
  int kmax = 2, dimension = 3;
  bool ids = false, xy = false, no_grid = false;
  double icon = 10.0;

  auto* status = app.add_subcommand("status", "Classify a data set");
  status->add_option("file", file)->required();

  auto* deflate = app.add_subcommand("deflate", "Reduce to a minimal overlapping core");
  deflate->add_option("file", file)->required();

  auto* depth = app.add_subcommand("depth", "Smallest removal sets that destroy overlap");
  depth->add_option("file", file)->required();
  depth->add_option("--kmax", kmax, "Largest removal set size")->check(CLI::PositiveNumber);

  auto* forms = app.add_subcommand("forms", "Standard, interim or equidistant form");
  forms->add_option("form", which)->required()->check(CLI::IsMember({"std", "intrm", "equid"}));
  forms->add_option("file", file)->required();

  auto* gen = app.add_subcommand("gen", "Generate configurations");
  gen->add_option("kind", kind)
      ->required()
      ->check(CLI::IsMember({"stdf", "equid", "esimp", "rquaz", "add"}));
  gen->add_option("args", gen_args);

  auto* cat = app.add_subcommand("catalog", "Catalog of minimal configurations");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "Print the catalog as JSON");
  auto* cat_search = cat->add_subcommand("search", "Lattice completeness search");
  cat_search->add_option("basis", basis)->required();
  cat_search->add_option("--location", location)->check(CLI::IsMember({"bottom", "middle"}));
  cat_search->add_option("--dim", dimension)->check(CLI::Range(2, 3));
  auto* cat_identify = cat->add_subcommand("identify", "Match a minimal configuration");
  cat_identify->add_option("file", file)->required();

  auto* render = app.add_subcommand("render", "SVG of a data set or of catalog entries");
  render->add_option("input", input, "Data file, or comma-separated ids with --ids")->required();
  render->add_flag("--ids", ids, "Input is a list of catalog ids");
  render->add_flag("--xy", xy, "Drop the third coordinate instead of the oblique view");
  render->add_option("--icon-size", icon)->check(CLI::PositiveNumber);
  render->add_flag("--no-grid", no_grid);

  auto* compare = app.add_subcommand("compare-lp", "Classifier against both LP oracles");
  compare->add_option("inputs", pattern, "Directory or glob")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*status) return cmd_status(file);
    if (*deflate) return cmd_deflate(file);
    if (*depth) return cmd_depth(file, kmax);
    if (*forms) return cmd_forms(which, file);
    if (*gen) return cmd_gen(kind, gen_args);
    if (*cat_list) return cmd_catalog_list();
    if (*cat_search) return cmd_catalog_search(basis, location, dimension);
    if (*cat_identify) return cmd_identify(file);
    if (*render) return cmd_render(input, ids, xy, icon, no_grid);
    if (*compare) return cmd_compare_lp(pattern);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "hullcheck: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
