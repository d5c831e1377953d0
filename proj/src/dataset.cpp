#include "hullcheck/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "hullcheck/error.hpp"

namespace hullcheck {

using nlohmann::json;

Dataset::Dataset(Matrix x, std::vector<int> y, std::vector<std::string> rid,
                 std::vector<double> counts)
    : x_(std::move(x)), y_(std::move(y)), rid_(std::move(rid)), counts_(std::move(counts)) {
  const auto n = static_cast<std::size_t>(x_.rows());
  if (y_.size() != n) throw ValidationError("y", "length " + std::to_string(y_.size()) +
                                                     " does not match " + std::to_string(n) + " rows");
  if (rid_.size() != n)
    throw ValidationError("rid", "length " + std::to_string(rid_.size()) + " does not match " +
                                     std::to_string(n) + " rows");
  if (!counts_.empty() && counts_.size() != n)
    throw ValidationError("count", "length " + std::to_string(counts_.size()) +
                                       " does not match " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i)
    if (y_[i] != 0 && y_[i] != 1)
      throw ValidationError("y", "row " + std::to_string(i + 1) + " is not 0 or 1");
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (!std::isfinite(counts_[i]) || counts_[i] < 0)
      throw ValidationError("count", "row " + std::to_string(i + 1) + " is negative or not finite");
  std::unordered_set<std::string> seen;
  for (const auto& r : rid_)
    if (!seen.insert(r).second) throw ValidationError("rid", "duplicate id '" + r + "'");
}

Dataset Dataset::from_rows(Matrix x, std::vector<int> y) {
  std::vector<std::string> rid(static_cast<std::size_t>(x.rows()));
  for (std::size_t i = 0; i < rid.size(); ++i) rid[i] = "r" + std::to_string(i + 1);
  return Dataset(std::move(x), std::move(y), std::move(rid));
}

Index Dataset::n_case() const { return std::count(y_.begin(), y_.end(), 1); }

bool Dataset::has_unit_counts() const {
  return std::all_of(counts_.begin(), counts_.end(), [](double c) { return c == 1.0; });
}

std::vector<Index> Dataset::rows_with(int response) const {
  std::vector<Index> out;
  for (Index i = 0; i < n(); ++i)
    if (y_[i] == response) out.push_back(i);
  return out;
}

namespace {

Matrix pick_rows(const Matrix& x, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), x.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) out.row(k) = x.row(rows[k]);
  return out;
}

}  // namespace

Matrix Dataset::case_matrix() const { return pick_rows(x_, rows_with(1)); }
Matrix Dataset::noncase_matrix() const { return pick_rows(x_, rows_with(0)); }

Dataset Dataset::subset(std::span<const Index> rows) const {
  std::vector<Index> r(rows.begin(), rows.end());
  std::vector<int> y;
  std::vector<std::string> rid;
  std::vector<double> counts;
  for (Index i : r) {
    if (i < 0 || i >= n()) throw Error(ErrorCode::InvalidArgument, "row index out of range");
    y.push_back(y_[i]);
    rid.push_back(rid_[i]);
    if (!counts_.empty()) counts.push_back(counts_[i]);
  }
  return Dataset(pick_rows(x_, r), std::move(y), std::move(rid), std::move(counts));
}

Dataset Dataset::without(Index row) const {
  std::vector<Index> keep;
  for (Index i = 0; i < n(); ++i)
    if (i != row) keep.push_back(i);
  return subset(keep);
}

Dataset Dataset::with_x(Matrix x) const {
  if (x.rows() != n()) throw Error(ErrorCode::BadShape, "row count changed");
  return Dataset(std::move(x), y_, rid_, counts_);
}

Dataset Dataset::flipped() const {
  std::vector<int> y(y_);
  for (auto& v : y) v = 1 - v;
  return Dataset(x_, std::move(y), rid_, counts_);
}

Index Dataset::find(const std::string& id) const {
  auto it = std::find(rid_.begin(), rid_.end(), id);
  return it == rid_.end() ? -1 : static_cast<Index>(it - rid_.begin());
}

// ---- parsing ---------------------------------------------------------------

namespace {

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && issp(s[b])) ++b;
  s.erase(0, b);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

Dataset parse_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) header = split_csv(line);
  }
  if (header.empty()) throw ParseError(lineno ? lineno : 1, "missing header");

  int rid_col = -1, y_col = -1, count_col = -1;
  std::vector<int> x_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& h = header[c];
    int ci = static_cast<int>(c);
    if (h == "rid") rid_col = ci;
    else if (h == "y") y_col = ci;
    else if (h == "count" || h == "counts") count_col = ci;
    else if (h.empty()) throw ParseError(lineno, "empty column name");
    else x_cols.push_back(ci);
  }
  if (y_col < 0) throw ParseError(lineno, "header has no 'y' column");

  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  std::vector<std::string> rid;
  std::vector<double> counts;
  std::vector<std::size_t> lines;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw ParseError(lineno, "expected " + std::to_string(header.size()) + " fields, found " +
                                   std::to_string(cells.size()));
    std::vector<double> row;
    for (int c : x_cols) {
      double v;
      if (!parse_double(cells[c], v))
        throw ParseError(lineno, "column '" + header[c] + "': not a number: '" + cells[c] + "'");
      row.push_back(v);
    }
    double yv;
    if (!parse_double(cells[y_col], yv)) throw ParseError(lineno, "y: not a number");
    if (yv != 0.0 && yv != 1.0) throw ValidationError("y", "must be 0 or 1", lineno);
    std::string id = rid_col >= 0 ? cells[rid_col] : "r" + std::to_string(rows.size() + 1);
    if (id.empty()) throw ValidationError("rid", "empty id", lineno);
    if (!seen.insert(id).second) throw ValidationError("rid", "duplicate id '" + id + "'", lineno);
    if (count_col >= 0) {
      double cv;
      if (!parse_double(cells[count_col], cv)) throw ParseError(lineno, "count: not a number");
      if (!std::isfinite(cv) || cv < 0) throw ValidationError("count", "must be >= 0", lineno);
      counts.push_back(cv);
    }
    rows.push_back(std::move(row));
    y.push_back(static_cast<int>(yv));
    rid.push_back(std::move(id));
  }
  Matrix x(static_cast<Index>(rows.size()), static_cast<Index>(x_cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < x_cols.size(); ++j) x(i, j) = rows[i][j];
  return Dataset(std::move(x), std::move(y), std::move(rid), std::move(counts));
}

Dataset parse_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(1, e.what());
  }
  try {
    if (!doc.is_object()) throw ValidationError("document", "expected an object");
    if (!doc.contains("x") || !doc["x"].is_array()) throw ValidationError("x", "missing array");
    if (!doc.contains("y") || !doc["y"].is_array()) throw ValidationError("y", "missing array");
    const auto& xs = doc["x"];
    Index n = static_cast<Index>(xs.size());
    Index d = n ? static_cast<Index>(xs[0].size()) : 0;
    Matrix x(n, d);
    for (Index i = 0; i < n; ++i) {
      if (!xs[i].is_array() || static_cast<Index>(xs[i].size()) != d)
        throw ValidationError("x", "row " + std::to_string(i + 1) + " is ragged");
      for (Index j = 0; j < d; ++j) x(i, j) = xs[i][j].get<double>();
    }
    std::vector<int> y;
    for (const auto& v : doc["y"]) {
      double yv = v.get<double>();
      if (yv != 0.0 && yv != 1.0) throw ValidationError("y", "must be 0 or 1", y.size() + 1);
      y.push_back(static_cast<int>(yv));
    }
    std::vector<std::string> rid;
    if (doc.contains("rid")) {
      for (const auto& v : doc["rid"]) rid.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else {
      for (Index i = 0; i < n; ++i) rid.push_back("r" + std::to_string(i + 1));
    }
    std::vector<double> counts;
    if (doc.contains("counts") && !doc["counts"].is_null())
      counts = doc["counts"].get<std::vector<double>>();
    return Dataset(std::move(x), std::move(y), std::move(rid), std::move(counts));
  } catch (const json::exception& e) {
    throw ValidationError("document", e.what());
  }
}

std::string format_number(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

Dataset load_dataset(std::istream& in, Format format) {
  return format == Format::Json ? parse_json(in) : parse_csv(in);
}

Dataset load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  auto dot = path.rfind('.');
  bool is_json = dot != std::string::npos && path.substr(dot) == ".json";
  return load_dataset(in, is_json ? Format::Json : Format::Csv);
}

Dataset parse_dataset(const std::string& text, Format format) {
  std::istringstream in(text);
  return load_dataset(in, format);
}

void write_csv(std::ostream& out, const Dataset& data) {
  bool with_counts = !data.counts().empty();
  out << "rid";
  for (Index j = 0; j < data.dim(); ++j) out << ",x" << j + 1;
  out << ",y";
  if (with_counts) out << ",count";
  out << '\n';
  for (Index i = 0; i < data.n(); ++i) {
    out << data.rid()[i];
    for (Index j = 0; j < data.dim(); ++j) out << ',' << format_number(data.x()(i, j));
    out << ',' << data.y()[i];
    if (with_counts) out << ',' << format_number(data.counts()[i]);
    out << '\n';
  }
}

std::string to_csv(const Dataset& data) {
  std::ostringstream out;
  write_csv(out, data);
  return out.str();
}

std::string to_json(const Dataset& data) {
  json doc;
  json xs = json::array();
  for (Index i = 0; i < data.n(); ++i) {
    json row = json::array();
    for (Index j = 0; j < data.dim(); ++j) row.push_back(data.x()(i, j));
    xs.push_back(row);
  }
  doc["x"] = xs;
  doc["y"] = data.y();
  doc["rid"] = data.rid();
  if (!data.counts().empty()) doc["counts"] = data.counts();
  return doc.dump();
}

Displacements displacements(const Dataset& data) {
  auto cases = data.rows_with(1);
  auto non = data.rows_with(0);
  if (cases.empty() || non.empty())
    throw Error(ErrorCode::NoMixedResults, "data lack either Cases or Non-Cases");
  Displacements D;
  const auto N = static_cast<Index>(cases.size() * non.size());
  D.delta.resize(N, data.dim());
  D.pairs.reserve(N);
  D.weights.reserve(N);
  const auto& c = data.counts();
  Index k = 0;
  for (std::size_t i = 0; i < cases.size(); ++i)
    for (std::size_t j = 0; j < non.size(); ++j, ++k) {
      D.delta.row(k) = data.x().row(cases[i]) - data.x().row(non[j]);
      D.pairs.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
      D.weights.push_back(c.empty() ? 1.0 : c[cases[i]] * c[non[j]]);
    }
  return D;
}

std::vector<Index> shuffled_order(Index n, std::uint64_t seed) {
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

Dataset shuffle(const Dataset& data, std::uint64_t seed) {
  return data.subset(shuffled_order(data.n(), seed));
}

int extended_rank(const Matrix& x, double tol) {
  Matrix e(x.rows(), x.cols() + 1);
  e.col(0).setOnes();
  e.rightCols(x.cols()) = x;
  return matrix_rank(e, tol);
}

// ---- fixtures --------------------------------------------------------------

namespace fixtures {

namespace {

Dataset build(std::initializer_list<std::initializer_list<double>> rows, std::vector<int> y,
              std::vector<std::string> rid) {
  Matrix x(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) x(i, j++) = v;
    ++i;
  }
  return Dataset(std::move(x), std::move(y), std::move(rid));
}

std::vector<Index> ids(const Dataset& d, std::initializer_list<const char*> names) {
  std::vector<Index> out;
  for (const char* s : names) out.push_back(d.find(s));
  return out;
}

}  // namespace

const Dataset& w0() {
  static const Dataset data = build(
      {{9.0, 5.0, 5.0},  {10.0, 4.4, 9.0}, {8.4, 4.2, 3.5},  {11.9, 4.1, 6.0},
       {11.2, 4.7, 8.0}, {9.0, 4.8, 10.0}, {11.0, 4.6, 8.1}, {7.0, 2.6, 4.1},
       {6.7, 5.8, 4.0},  {9.5, 4.7, 7.0},  {10.1, 2.6, 3.0}, {7.5, 4.2, 2.5},
       {7.3, 5.1, 2.1},  {10.4, 4.1, 3.5}, {8.4, 4.6, 2.0},  {10.0, 4.0, 11.0}},
      {1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {"c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "n1", "n2", "n3", "n4", "n5", "n6", "n7",
       "n8"});
  return data;
}

const Dataset& w1() {
  static const Dataset data = w0().subset(ids(w0(), {"c7", "c8", "n6", "n7", "n8"}));
  return data;
}

const Dataset& w2() {
  static const Dataset data = w0().subset(ids(w0(), {"c1", "c2", "c3", "n1", "n2", "n3"}));
  return data;
}

const Dataset& a1() {
  static const Dataset data =
      build({{0, 0, 0, 0, 0},
             {1, 1, 1, 0, 0},
             {-1, -1, -1, 0, 0},
             {0, 2, 3, 1, 0},
             {0, 1, 5, 2, 0},
             {0, 4, -1, -1, 0},
             {0, 0, 1, 2, 3},
             {0, 0, 3, 8, -1},
             {0, 0, 0, -1, 5}},
            {1, 0, 0, 1, 0, 0, 1, 0, 0}, {"r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9"});
  return data;
}

}  // namespace fixtures

}  // namespace hullcheck
