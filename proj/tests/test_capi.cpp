#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "hullcheck.h"

namespace {

struct Owned {
  hc_dataset* d = nullptr;
  ~Owned() { hc_dataset_free(d); }
};

struct Str {
  char* p = nullptr;
  ~Str() { hc_string_free(p); }
  std::string s() const { return p ? p : ""; }
};

}  // namespace

TEST_CASE("fixtures and classification") {
  Owned w0;
  REQUIRE(hc_fixture("w0", &w0.d) == HC_OK);
  CHECK(hc_dataset_rows(w0.d) == 16);
  CHECK(hc_dataset_cols(w0.d) == 3);
  hc_options o;
  hc_options_default(&o);
  CHECK(o.epsilon == 1e-8);
  hc_status s = HC_NO_MIXED;
  Str report;
  REQUIRE(hc_classify(w0.d, &o, &s, &report.p) == HC_OK);
  CHECK(s == HC_OVERLAP);
  CHECK(report.s().find("\"S\"") != std::string::npos);
  CHECK(hc_classify(w0.d, nullptr, &s, nullptr) == HC_OK);
}

TEST_CASE("arrays, status codes and oracles") {
  const double x[] = {1.0, 0.0};
  const int y[] = {1, 0};
  Owned d;
  REQUIRE(hc_dataset_from_arrays(2, 1, x, y, &d.d) == HC_OK);
  hc_status s;
  REQUIRE(hc_classify(d.d, nullptr, &s, nullptr) == HC_OK);
  CHECK(s == HC_COMPLETE);
  int sep = 0, interior = 1, agree = 0;
  CHECK(hc_lp_separation(d.d, &sep, nullptr) == HC_OK);
  CHECK(sep == 1);
  CHECK(hc_origin_interior(d.d, &interior) == HC_OK);
  CHECK(interior == 0);
  CHECK(hc_compare_lp(d.d, nullptr, &agree, nullptr) == HC_OK);
  CHECK(agree == 1);
}

TEST_CASE("errors are reported, not thrown") {
  Owned d;
  CHECK(hc_dataset_read_buffer("x,y\n1,1\n2,7\n", 0, &d.d) == HC_E_VALIDATION);
  CHECK(std::string(hc_last_error()).find("line 3") != std::string::npos);
  CHECK(hc_dataset_read_buffer("x,y\n1,1\nfoo,0\n", 0, &d.d) == HC_E_PARSE);
  CHECK(hc_dataset_read_file("/nonexistent/file.csv", &d.d) != HC_OK);
  CHECK(hc_fixture("nope", &d.d) == HC_E_INVALID_ARGUMENT);
  CHECK(hc_classify(nullptr, nullptr, nullptr, nullptr) == HC_E_INVALID_ARGUMENT);
  CHECK(hc_gen_standard(-1, 0, &d.d) == HC_E_BAD_SHAPE);
  CHECK(hc_catalog_search("zz", 0, 3, nullptr, nullptr) == HC_E_UNKNOWN_BASIS);
  Owned w0;
  REQUIRE(hc_fixture("w0", &w0.d) == HC_OK);
  Str r;
  CHECK(hc_identify(w0.d, &r.p) == HC_E_NOT_MINIMAL);
  CHECK(hc_standard_form(w0.d, nullptr, &r.p) == HC_E_NOT_TYPE1);
  CHECK(r.p == nullptr);
  const double x[] = {1.0, 2.0};
  const int y[] = {1, 1};
  Owned one;
  REQUIRE(hc_dataset_from_arrays(2, 1, x, y, &one.d) == HC_OK);
  Owned core;
  CHECK(hc_deflate(one.d, 0, 0, nullptr, &core.d, nullptr) == HC_E_NOT_OVERLAPPING);
}

TEST_CASE("deflate, depth and forms") {
  Owned w0, core, w2, w1;
  REQUIRE(hc_fixture("w0", &w0.d) == HC_OK);
  Str side;
  REQUIRE(hc_deflate(w0.d, 0, 0, nullptr, &core.d, &side.p) == HC_OK);
  CHECK(hc_dataset_rows(core.d) == 5);
  CHECK(side.s().find("\"TypeI\"") != std::string::npos);
  REQUIRE(hc_fixture("w2", &w2.d) == HC_OK);
  Str depth;
  REQUIRE(hc_removal_depths(w2.d, 2, nullptr, &depth.p) == HC_OK);
  CHECK(depth.s().find("\"n_complete\": 2") != std::string::npos);
  REQUIRE(hc_fixture("w1", &w1.d) == HC_OK);
  Str v, sf;
  REQUIRE(hc_interim_form(w1.d, nullptr, &v.p) == HC_OK);
  CHECK(v.s().rfind("rid,v1,v2,v3,y\nc7,", 0) == 0);
  REQUIRE(hc_standard_form(w1.d, nullptr, &sf.p) == HC_OK);
  CHECK(sf.s().find("\"d0\": 2") != std::string::npos);
  Owned e;
  REQUIRE(hc_equidistant_form(w1.d, nullptr, &e.d) == HC_OK);
  CHECK(hc_dataset_rows(e.d) == 5);
}

TEST_CASE("generators and catalog") {
  Str simplex;
  REQUIRE(hc_gen_unit_simplex(2, &simplex.p) == HC_OK);
  CHECK(simplex.s() == "x1,x2\n1,0\n0,1\n-1,-1\n");
  Owned a9;
  REQUIRE(hc_gen_add("b+b'", &a9.d) == HC_OK);
  Str id;
  REQUIRE(hc_identify(a9.d, &id.p) == HC_OK);
  CHECK(id.s().find("\"A9\"") != std::string::npos);
  Owned q;
  REQUIRE(hc_gen_quasi(50, 2, 4, &q.d) == HC_OK);
  hc_status s;
  REQUIRE(hc_classify(q.d, nullptr, &s, nullptr) == HC_OK);
  CHECK(s == HC_QUASI);
  Str list;
  REQUIRE(hc_catalog_list(&list.p) == HC_OK);
  CHECK(list.s().find("\"L17\"") != std::string::npos);
  Owned l5;
  CHECK(hc_catalog_entry("L5", &l5.d) == HC_OK);
  Str search;
  REQUIRE(hc_catalog_search("j", 1, 3, nullptr, &search.p) == HC_OK);
  CHECK(search.s().find("\"L14\"") != std::string::npos);
}

TEST_CASE("text round trip and shuffle") {
  Owned w1, back, sh;
  REQUIRE(hc_fixture("w1", &w1.d) == HC_OK);
  Str csv, json, csv2;
  REQUIRE(hc_dataset_to_text(w1.d, 0, &csv.p) == HC_OK);
  REQUIRE(hc_dataset_to_text(w1.d, 1, &json.p) == HC_OK);
  REQUIRE(hc_dataset_read_buffer(json.p, 1, &back.d) == HC_OK);
  REQUIRE(hc_dataset_to_text(back.d, 0, &csv2.p) == HC_OK);
  CHECK(csv.s() == csv2.s());
  REQUIRE(hc_dataset_shuffle(w1.d, 3, &sh.d) == HC_OK);
  CHECK(hc_dataset_rows(sh.d) == 5);
}

TEST_CASE("rendering") {
  Owned w1;
  REQUIRE(hc_fixture("w1", &w1.d) == HC_OK);
  Str a, b, g;
  REQUIRE(hc_render_svg(w1.d, 1, 10.0, 1, &a.p) == HC_OK);
  REQUIRE(hc_render_svg(w1.d, 1, 10.0, 1, &b.p) == HC_OK);
  CHECK(a.s() == b.s());
  CHECK(hc_render_svg(w1.d, 1, -1.0, 1, &b.p) == HC_E_INVALID_ARGUMENT);
  REQUIRE(hc_render_catalog("a, b ,L1", 0, 8.0, 0, &g.p) == HC_OK);
  CHECK(g.s().find(">L1<") != std::string::npos);
  Str bad;
  CHECK(hc_render_catalog("a,Q9", 0, 8.0, 0, &bad.p) == HC_E_INVALID_ARGUMENT);
  Owned a1;
  REQUIRE(hc_fixture("a1", &a1.d) == HC_OK);
  CHECK(hc_render_svg(a1.d, 1, 10.0, 1, &bad.p) == HC_E_DIMENSION);
}
