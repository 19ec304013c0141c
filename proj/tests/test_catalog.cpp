#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "rangemono/catalog.hpp"
#include "rangemono/linalg.hpp"
#include "support.hpp"

using namespace rmono;
using rmtest::near;

namespace {

const Relation* find_relation(const CatalogEntry& e, const std::string& type, std::size_t nth = 0) {
  for (const auto& r : e.relations)
    if (r.type == type && nth-- == 0) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("registry contents") {
  const auto& all = catalog_entries();
  std::set<std::string> ids;
  for (const auto& e : all) ids.insert(e.id);
  for (const char* id : {"ex31", "remstein", "illus_st(a)", "illus_st(b)", "illus_lyst", "invlyo", "tilde-extension+",
                         "tilde-extension-", "skewssteinorder2", "skewsstein1", "skewsstein2", "skewsstein3-n5",
                         "skewsstein3-n6", "symstein"})
    CHECK_MESSAGE(ids.count(id) == 1, id);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].id < all[i].id);
  CHECK_THROWS_AS(catalog_entry("nope"), Error);
  CHECK(catalog_entry("skewsstein3-n5").a.rows() == 5);
  CHECK(catalog_entry("skewsstein3-n6").a.rows() == 6);
  CHECK(catalog_entry("tilde-extension+").a.rows() == 3);
}

TEST_CASE("stored inputs match the printed matrices") {
  const auto& s1 = catalog_entry("skewsstein1");
  const double c = 1.0 / std::sqrt(2.0);
  CHECK(near(s1.a, c * Matrix{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}, 1e-15));
  const Relation* img = find_relation(s1, "image");
  REQUIRE(img);
  CHECK(near(*img->input, Matrix{{2, 0, 1}, {0, 1, 0}, {1, 0, 2}}, 0));
  CHECK(near(*img->output, 0.5 * Matrix{{3, 0, 3}, {0, 0, 0}, {3, 0, 3}}, 0));

  const auto& s2 = catalog_entry("skewsstein2");
  const Matrix blocks[] = {Matrix{{0, 1}, {-1, 0}}, Matrix{{0, 2}, {-2, 0}}};
  CHECK(near(s2.a, block_diagonal(blocks), 0));
  const Relation* w = find_relation(s2, "witness");
  REQUIRE(w);
  CHECK(near(*w->matrix, Matrix::diagonal(std::vector<double>{0, 0, -3, -3}), 0));

  const auto& rs = catalog_entry("remstein");
  const Relation* chain = find_relation(rs, "image");
  REQUIRE(chain);
  CHECK(near(*chain->input, Matrix{{0, 0.5}, {0.5, 0}}, 0));
  CHECK(near(*chain->output, Matrix{{-1, 0}, {0, 0}}, 0));
}

TEST_CASE("every entry re-verifies") {
  for (const auto& rep : run_all()) {
    CHECK_MESSAGE(rep.passed, rep.id);
    for (const auto& c : rep.checks) CHECK_MESSAGE(c.passed, (rep.id + ": " + c.name + ": " + c.detail));
    CHECK(!rep.checks.empty());
  }
}

TEST_CASE("entry specifics") {
  auto r = run_entry("invlyo");
  CHECK(r.passed);
  CHECK(r.verdict.trivial == Tri::No);
  CHECK(r.verdict.range == Tri::No);
  // L_A(Y) = 2I for Y = [[0,1],[1,0]].
  const auto l = lyapunov(catalog_entry("invlyo").a);
  CHECK(near(apply(l, rmtest::flip()), 2.0 * Matrix::identity(2), 1e-14));
  CHECK(near(apply(l, Matrix{{1, 0}, {0, 0}}), rmtest::flip(), 1e-14));

  r = run_entry("skewsstein1");
  CHECK(r.passed);
  CHECK(r.verdict.trivial == Tri::No);
  r = run_entry("skewsstein2");
  CHECK(r.passed);
  CHECK(r.verdict.range == Tri::No);
  const auto s2 = stein(catalog_entry("skewsstein2").a);
  CHECK(near(apply(s2, Matrix::diagonal(std::vector<double>{0, 0, -3, -3})),
             Matrix::diagonal(std::vector<double>{0, 0, 9, 9}), 1e-12));

  r = run_entry("skewssteinorder2");
  CHECK(r.verdict.trivial == Tri::Yes);
  r = run_entry("illus_lyst");
  CHECK(r.verdict.trivial == Tri::Yes);
  CHECK(r.verdict.fast_path.value_or("") == "A^2=-I");
  r = run_entry("sim2");
  CHECK(r.passed);
}

TEST_CASE("a wrong claim fails the entry") {
  CatalogEntry e = catalog_entry("symstein");
  e.trivial = "yes";
  CHECK_FALSE(run_entry(e).passed);

  e = catalog_entry("invlyo");
  REQUIRE(!e.relations.empty());
  for (auto& rel : e.relations)
    if (rel.type == "power") rel.alpha = 5.0;
  CHECK_FALSE(run_entry(e).passed);
}

TEST_CASE("catalog parsing") {
  const auto es = parse_catalog(R"({"schema": "rangemono.catalog/1", "entries": [
    {"id": "z", "locus": "test", "kind": "lyapunov", "matrix": {"zeros": 2},
     "claims": {"trivial": "yes"}, "relations": []},
    {"id": "b", "locus": "test", "kind": "stein",
     "matrix": {"block_diag": [{"entry": "z"}, [[1]]]}, "relations": [{"type": "nilpotent"}]}
  ], "table": {"title": "t", "rows": []}})");
  REQUIRE(es.size() == 2);
  CHECK(near(es[0].a, Matrix(2, 2), 0));
  CHECK(es[1].a.rows() == 3);
  CHECK(es[1].a(2, 2) == 1.0);
  CHECK_THROWS_AS(parse_catalog("{"), Error);
  CHECK_THROWS_AS(parse_catalog(R"({"schema": "other", "entries": []})"), Error);
  CHECK_THROWS_AS(parse_catalog(R"({"schema": "rangemono.catalog/1", "entries": [
    {"id": "x", "locus": "", "kind": "stein", "matrix": [[1, 2], [3]]}]})"),
                  Error);
  CHECK_THROWS_AS(parse_catalog(R"({"schema": "rangemono.catalog/1", "entries": [
    {"id": "x", "locus": "", "kind": "stein", "matrix": {"entry": "later"}}]})"),
                  Error);
}

TEST_CASE("summary table") {
  const auto t = reproduce_table();
  CHECK(t.passed);
  REQUIRE(t.rows.size() == 4);
  CHECK(t.rows[0].matrix_class == "A^2=-I");
  CHECK(t.rows[0].lyapunov.computed == "Yes");
  CHECK(t.rows[0].stein.computed == "Yes");
  CHECK(t.rows[1].lyapunov.computed == "No [invlyo]");
  CHECK(t.rows[1].stein.computed == "Yes");
  CHECK(t.rows[2].lyapunov.computed == "Yes");
  CHECK(t.rows[2].stein.computed.rfind("Yes (n=2)", 0) == 0);
  CHECK(t.rows[2].stein.computed.find("No (n>=3)") != std::string::npos);
  CHECK(t.rows[3].lyapunov.computed == "No [invlyo]");
  CHECK(t.rows[3].stein.computed == "No [symstein]");
  for (const auto& row : t.rows) {
    CHECK(row.lyapunov.passed);
    CHECK(row.stein.passed);
    for (const auto& c : row.checks) CHECK_MESSAGE(c.passed, (row.matrix_class + ": " + c.name + ": " + c.detail));
  }
}
