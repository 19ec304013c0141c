#include "rangemono/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "rangemono/groupinv.hpp"
#include "rangemono/linalg.hpp"
#include "rangemono/matclass.hpp"
#include "rangemono/operators.hpp"
#include "rangemono/sampling.hpp"
#include "rangemono/symspace.hpp"

namespace rmono {
namespace detail {
extern const char* const kCatalogJson;
}

namespace {

using json = nlohmann::json;

constexpr double kRelTol = 1e-7;  // absolute tolerance for stored relations

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, "catalog: " + what); }

using EntryMap = std::map<std::string, Matrix>;

Matrix parse_matrix(const json& j, const EntryMap& known);

Matrix parse_rows(const json& rows) {
  if (!rows.is_array() || rows.empty()) parse_fail("matrix rows must be a non-empty array");
  const std::size_t r = rows.size();
  const std::size_t c = rows[0].is_array() ? rows[0].size() : 0;
  if (c == 0) parse_fail("matrix rows must be arrays of numbers");
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) parse_fail("matrix is not rectangular");
    for (std::size_t k = 0; k < c; ++k) {
      if (!rows[i][k].is_number()) parse_fail("matrix entry is not a number");
      m(i, k) = rows[i][k].get<double>();
    }
  }
  return m;
}

Matrix parse_matrix(const json& j, const EntryMap& known) {
  if (j.is_array()) return parse_rows(j);
  if (!j.is_object()) parse_fail("matrix must be an array or an object");
  if (j.contains("rows")) {
    Matrix m = parse_rows(j["rows"]);
    if (j.contains("scale")) m *= j["scale"].get<double>();
    return m;
  }
  if (j.contains("zeros")) {
    const auto k = j["zeros"].get<std::size_t>();
    return Matrix(k, k);
  }
  if (j.contains("entry")) {
    const auto id = j["entry"].get<std::string>();
    auto it = known.find(id);
    if (it == known.end()) parse_fail("reference to unknown or later entry '" + id + "'");
    return it->second;
  }
  if (j.contains("block_diag")) {
    std::vector<Matrix> blocks;
    for (const auto& b : j["block_diag"]) {
      blocks.push_back(parse_matrix(b, known));
      if (!blocks.back().is_square()) parse_fail("block_diag blocks must be square");
    }
    return block_diagonal(blocks);
  }
  parse_fail("unrecognized matrix object");
}

std::optional<std::string> opt_string(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j[key].get<std::string>();
}

Relation parse_relation(const json& j, const EntryMap& known) {
  Relation r;
  r.type = j.at("type").get<std::string>();
  if (j.contains("input")) r.input = parse_matrix(j["input"], known);
  if (j.contains("output")) r.output = parse_matrix(j["output"], known);
  if (j.contains("matrix")) r.matrix = parse_matrix(j["matrix"], known);
  r.range = j.value("range", false);
  r.k = j.value("k", 0u);
  r.alpha = j.value("alpha", 0.0);
  r.holds = j.value("holds", true);
  r.value = j.value("value", false);
  static const char* known_types[] = {"image", "kernel", "psd", "indefinite", "witness", "power",
                                      "group_inverse", "group_inverse_exists", "nilpotent", "sim"};
  if (std::find_if(std::begin(known_types), std::end(known_types), [&](const char* t) { return r.type == t; }) ==
      std::end(known_types))
    parse_fail("unknown relation type '" + r.type + "'");
  const bool needs_io = r.type == "image";
  const bool needs_m = r.type == "kernel" || r.type == "psd" || r.type == "indefinite" || r.type == "witness";
  if (needs_io && (!r.input || !r.output)) parse_fail("image relation needs input and output");
  if (needs_m && !r.matrix) parse_fail(r.type + " relation needs a matrix");
  if (r.type == "power" && r.k < 2) parse_fail("power relation needs k >= 2");
  return r;
}

bool has_square_shape(const Matrix& m, std::size_t n) { return m.rows() == n && m.cols() == n; }

Matrix unit(const Matrix& x) {
  const double nx = norm2(svec(x));
  return nx > 0.0 ? x * (1.0 / nx) : x;
}

Tolerances relation_tol(const Tolerances& tol) {
  Tolerances t = tol;
  t.feas_tol = kRelTol;
  return t;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Check check_relation(const CatalogEntry& e, const std::optional<OperatorMatrix>& op, const Relation& r,
                     const Tolerances& tol) {
  Check c;
  c.name = r.type;
  const std::size_t n = e.a.rows();
  try {
    if (r.type == "sim") {
      const SimReport s = verify_sim(e.a, tol);
      c.passed = s.all();
      c.detail = c.passed ? "all singular irreducible M-matrix properties hold" : "a property failed";
      return c;
    }
    if (!op) {
      c.detail = "relation requires an operator entry";
      return c;
    }
    for (const auto* m : {&r.input, &r.output, &r.matrix}) {
      if (*m && (!has_square_shape(**m, n) || asymmetry(**m) > 0.0)) {
        c.detail = "relation matrix must be symmetric of order " + std::to_string(n);
        return c;
      }
    }
    const Matrix& t = op->entries;
    const double tn = frobenius_norm(t);
    if (r.type == "image") {
      const double res = max_abs(apply(*op, *r.input) - *r.output);
      c.passed = res <= kRelTol;
      c.detail = "|T(U) - Y| = " + fmt(res);
    } else if (r.type == "kernel") {
      const double res = max_abs(apply(*op, *r.matrix));
      c.passed = res <= kRelTol && max_abs(*r.matrix) > kRelTol;
      c.detail = "|T(X)| = " + fmt(res);
    } else if (r.type == "psd") {
      const double lam = linalg::min_eigenvalue(*r.matrix);
      c.passed = lam >= -kRelTol && max_abs(*r.matrix) > kRelTol;
      c.detail = "min eigenvalue " + fmt(lam);
    } else if (r.type == "indefinite") {
      const double lam = linalg::min_eigenvalue(*r.matrix);
      c.passed = lam < -kRelTol;
      c.detail = "min eigenvalue " + fmt(lam);
    } else if (r.type == "witness") {
      const std::string why = verify_witness(*op, unit(*r.matrix), r.range, relation_tol(tol));
      c.passed = why.empty();
      c.detail = why.empty() ? (r.range ? "range witness verified" : "trivial witness verified") : why;
    } else if (r.type == "power") {
      const double res = frobenius_norm(power(*op, r.k).entries - t * r.alpha);
      const bool ok = res <= 1e-8 * std::max(tn, 1e-300);
      c.passed = ok == r.holds;
      c.name += " T^" + std::to_string(r.k) + (r.holds ? " = " : " != ") + fmt(r.alpha) + " T";
      c.detail = "residual " + fmt(res);
    } else if (r.type == "group_inverse") {
      const auto gi = group_inverse(t, tol);
      bool ok = false;
      double res = 0.0;
      if (gi.exists) {
        res = frobenius_norm(*gi.inverse - t * r.alpha);
        ok = res <= 1e-8 * std::max(frobenius_norm(*gi.inverse), 1e-300);
      }
      c.passed = ok == r.holds;
      c.name += std::string(r.holds ? " T# = " : " T# != ") + fmt(r.alpha) + " T";
      c.detail = gi.exists ? "residual " + fmt(res) : "group inverse does not exist";
    } else if (r.type == "group_inverse_exists") {
      const auto audit = group_inverse_exists_audit(t, tol);
      c.passed = audit.all() == r.value;
      c.detail = std::string("audit ") + (audit.all() ? "all true" : "all false");
    } else if (r.type == "nilpotent") {
      const unsigned k = static_cast<unsigned>(2 * n - 1);
      const double res = frobenius_norm(power(*op, k).entries);
      c.passed = res <= tol.eq_tol * std::pow(std::max(tn, 1.0), k);
      c.detail = "|T^" + std::to_string(k) + "| = " + fmt(res);
    }
  } catch (const Error& err) {
    c.passed = false;
    c.detail = err.what();
  }
  return c;
}

Check claim_check(const std::string& name, const std::string& expected, Tri got) {
  Check c;
  c.name = "claim " + name;
  if (expected == "not-refuted") {
    c.passed = got != Tri::No;
  } else {
    c.passed = expected == to_string(got);
  }
  c.detail = std::string("expected ") + expected + ", computed " + to_string(got);
  return c;
}

// The certificate must lie in the orthogonal complement of R(T^2) and in
// the interior of the cone.
Check certificate_check(const Matrix& t2, const Vector& cert, bool psd, const Tolerances& tol) {
  Check c;
  c.name = "certificate";
  const Vector proj = t2.transpose() * cert;
  const double orth = norm2(proj) / std::max(norm2(cert) * std::max(frobenius_norm(t2), 1.0), 1e-300);
  const double interior = psd ? linalg::min_eigenvalue(smat_dense(cert)) : min_entry(cert);
  c.passed = orth <= tol.feas_tol && interior > 0.0;
  c.detail = "orthogonality " + fmt(orth) + ", interior margin " + fmt(interior);
  return c;
}

Check matrix_witness_check(const Matrix& a, const Matrix& x, bool range, const Tolerances& tol) {
  Check c;
  c.name = range ? "computed range witness" : "computed trivial witness";
  const Vector xv = x.column(0);
  const Vector ax = a * xv;
  const Matrix rb = linalg::range_basis(a, tol);
  const Vector proj = rb * (rb.transpose() * xv);
  const double off = norm2(subtract(xv, proj));
  c.passed = std::abs(norm2(xv) - 1.0) <= kRelTol && off <= kRelTol && min_entry(ax) >= -kRelTol &&
             (!range || min_entry(xv) < -kRelTol);
  c.detail = "range residual " + fmt(off) + ", min (Ax) " + fmt(min_entry(ax));
  return c;
}

std::vector<CatalogEntry> load_shipped() {
  auto entries = parse_catalog(detail::kCatalogJson);
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
  return entries;
}

}  // namespace

std::vector<CatalogEntry> parse_catalog(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != "rangemono.catalog/1") parse_fail("expected schema rangemono.catalog/1");
  std::vector<CatalogEntry> out;
  EntryMap known;
  try {
    for (const auto& je : doc.at("entries")) {
      CatalogEntry e;
      e.id = je.at("id").get<std::string>();
      e.locus = je.value("locus", "");
      e.kind = je.at("kind").get<std::string>();
      if (e.kind != "lyapunov" && e.kind != "stein" && e.kind != "matrix") parse_fail("entry kind '" + e.kind + "'");
      if (known.count(e.id)) parse_fail("duplicate id '" + e.id + "'");
      e.a = parse_matrix(je.at("matrix"), known);
      if (!e.a.is_square()) parse_fail("entry '" + e.id + "' matrix is not square");
      known.emplace(e.id, e.a);
      if (je.contains("claims")) {
        const auto& cl = je["claims"];
        e.trivial = opt_string(cl, "trivial");
        e.range = opt_string(cl, "range");
        e.fast_path = opt_string(cl, "fast_path");
      }
      for (const auto& jr : je.value("relations", json::array())) e.relations.push_back(parse_relation(jr, known));
      for (const auto& jn : je.value("notes", json::array())) e.notes.push_back(jn.get<std::string>());
      out.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  return out;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = load_shipped();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog_entries())
    if (e.id == id) return e;
  throw Error(ErrorCode::NotFound, "unknown catalog entry '" + id + "'");
}

EntryReport run_entry(const std::string& id, const Tolerances& tol, const DecideOptions& opt) {
  return run_entry(catalog_entry(id), tol, opt);
}

EntryReport run_entry(const CatalogEntry& e, const Tolerances& tol, const DecideOptions& opt) {
  EntryReport rep;
  rep.id = e.id;
  rep.locus = e.locus;
  rep.kind = e.kind;
  rep.notes = e.notes;
  std::optional<OperatorMatrix> op;
  try {
    if (e.kind == "matrix") {
      rep.verdict = decide_trivial_matrix(e.a, tol, true);
      if (rep.verdict.witness)
        rep.checks.push_back(matrix_witness_check(e.a, *rep.verdict.witness, false, tol));
      if (rep.verdict.certificate)
        rep.checks.push_back(certificate_check(e.a * e.a, *rep.verdict.certificate, false, tol));
    } else {
      op = e.kind == "lyapunov" ? lyapunov(e.a) : stein(e.a);
      rep.verdict = decide_range_operator(*op, tol, opt);
      const auto rtol = relation_tol(tol);
      if (rep.verdict.witness) {
        const auto why = verify_witness(*op, *rep.verdict.witness, false, rtol);
        rep.checks.push_back({"computed trivial witness", why.empty(), why.empty() ? "verified" : why});
      }
      if (rep.verdict.range_witness) {
        const auto why = verify_witness(*op, *rep.verdict.range_witness, true, rtol);
        rep.checks.push_back({"computed range witness", why.empty(), why.empty() ? "verified" : why});
      }
      if (rep.verdict.certificate)
        rep.checks.push_back(certificate_check(op->entries * op->entries, *rep.verdict.certificate, true, tol));
    }
    if (e.trivial) rep.checks.push_back(claim_check("trivial", *e.trivial, rep.verdict.trivial));
    if (e.range) rep.checks.push_back(claim_check("range", *e.range, rep.verdict.range));
    if (e.fast_path) {
      const std::string got = rep.verdict.fast_path.value_or("none");
      rep.checks.push_back({"claim fast path", got == *e.fast_path, "expected " + *e.fast_path + ", computed " + got});
    }
  } catch (const Error& err) {
    rep.checks.push_back({"decision", false, err.what()});
  }
  for (const auto& r : e.relations) rep.checks.push_back(check_relation(e, op, r, tol));
  rep.passed = std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& c) { return c.passed; });
  return rep;
}

std::vector<EntryReport> run_all(const Tolerances& tol, const DecideOptions& opt) {
  std::vector<EntryReport> out;
  for (const auto& e : catalog_entries()) out.push_back(run_entry(e, tol, opt));
  return out;
}

namespace {

enum class MatrixClass { MinusIdentitySquare, IdentitySquare, Skew, Symmetric };

bool in_class(const Matrix& a, MatrixClass c, const Tolerances& tol) {
  const std::size_t n = a.rows();
  const double an = frobenius_norm(a);
  const double scale = std::max(an * an, 1.0);
  const Matrix id = Matrix::identity(n);
  switch (c) {
    case MatrixClass::MinusIdentitySquare: return frobenius_norm(a * a + id) <= tol.eq_tol * scale;
    case MatrixClass::IdentitySquare: return frobenius_norm(a * a - id) <= tol.eq_tol * scale;
    case MatrixClass::Skew: return frobenius_norm(a + a.transpose()) <= tol.eq_tol * std::max(an, 1.0);
    case MatrixClass::Symmetric: return frobenius_norm(a - a.transpose()) <= tol.eq_tol * std::max(an, 1.0);
  }
  return false;
}

// Well-conditioned random similarity.
Matrix random_similarity(Rng& rng, std::size_t n) {
  return Matrix::identity(n) + rng.normal_matrix(n, n) * 0.3;
}

Matrix random_member(MatrixClass c, std::size_t n, Rng& rng) {
  switch (c) {
    case MatrixClass::MinusIdentitySquare: {
      std::vector<Matrix> blocks(n / 2, Matrix{{0.0, 1.0}, {-1.0, 0.0}});
      const Matrix p = random_similarity(rng, n);
      return p * block_diagonal(blocks) * linalg::inverse(p);
    }
    case MatrixClass::IdentitySquare: {
      Vector d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = (i % 2 == 0) ? 1.0 : -1.0;
      const Matrix p = random_similarity(rng, n);
      return p * Matrix::diagonal(d) * linalg::inverse(p);
    }
    case MatrixClass::Skew: {
      const Matrix g = rng.normal_matrix(n, n);
      return g - g.transpose();
    }
    case MatrixClass::Symmetric: return rng.symmetric(n);
  }
  return {};
}

struct RowSpec {
  MatrixClass cls;
  std::string name;
};

// Yes cell: guarantee and reduction agree on the cited entries and on
// random members of the class.
void certify_yes(const RowSpec& row, OperatorKind kind, const std::vector<std::string>& basis,
                 const std::vector<std::size_t>& orders, TableRow& out, TableCell& cell, const Tolerances& tol,
                 const DecideOptions& opt) {
  const char* kname = kind == OperatorKind::Lyapunov ? "lyapunov" : "stein";
  DecideOptions plain = opt;
  plain.use_fast_path = false;
  bool ok = true;
  auto agree = [&](const Matrix& a, const std::string& label) {
    Check c;
    c.name = std::string(kname) + " " + label;
    try {
      const auto op = kind == OperatorKind::Lyapunov ? lyapunov(a) : stein(a);
      const auto fp = fast_path(a, kind, tol);
      const auto v = decide_trivial_operator(op, tol, plain);
      c.passed = in_class(a, row.cls, tol) && fp && fp->trivial == Tri::Yes && v.trivial == Tri::Yes;
      c.detail = std::string("guarantee ") + (fp ? fp->name : "none") + ", reduction " + to_string(v.trivial) +
                 " (" + v.method + ")";
    } catch (const Error& e) {
      c.detail = e.what();
    }
    ok = ok && c.passed;
    out.checks.push_back(std::move(c));
  };
  for (const auto& id : basis) {
    const auto& e = catalog_entry(id);
    const EntryReport rep = run_entry(e, tol, opt);
    const bool entry_ok = rep.passed && e.kind == kname && rep.verdict.trivial == Tri::Yes;
    out.checks.push_back({std::string(kname) + " entry " + id, entry_ok, entry_ok ? "passed" : "failed"});
    ok = ok && entry_ok;
    agree(e.a, "entry " + id);
  }
  Rng rng(opt.search.seed * 104729u + static_cast<std::uint64_t>(row.cls) * 31u + (kind == OperatorKind::Stein));
  for (std::size_t n : orders) agree(random_member(row.cls, n, rng), "random member of order " + std::to_string(n));
  cell.passed = ok;
  cell.computed = ok ? "Yes" : "FAILED";
}

// No cell: each cited entry passes and refutes trivial range monotonicity
// with a verified witness for a member of the class.
bool certify_no(const RowSpec& row, const char* kname, const std::string& id, TableRow& out,
                const Tolerances& tol, const DecideOptions& opt) {
  const auto& e = catalog_entry(id);
  const EntryReport rep = run_entry(e, tol, opt);
  const bool ok = rep.passed && e.kind == kname && rep.verdict.trivial == Tri::No && rep.verdict.witness &&
                  in_class(e.a, row.cls, tol);
  out.checks.push_back({std::string(kname) + " entry " + id, ok,
                        ok ? "witness verified" : (rep.passed ? "entry outside the class or not refuted" : "failed")});
  return ok;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

}  // namespace

SummaryTable reproduce_table(const Tolerances& tol, const DecideOptions& opt) {
  SummaryTable table;
  const json doc = json::parse(detail::kCatalogJson);
  const auto& jt = doc.at("table");
  table.title = jt.value("title", "");
  static const std::map<std::string, MatrixClass> classes = {{"A^2=-I", MatrixClass::MinusIdentitySquare},
                                                             {"A^2=I", MatrixClass::IdentitySquare},
                                                             {"A^T=-A", MatrixClass::Skew},
                                                             {"A^T=A", MatrixClass::Symmetric}};
  for (const auto& jr : jt.at("rows")) {
    TableRow row;
    row.matrix_class = jr.at("class").get<std::string>();
    auto it = classes.find(row.matrix_class);
    if (it == classes.end()) throw Error(ErrorCode::Parse, "catalog: unknown table class " + row.matrix_class);
    const RowSpec spec{it->second, row.matrix_class};
    const std::vector<std::size_t> orders =
        spec.cls == MatrixClass::Skew ? std::vector<std::size_t>{2, 3, 4} : std::vector<std::size_t>{2, 4, 4};

    for (const auto kind : {OperatorKind::Lyapunov, OperatorKind::Stein}) {
      const char* kname = kind == OperatorKind::Lyapunov ? "lyapunov" : "stein";
      TableCell& cell = kind == OperatorKind::Lyapunov ? row.lyapunov : row.stein;
      const auto& jc = jr.at(kname);
      cell.claim = jc.at("claim").get<std::string>();
      cell.basis = jc.at("basis").get<std::vector<std::string>>();
      if (cell.claim == "yes") {
        certify_yes(spec, kind, cell.basis, orders, row, cell, tol, opt);
      } else if (cell.claim == "no") {
        bool ok = !cell.basis.empty();
        for (const auto& id : cell.basis) ok = certify_no(spec, kname, id, row, tol, opt) && ok;
        cell.passed = ok;
        cell.computed = ok ? "No [" + join(cell.basis) + "]" : "FAILED";
      } else if (cell.claim == "split") {
        // Order 2 entries must be Yes, higher orders No.
        std::vector<std::string> yes_ids;
        std::vector<std::string> no_ids;
        for (const auto& id : cell.basis) (catalog_entry(id).a.rows() == 2 ? yes_ids : no_ids).push_back(id);
        TableCell tmp;
        certify_yes(spec, kind, yes_ids, {}, row, tmp, tol, opt);
        bool ok = tmp.passed && !yes_ids.empty() && !no_ids.empty();
        for (const auto& id : no_ids) ok = certify_no(spec, kname, id, row, tol, opt) && ok;
        cell.passed = ok;
        cell.computed = ok ? "Yes (n=2) [" + join(yes_ids) + "] / No (n>=3) [" + join(no_ids) + "]" : "FAILED";
      } else {
        throw Error(ErrorCode::Parse, "catalog: unknown cell claim " + cell.claim);
      }
    }
    table.rows.push_back(std::move(row));
  }
  table.passed = !table.rows.empty() && std::all_of(table.rows.begin(), table.rows.end(), [](const TableRow& r) {
    return r.lyapunov.passed && r.stein.passed;
  });
  return table;
}

}  // namespace rmono
