#include "rangemono/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "rangemono/catalog.hpp"
#include "rangemono/groupinv.hpp"
#include "rangemono/linalg.hpp"
#include "rangemono/matclass.hpp"
#include "rangemono/monotonicity.hpp"
#include "rangemono/symspace.hpp"

namespace rmono::report {

using json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

double rounded(double v) {
  const double r = std::strtod(format_number(v).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

Status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return Status::InvalidArgument;
    case ErrorCode::Parse: return Status::Parse;
    case ErrorCode::Capability: return Status::Capability;
    case ErrorCode::SingularOperator: return Status::Singular;
    case ErrorCode::NonConvergence: return Status::NonConvergence;
    case ErrorCode::Inconsistent: return Status::Inconsistent;
    case ErrorCode::Mismatch: return Status::Mismatch;
    case ErrorCode::NotFound: return Status::NotFound;
  }
  return Status::Internal;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Parse: return "parse";
    case Status::Capability: return "capability";
    case Status::Singular: return "singular";
    case Status::Mismatch: return "mismatch";
    case Status::InvalidArgument: return "invalid-argument";
    case Status::NonConvergence: return "nonconvergence";
    case Status::Inconsistent: return "inconsistent";
    case Status::NotFound: return "not-found";
    case Status::Internal: return "internal";
  }
  return "?";
}

// ---------------------------------------------------------------- input files

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

Matrix rows_to_matrix(const nlohmann::json& rows, std::size_t n) {
  if (!rows.is_array() || rows.size() != n) parse_fail("matrix file: expected " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      parse_fail("matrix file: row " + std::to_string(i + 1) + " does not have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      if (!rows[i][j].is_number()) parse_fail("matrix file: non-numeric entry");
      m(i, j) = rows[i][j].get<double>();
    }
  }
  if (!m.all_finite()) parse_fail("matrix file: non-finite entry");
  return m;
}

std::size_t read_order(const nlohmann::json& doc) {
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
    parse_fail("missing or invalid order \"n\"");
  return static_cast<std::size_t>(doc["n"].get<long long>());
}

}  // namespace

Matrix parse_matrix_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) parse_fail("matrix file: empty input");
  if (text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      parse_fail(std::string("matrix file: ") + e.what());
    }
    const std::size_t n = read_order(doc);
    if (!doc.contains("rows")) parse_fail("matrix file: missing \"rows\"");
    return rows_to_matrix(doc["rows"], n);
  }
  std::istringstream in(text);
  long long n = 0;
  if (!(in >> n) || n < 1) parse_fail("matrix file: first token must be the order");
  const auto order = static_cast<std::size_t>(n);
  Matrix m(order, order);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j)
      if (!(in >> m(i, j))) parse_fail("matrix file: expected " + std::to_string(order * order) + " entries");
  std::string extra;
  if (in >> extra) parse_fail("matrix file: trailing content '" + extra + "'");
  if (!m.all_finite()) parse_fail("matrix file: non-finite entry");
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) parse_fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Matrix read_matrix_file(const std::string& path) { return parse_matrix_text(read_file(path)); }

BasisFile parse_basis_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(std::string("basis file: ") + e.what());
  }
  BasisFile b;
  b.n = read_order(doc);
  if (doc.contains("vectors")) {
    b.ambient = Ambient::Vector;
    const auto& vs = doc["vectors"];
    if (!vs.is_array() || vs.empty()) parse_fail("basis file: \"vectors\" must be a non-empty array");
    b.spanning = Matrix(b.n, vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (!vs[j].is_array() || vs[j].size() != b.n) parse_fail("basis file: vector length differs from n");
      for (std::size_t i = 0; i < b.n; ++i) {
        if (!vs[j][i].is_number()) parse_fail("basis file: non-numeric entry");
        b.spanning(i, j) = vs[j][i].get<double>();
      }
    }
  } else if (doc.contains("matrices")) {
    b.ambient = Ambient::SymSpace;
    const auto& ms = doc["matrices"];
    if (!ms.is_array() || ms.empty()) parse_fail("basis file: \"matrices\" must be a non-empty array");
    b.spanning = Matrix(sym_dim(b.n), ms.size());
    for (std::size_t j = 0; j < ms.size(); ++j) {
      const Matrix m = rows_to_matrix(ms[j], b.n);
      if (asymmetry(m) > 1e-12 * std::max(max_abs(m), 1.0)) parse_fail("basis file: matrix is not symmetric");
      b.spanning.set_column(j, svec(m));
    }
  } else {
    parse_fail("basis file: expected \"vectors\" or \"matrices\"");
  }
  if (!b.spanning.all_finite()) parse_fail("basis file: non-finite entry");
  return b;
}

BasisFile read_basis_file(const std::string& path) { return parse_basis_text(read_file(path)); }

// ------------------------------------------------------------------ rendering

namespace {

json jnum(double v) { return rounded(v); }

json jvec(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(jnum(x));
  return a;
}

json jmat(const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(jvec(m.row(i)));
  return a;
}

template <class T>
json jopt(const std::optional<T>& v, const std::function<json(const T&)>& f) {
  return v ? f(*v) : json(nullptr);
}

class Text {
 public:
  void title(const std::string& s) {
    out_ << s << "\n";
    out_ << std::string(s.size(), '=') << "\n";
  }
  void section(const std::string& s) { out_ << "\n" << s << "\n"; }
  void kv(const std::string& k, const std::string& v) {
    std::string key = "  " + k;
    if (key.size() < kKeyWidth) key.resize(kKeyWidth, ' ');
    out_ << key << " " << v << "\n";
  }
  void kv(const std::string& k, bool v) { kv(k, std::string(v ? "yes" : "no")); }
  void kv(const std::string& k, double v) { kv(k, format_number(v)); }
  void line(const std::string& s) { out_ << "  " << s << "\n"; }
  void matrix(const std::string& label, const Matrix& m) {
    out_ << "  " << label << ":\n";
    std::vector<std::string> cells(m.rows() * m.cols());
    std::vector<std::size_t> width(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        cells[i * m.cols() + j] = format_number(m(i, j));
        width[j] = std::max(width[j], cells[i * m.cols() + j].size());
      }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      out_ << "    [";
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto& c = cells[i * m.cols() + j];
        out_ << (j ? "  " : "") << std::string(width[j] - c.size(), ' ') << c;
      }
      out_ << "]\n";
    }
  }
  void vector(const std::string& label, std::span<const double> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
    kv(label, s + ")");
  }
  std::string str() const { return out_.str(); }

 private:
  static constexpr std::size_t kKeyWidth = 34;
  std::ostringstream out_;
};

json header(const Context& ctx, const std::string& command) {
  json h;
  h["schema"] = kSchema;
  h["command"] = command;
  h["argv"] = ctx.argv;
  h["seed"] = ctx.seed;
  h["tolerances"] = {{"rank", jnum(ctx.tol.rank_tol)},
                     {"psd", jnum(ctx.tol.psd_tol)},
                     {"feas", jnum(ctx.tol.feas_tol)},
                     {"eq", jnum(ctx.tol.eq_tol)},
                     {"max_iter", ctx.tol.max_iter}};
  return h;
}

DecideOptions decide_options(const Context& ctx) {
  DecideOptions o;
  o.search.seed = ctx.seed;
  o.search.iterations = ctx.tol.max_iter;
  o.search.ascent_steps = ctx.tol.max_iter;
  return o;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string audit_text(const GroupInverseAudit& a) {
  if (a.all()) return "all four conditions hold";
  if (!a.axioms_solvable && !a.complementary && !a.range_stable && !a.null_stable) return "all four conditions fail";
  return "inconsistent";
}

std::string title_case(Tri t) {
  switch (t) {
    case Tri::Yes: return "Yes";
    case Tri::No: return "No";
    case Tri::Undecided: return "Undecided";
  }
  return "?";
}

// Certificates of the operator reduction live in svec coordinates.
json verdict_json(const MonotonicityVerdict& v, bool operator_level) {
  json j;
  j["trivially_range_monotone"] = to_string(v.trivial);
  j["range_monotone"] = to_string(v.range);
  j["fast_path"] = v.fast_path ? json(*v.fast_path) : json(nullptr);
  j["method"] = v.method;
  j["index_defect"] = v.index_defect;
  auto as_out = [&](const Matrix& m) { return operator_level ? jmat(m) : jvec(m.data()); };
  j["witness"] = v.witness ? as_out(*v.witness) : json(nullptr);
  j["range_witness"] = v.range_witness ? as_out(*v.range_witness) : json(nullptr);
  if (v.certificate)
    j["certificate"] = operator_level ? jmat(smat_dense(*v.certificate)) : jvec(*v.certificate);
  else
    j["certificate"] = nullptr;
  return j;
}

void verdict_text(Text& t, const MonotonicityVerdict& v, bool operator_level) {
  std::string triv = title_case(v.trivial);
  if (v.fast_path) triv += " (fast path " + *v.fast_path + ")";
  t.kv("trivially range monotone", triv);
  std::string range = title_case(v.range);
  if (v.range == Tri::Undecided) range += " (not refuted)";
  t.kv("range monotone", range);
  t.kv("decision method", v.method.empty() ? std::string("-") : v.method);
  auto show = [&](const std::string& label, const Matrix& m) {
    if (operator_level)
      t.matrix(label, m);
    else
      t.vector(label, m.data());
  };
  if (v.witness) show("witness", *v.witness);
  if (v.range_witness) show("range witness", *v.range_witness);
  if (v.certificate) {
    if (operator_level)
      t.matrix("certificate", smat_dense(*v.certificate));
    else
      t.vector("certificate", *v.certificate);
  }
}

json spectrum_json(const linalg::Spectrum& s) {
  json a = json::array();
  for (const auto& z : s.values) a.push_back({jnum(z.real()), jnum(z.imag())});
  return a;
}

std::string complex_text(const std::complex<double>& z) {
  if (z.imag() == 0.0) return format_number(z.real());
  return format_number(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_number(std::abs(z.imag())) + "i";
}

Rendered finish(const Context& ctx, const std::string& command, Status status, json result, const std::string& text,
                const std::string& message = {}) {
  json doc = header(ctx, command);
  doc["status"] = to_string(status);
  doc["result"] = std::move(result);
  if (status != Status::Ok || !message.empty()) doc["message"] = message;
  Rendered r;
  r.status = status;
  r.json = doc.dump(2) + "\n";
  r.text = text;
  r.message = message;
  if (status != Status::Ok) r.text += "\nstatus: " + std::string(to_string(status)) + (message.empty() ? "" : ": " + message) + "\n";
  return r;
}

using Body = std::function<Rendered()>;

Rendered guarded(const Context& ctx, const std::string& command, const Body& body) {
  try {
    return body();
  } catch (const SingularOperatorError& e) {
    json res;
    json basis = json::array();
    Text t;
    t.title(command);
    t.line(e.what());
    std::size_t k = 0;
    for (const auto& m : e.null_basis()) {
      basis.push_back(jmat(m));
      t.matrix("null space basis " + std::to_string(++k), m);
    }
    res["null_basis"] = basis;
    return finish(ctx, command, Status::Singular, res, t.str(), e.what());
  } catch (const Error& e) {
    return failure(ctx, command, status_of(e.code()), e.what());
  } catch (const std::exception& e) {
    return failure(ctx, command, Status::Internal, e.what());
  }
}

}  // namespace

Rendered failure(const Context& ctx, const std::string& command, Status status, const std::string& message) {
  Text t;
  t.title(command);
  return finish(ctx, command, status, json(nullptr), t.str(), message);
}

// ------------------------------------------------------------------ commands

Rendered classify(const Context& ctx, const Matrix& a) {
  return guarded(ctx, "classify", [&] {
    const auto& tol = ctx.tol;
    require_square(a, "classify");
    const std::size_t n = a.rows();
    const ClassReport c = rmono::classify(a, tol);
    json r;
    Text t;
    t.title("classify");
    t.matrix("A", a);

    std::string summary;
    json sim = nullptr;
    json equiv = nullptr;
    json neumann = nullptr;
    std::optional<SimReport> sr;
    if (c.m_class == MClass::SingularM && c.is_irreducible && n <= kMaxRayEnumerationOrder) sr = verify_sim(a, tol);
    if (c.is_z && n <= 12) {
      const auto audit = check_m_equivalences(a, tol);
      equiv = json::object();
      for (const auto& [k, v] : audit.items) equiv[k] = v;
    }
    switch (c.m_class) {
      case MClass::NotZ:
        summary = std::string("not a Z-matrix; Schur stability: ") + yes_no(c.schur_stable);
        break;
      case MClass::ZNotM:
        summary = "Z-matrix, not an M-matrix";
        break;
      case MClass::InvertibleM: {
        summary = "invertible M-matrix";
        if (!equiv.is_null()) summary += "; equivalence audit: consistent";
        const auto nr = neumann_inverse_check(a, 1e-10, tol);
        neumann = {{"relative_error", jnum(nr.relative_error)}, {"terms", nr.terms}};
        break;
      }
      case MClass::SingularM:
        if (!c.is_irreducible) {
          summary = "singular M-matrix (reducible)";
        } else if (sr) {
          summary = sr->all() ? "singular irreducible M-matrix; all SIM properties verified"
                              : "singular irreducible M-matrix; SIM property check failed";
        } else {
          summary = "singular irreducible M-matrix";
        }
        break;
    }
    if (sr) {
      sim = {{"rank_is_n_minus_1", sr->rank_is_n_minus_1},
             {"perron_positive", sr->perron_positive},
             {"group_inverse_exists", sr->group_inverse_exists},
             {"nonneg_on_range", sr->nonneg_on_range},
             {"proper_principal_submatrices_invertible_M", sr->proper_principal_submatrices_invertible_M},
             {"almost_monotone", sr->almost_monotone},
             {"trivially_range_monotone", sr->trivially_range_monotone},
             {"rank", sr->rank},
             {"perron_residual", jnum(sr->perron_residual)},
             {"axiom_residual", jnum(sr->axiom_residual)},
             {"range_rays", sr->range_rays},
             {"group_inverse", jopt<Matrix>(sr->group_inverse, jmat)},
             {"failed_submatrix", sr->failed_submatrix ? json(*sr->failed_submatrix) : json(nullptr)},
             {"all", sr->all()}};
    }
    const MonotonicityVerdict mv = decide_trivial_matrix(a, tol);

    r["summary"] = summary;
    r["order"] = n;
    r["is_z"] = c.is_z;
    r["class"] = to_string(c.m_class);
    r["s"] = c.is_z ? jnum(c.s) : json(nullptr);
    r["rho_b"] = c.is_z ? jnum(c.rho_b) : json(nullptr);
    r["boundary"] = c.boundary;
    r["collatz_wielandt"] =
        c.collatz_wielandt ? json{jnum(c.collatz_wielandt->first), jnum(c.collatz_wielandt->second)} : json(nullptr);
    r["irreducible"] = c.is_irreducible;
    r["positive_stable"] = c.positive_stable;
    r["schur_stable"] = c.schur_stable;
    r["rank"] = c.rank;
    r["perron_vector"] = c.perron_vector ? jvec(*c.perron_vector) : json(nullptr);
    r["spectrum"] = spectrum_json(c.spectrum);
    r["sim"] = sim;
    r["equivalences"] = equiv;
    r["neumann"] = neumann;
    r["trivial_range_monotonicity"] = verdict_json(mv, false);

    t.kv("summary", summary);
    t.kv("class", std::string(to_string(c.m_class)));
    t.kv("Z-matrix", c.is_z);
    if (c.is_z) {
      t.kv("s (max diagonal)", c.s);
      t.kv("spectral radius of B", c.rho_b);
      if (c.collatz_wielandt)
        t.kv("Collatz-Wielandt bounds",
             "[" + format_number(c.collatz_wielandt->first) + ", " + format_number(c.collatz_wielandt->second) + "]");
      if (c.boundary) t.kv("decided inside tolerance band", true);
    }
    t.kv("irreducible", c.is_irreducible);
    t.kv("positive stable", c.positive_stable);
    t.kv("Schur stable", c.schur_stable);
    t.kv("rank", static_cast<double>(c.rank));
    std::string spec;
    for (std::size_t i = 0; i < c.spectrum.values.size(); ++i)
      spec += (i ? ", " : "") + complex_text(c.spectrum.values[i]);
    t.kv("spectrum", spec);
    if (c.perron_vector) t.vector("Perron vector", *c.perron_vector);
    if (sr) {
      t.section("singular irreducible M-matrix properties");
      for (const auto& [k, v] : sim.items())
        if (v.is_boolean()) t.kv(k, v.get<bool>());
      t.kv("Perron residual", sr->perron_residual);
      t.kv("group inverse axiom residual", sr->axiom_residual);
      if (sr->group_inverse) t.matrix("group inverse", *sr->group_inverse);
    }
    if (!equiv.is_null()) {
      t.section("equivalence audit");
      for (const auto& [k, v] : equiv.items()) t.kv(k, v.get<bool>());
    }
    if (!neumann.is_null()) {
      t.section("Neumann series");
      t.kv("relative error", neumann["relative_error"].get<double>());
      t.kv("terms", static_cast<double>(neumann["terms"].get<std::size_t>()));
    }
    t.section("trivial range monotonicity (matrix)");
    verdict_text(t, mv, false);
    return finish(ctx, "classify", Status::Ok, r, t.str());
  });
}

Rendered operator_analysis(const Context& ctx, OperatorKind kind, const Matrix& a, bool analyze) {
  const std::string cmd = std::string("operator ") + to_string(kind);
  return guarded(ctx, cmd, [&] {
    const auto& tol = ctx.tol;
    require_square(a, "operator");
    const OperatorMatrix op = kind == OperatorKind::Lyapunov ? lyapunov(a) : stein(a);
    json r;
    Text t;
    t.title(cmd);
    t.matrix("A", a);
    r["kind"] = to_string(kind);
    r["order"] = op.order;
    r["dim"] = op.dim();
    r["base"] = jmat(a);
    r["matrix"] = jmat(op.entries);
    const std::size_t rank = linalg::rank(op.entries, tol);
    r["rank"] = rank;
    t.kv("order / svec dimension", std::to_string(op.order) + " / " + std::to_string(op.dim()));
    t.kv("rank", static_cast<double>(rank));
    if (op.dim() <= 10) t.matrix("operator matrix (svec coordinates)", op.entries);
    if (!analyze) return finish(ctx, cmd, Status::Ok, r, t.str());

    const bool idem = is_idempotent(op, tol);
    const bool closed = kind == OperatorKind::Lyapunov ? l_idempotent_expected(a, tol) : s_idempotent_expected(a, tol);
    const PotencyReport pot = detect_k_potency(op, 6, tol);
    const GroupInverseResult gi = rmono::group_inverse(op.entries, tol);
    const GroupInverseAudit audit = group_inverse_exists_audit(op.entries, tol);
    const ZCheckResult z = z_operator_spot_check(op, 200, ctx.seed, tol);
    const bool stable = kind == OperatorKind::Lyapunov ? is_positive_stable(a) : is_schur_stable(a);
    const MonotonicityVerdict v = decide_range_operator(op, tol, decide_options(ctx));

    r["idempotent"] = idem;
    r["idempotent_closed_form"] = closed;
    r["k_potency"] = {{"found", pot.found},
                      {"k", pot.found ? json(pot.k) : json(nullptr)},
                      {"alpha", pot.found ? jnum(pot.alpha) : json(nullptr)},
                      {"residual", jnum(pot.residual)}};
    r["group_inverse"] = {{"exists", gi.exists},
                          {"index", gi.index},
                          {"audit",
                           {{"axioms_solvable", audit.axioms_solvable},
                            {"complementary", audit.complementary},
                            {"range_stable", audit.range_stable},
                            {"null_stable", audit.null_stable}}}};
    r["z_operator"] = {{"holds", z.holds}, {"worst", jnum(z.worst)}};
    r[kind == OperatorKind::Lyapunov ? "positive_stable" : "schur_stable"] = stable;
    r["monotonicity"] = verdict_json(v, true);

    t.section("structure");
    t.kv("idempotent", idem);
    t.kv("idempotent (closed form)", closed);
    t.kv("k-potency", pot.found ? "(" + std::to_string(pot.k) + ", " + format_number(pot.alpha) + ")"
                                : std::string("none up to k = 6"));
    t.kv("k-potency residual", format_number(pot.residual));
    t.kv("group inverse", gi.exists ? std::string("exists (index ") + std::to_string(gi.index) + ")"
                                    : std::string("does not exist (index ") + std::to_string(gi.index) + ")");
    t.kv("existence audit", audit_text(audit));
    t.kv("Z-operator spot check", z.holds ? std::string("no violation in 200 trials")
                                          : std::string("violated"));
    t.kv("Z-operator worst pairing", format_number(z.worst));
    t.kv(kind == OperatorKind::Lyapunov ? "A positive stable" : "A Schur stable", stable);
    t.section("monotonicity");
    verdict_text(t, v, true);
    return finish(ctx, cmd, Status::Ok, r, t.str());
  });
}

Rendered solve(const Context& ctx, OperatorKind kind, const Matrix& a, const Matrix& q) {
  const std::string cmd = std::string("solve ") + to_string(kind);
  return guarded(ctx, cmd, [&] {
    require_square(a, "solve");
    if (q.rows() != a.rows() || q.cols() != a.cols())
      throw Error(ErrorCode::InvalidArgument, "solve: Q must have the order of A");
    if (asymmetry(q) > ctx.tol.eq_tol * std::max(max_abs(q), 1.0))
      throw Error(ErrorCode::InvalidArgument, "solve: Q is not symmetric");
    const OperatorMatrix op = kind == OperatorKind::Lyapunov ? lyapunov(a) : stein(a);
    const SolveResult s = rmono::solve(op, q, ctx.tol);
    json r;
    r["kind"] = to_string(kind);
    r["x"] = jmat(s.x);
    r["residual"] = jnum(s.residual);
    r["stable_base"] = s.stable_base;
    r["rhs_positive_definite"] = s.rhs_positive_definite;
    r["x_positive_definite"] = s.x_positive_definite ? json(*s.x_positive_definite) : json(nullptr);
    Text t;
    t.title(cmd);
    t.matrix("A", a);
    t.matrix("Q", q);
    t.kv(kind == OperatorKind::Lyapunov ? "A positive stable" : "A Schur stable", s.stable_base);
    t.kv("Q positive definite", s.rhs_positive_definite);
    t.matrix("X", s.x);
    t.kv("residual", s.residual);
    if (s.x_positive_definite) t.kv("X positive definite", *s.x_positive_definite);
    return finish(ctx, cmd, Status::Ok, r, t.str());
  });
}

Rendered group_inverse(const Context& ctx, const Matrix& a) {
  return guarded(ctx, "groupinv", [&] {
    require_square(a, "groupinv");
    const GroupInverseResult g = rmono::group_inverse(a, ctx.tol);
    const GroupInverseAudit audit = group_inverse_exists_audit(a, ctx.tol);
    json r;
    r["exists"] = g.exists;
    r["index"] = g.index;
    r["inverse"] = g.inverse ? jmat(*g.inverse) : json(nullptr);
    r["residuals"] = {{"axm_minus_a", jnum(g.res_mxm)}, {"xax_minus_x", jnum(g.res_xmx)}, {"commutator", jnum(g.res_commute)}};
    r["audit"] = {{"axioms_solvable", audit.axioms_solvable},
                  {"complementary", audit.complementary},
                  {"range_stable", audit.range_stable},
                  {"null_stable", audit.null_stable}};
    Text t;
    t.title("groupinv");
    t.matrix("A", a);
    t.kv("group inverse", std::string(g.exists ? "exists" : "does not exist") + " (index " + std::to_string(g.index) + ")");
    if (g.inverse) {
      t.matrix("A#", *g.inverse);
      t.kv("|A X A - A|", g.res_mxm);
      t.kv("|X A X - X|", g.res_xmx);
      t.kv("|A X - X A|", g.res_commute);
    }
    t.kv("existence audit", audit_text(audit));
    return finish(ctx, "groupinv", Status::Ok, r, t.str());
  });
}

Rendered feasibility(const Context& ctx, const BasisFile& b) {
  const bool psd = b.ambient == Ambient::SymSpace;
  const std::string cmd = psd ? "feas psd" : "feas orthant";
  return guarded(ctx, cmd, [&] {
    const SubspaceSpec spec = psd ? SubspaceSpec::symmetric(b.n, b.spanning, ctx.tol)
                                  : SubspaceSpec::vectors(b.n, b.spanning, ctx.tol);
    PsdSearchOptions opt = decide_options(ctx).search;
    const ConeDecision d = psd ? psd_intersection(spec, ctx.tol, opt) : orthant_intersection(spec, ctx.tol);
    const std::string check = verify_decision(spec, d, ctx.tol);
    auto as_out = [&](const Vector& v) { return psd ? jmat(smat_dense(v)) : jvec(v); };
    json r;
    r["cone"] = psd ? "psd" : "orthant";
    r["n"] = b.n;
    r["subspace_dim"] = spec.dim();
    r["status"] = to_string(d.status);
    r["method"] = d.method;
    r["witness"] = d.witness ? as_out(*d.witness) : json(nullptr);
    r["certificate"] = d.certificate ? as_out(*d.certificate) : json(nullptr);
    r["verified"] = check.empty();
    Text t;
    t.title(cmd);
    t.kv("order", static_cast<double>(b.n));
    t.kv("subspace dimension", static_cast<double>(spec.dim()));
    t.kv("status", std::string(to_string(d.status)));
    t.kv("method", d.method);
    auto show = [&](const std::string& label, const Vector& v) {
      if (psd)
        t.matrix(label, smat_dense(v));
      else
        t.vector(label, v);
    };
    if (d.witness) show("witness", *d.witness);
    if (d.certificate) show("certificate", *d.certificate);
    t.kv("verification", check.empty() ? std::string("passed") : check);
    if (!check.empty()) throw Error(ErrorCode::Inconsistent, "decision failed verification: " + check);
    return finish(ctx, cmd, Status::Ok, r, t.str());
  });
}

namespace {

json entry_json(const EntryReport& e) {
  json j;
  j["id"] = e.id;
  j["locus"] = e.locus;
  j["kind"] = e.kind;
  j["passed"] = e.passed;
  j["verdict"] = verdict_json(e.verdict, e.kind != "matrix");
  json checks = json::array();
  for (const auto& c : e.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["notes"] = e.notes;
  return j;
}

void entry_text(Text& t, const EntryReport& e) {
  t.section(e.id + ": " + (e.passed ? "pass" : "FAIL") + "  [" + e.locus + "]");
  t.kv("trivially range monotone", title_case(e.verdict.trivial) +
                                       (e.verdict.fast_path ? " (fast path " + *e.verdict.fast_path + ")" : ""));
  if (e.kind != "matrix") t.kv("range monotone", title_case(e.verdict.range));
  for (const auto& c : e.checks) t.kv(std::string(c.passed ? "ok   " : "FAIL ") + c.name, c.detail);
  for (const auto& n : e.notes) t.line("note: " + n);
}

}  // namespace

Rendered reproduce_entry(const Context& ctx, const std::string& id) {
  return guarded(ctx, "reproduce --entry", [&] {
    const EntryReport e = run_entry(id, ctx.tol, decide_options(ctx));
    Text t;
    t.title("reproduce " + id);
    entry_text(t, e);
    json r;
    r["entries"] = json::array({entry_json(e)});
    r["passed"] = e.passed;
    return finish(ctx, "reproduce --entry", e.passed ? Status::Ok : Status::Mismatch, r, t.str(),
                  e.passed ? "" : "entry " + id + " does not reproduce");
  });
}

Rendered reproduce_all(const Context& ctx) {
  return guarded(ctx, "reproduce --all", [&] {
    const auto all = run_all(ctx.tol, decide_options(ctx));
    Text t;
    t.title("reproduce all");
    json entries = json::array();
    std::size_t failed = 0;
    for (const auto& e : all) {
      entries.push_back(entry_json(e));
      entry_text(t, e);
      failed += e.passed ? 0 : 1;
    }
    t.section(std::to_string(all.size() - failed) + " of " + std::to_string(all.size()) + " entries pass");
    json r;
    r["entries"] = entries;
    r["passed"] = failed == 0;
    return finish(ctx, "reproduce --all", failed == 0 ? Status::Ok : Status::Mismatch, r, t.str(),
                  failed == 0 ? "" : std::to_string(failed) + " entries do not reproduce");
  });
}

Rendered reproduce_table(const Context& ctx) {
  return guarded(ctx, "reproduce --table", [&] {
    const SummaryTable tab = rmono::reproduce_table(ctx.tol, decide_options(ctx));
    json rows = json::array();
    auto cell_json = [](const TableCell& c) {
      return json{{"claim", c.claim}, {"computed", c.computed}, {"basis", c.basis}, {"passed", c.passed}};
    };
    std::size_t w0 = std::string("class").size();
    std::size_t w1 = std::string("Lyapunov").size();
    for (const auto& row : tab.rows) {
      w0 = std::max(w0, row.matrix_class.size());
      w1 = std::max(w1, row.lyapunov.computed.size());
      json checks = json::array();
      for (const auto& c : row.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      rows.push_back({{"class", row.matrix_class},
                      {"lyapunov", cell_json(row.lyapunov)},
                      {"stein", cell_json(row.stein)},
                      {"checks", checks}});
    }
    auto pad = [](std::string s, std::size_t w) {
      s.resize(std::max(w, s.size()), ' ');
      return s;
    };
    Text t;
    t.title(tab.title);
    t.line(pad("class", w0) + " | " + pad("Lyapunov", w1) + " | Stein");
    t.line(std::string(w0, '-') + "-+-" + std::string(w1, '-') + "-+-" + std::string(5, '-'));
    for (const auto& row : tab.rows)
      t.line(pad(row.matrix_class, w0) + " | " + pad(row.lyapunov.computed, w1) + " | " + row.stein.computed);
    for (const auto& row : tab.rows) {
      t.section("evidence for " + row.matrix_class);
      for (const auto& c : row.checks) t.kv(std::string(c.passed ? "ok   " : "FAIL ") + c.name, c.detail);
    }
    json r;
    r["title"] = tab.title;
    r["rows"] = rows;
    r["passed"] = tab.passed;
    return finish(ctx, "reproduce --table", tab.passed ? Status::Ok : Status::Mismatch, r, t.str(),
                  tab.passed ? "" : "summary table does not reproduce");
  });
}

}  // namespace rmono::report
