#include "rangemono/rangemono.h"

#include <cstring>
#include <new>
#include <string>

#include "rangemono/catalog.hpp"
#include "rangemono/groupinv.hpp"
#include "rangemono/monotonicity.hpp"
#include "rangemono/report.hpp"

struct rmono_options {
  rmono::report::Context ctx;
};

struct rmono_matrix {
  rmono::Matrix m;
};

struct rmono_report {
  rmono::report::Rendered r;
};

namespace {

thread_local std::string g_last_error;

rmono_status to_c(rmono::report::Status s) {
  using S = rmono::report::Status;
  switch (s) {
    case S::Ok: return RMONO_OK;
    case S::Parse: return RMONO_PARSE;
    case S::Capability: return RMONO_CAPABILITY;
    case S::Singular: return RMONO_SINGULAR;
    case S::Mismatch: return RMONO_MISMATCH;
    case S::InvalidArgument: return RMONO_INVALID_ARGUMENT;
    case S::NonConvergence: return RMONO_NONCONVERGENCE;
    case S::Inconsistent: return RMONO_INCONSISTENT;
    case S::NotFound: return RMONO_NOT_FOUND;
    case S::Internal: return RMONO_INTERNAL;
  }
  return RMONO_INTERNAL;
}

rmono::report::Status from_c(rmono_status s) {
  using S = rmono::report::Status;
  switch (s) {
    case RMONO_OK: return S::Ok;
    case RMONO_PARSE: return S::Parse;
    case RMONO_CAPABILITY: return S::Capability;
    case RMONO_SINGULAR: return S::Singular;
    case RMONO_MISMATCH: return S::Mismatch;
    case RMONO_INVALID_ARGUMENT: return S::InvalidArgument;
    case RMONO_NONCONVERGENCE: return S::NonConvergence;
    case RMONO_INCONSISTENT: return S::Inconsistent;
    case RMONO_NOT_FOUND: return S::NotFound;
    case RMONO_INTERNAL: return S::Internal;
  }
  return S::Internal;
}

rmono_status fail(rmono_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
rmono_status guard(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const rmono::Error& e) {
    return fail(to_c(rmono::report::status_of(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RMONO_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RMONO_INTERNAL, e.what());
  }
}

const rmono::report::Context& context(const rmono_options* o) {
  static const rmono::report::Context defaults;
  return o ? o->ctx : defaults;
}

rmono_status emit(rmono::report::Rendered r, rmono_report** out) {
  const rmono_status s = to_c(r.status);
  if (s != RMONO_OK) g_last_error = r.message;
  *out = new rmono_report{std::move(r)};
  return s;
}

rmono_tri to_c(rmono::Tri t) {
  switch (t) {
    case rmono::Tri::Yes: return RMONO_YES;
    case rmono::Tri::No: return RMONO_NO;
    case rmono::Tri::Undecided: return RMONO_UNDECIDED;
  }
  return RMONO_UNDECIDED;
}

rmono::OperatorKind kind_of(rmono_operator_kind k) {
  return k == RMONO_STEIN ? rmono::OperatorKind::Stein : rmono::OperatorKind::Lyapunov;
}

bool valid_kind(rmono_operator_kind k) { return k == RMONO_LYAPUNOV || k == RMONO_STEIN; }

rmono::DecideOptions decide_options(const rmono::report::Context& ctx) {
  rmono::DecideOptions o;
  o.search.seed = ctx.seed;
  o.search.iterations = ctx.tol.max_iter;
  o.search.ascent_steps = ctx.tol.max_iter;
  return o;
}

}  // namespace

extern "C" {

const char* rmono_version(void) { return "1.0.0"; }

const char* rmono_status_string(rmono_status status) {
  switch (status) {
    case RMONO_OK: return "ok";
    case RMONO_PARSE: return "parse error";
    case RMONO_CAPABILITY: return "capability exceeded";
    case RMONO_SINGULAR: return "singular operator";
    case RMONO_MISMATCH: return "reproduction mismatch";
    case RMONO_INVALID_ARGUMENT: return "invalid argument";
    case RMONO_NONCONVERGENCE: return "no convergence";
    case RMONO_INCONSISTENT: return "inconsistent results";
    case RMONO_NOT_FOUND: return "not found";
    case RMONO_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rmono_last_error(void) { return g_last_error.c_str(); }

rmono_status rmono_options_create(rmono_options** out) {
  if (!out) return fail(RMONO_INVALID_ARGUMENT, "null output pointer");
  return guard([&] {
    *out = new rmono_options{};
    return RMONO_OK;
  });
}

void rmono_options_destroy(rmono_options* opts) { delete opts; }

rmono_status rmono_options_set_tolerance(rmono_options* opts, rmono_tolerance which, double value) {
  if (!opts) return fail(RMONO_INVALID_ARGUMENT, "null options");
  return guard([&] {
    rmono::Tolerances t = opts->ctx.tol;
    switch (which) {
      case RMONO_TOL_RANK: t.rank_tol = value; break;
      case RMONO_TOL_PSD: t.psd_tol = value; break;
      case RMONO_TOL_FEAS: t.feas_tol = value; break;
      case RMONO_TOL_EQ: t.eq_tol = value; break;
      default: return fail(RMONO_INVALID_ARGUMENT, "unknown tolerance selector");
    }
    t.validate();
    opts->ctx.tol = t;
    return RMONO_OK;
  });
}

rmono_status rmono_options_set_max_iter(rmono_options* opts, int max_iter) {
  if (!opts) return fail(RMONO_INVALID_ARGUMENT, "null options");
  return guard([&] {
    rmono::Tolerances t = opts->ctx.tol;
    t.max_iter = max_iter;
    t.validate();
    opts->ctx.tol = t;
    return RMONO_OK;
  });
}

rmono_status rmono_options_set_seed(rmono_options* opts, uint64_t seed) {
  if (!opts) return fail(RMONO_INVALID_ARGUMENT, "null options");
  opts->ctx.seed = seed;
  return RMONO_OK;
}

rmono_status rmono_options_set_argv(rmono_options* opts, int argc, const char* const* argv) {
  if (!opts || argc < 0 || (argc > 0 && !argv)) return fail(RMONO_INVALID_ARGUMENT, "invalid argv");
  return guard([&] {
    opts->ctx.argv.clear();
    for (int i = 0; i < argc; ++i) opts->ctx.argv.emplace_back(argv[i] ? argv[i] : "");
    return RMONO_OK;
  });
}

rmono_status rmono_matrix_create(size_t rows, size_t cols, const double* data, rmono_matrix** out) {
  if (!out || (rows * cols > 0 && !data)) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    rmono::Matrix m(rows, cols, std::vector<double>(data, data + rows * cols));
    if (!m.all_finite()) return fail(RMONO_INVALID_ARGUMENT, "non-finite matrix entry");
    *out = new rmono_matrix{std::move(m)};
    return RMONO_OK;
  });
}

rmono_status rmono_matrix_parse(const char* text, rmono_matrix** out) {
  if (!out || !text) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    *out = new rmono_matrix{rmono::report::parse_matrix_text(text)};
    return RMONO_OK;
  });
}

rmono_status rmono_matrix_read(const char* path, rmono_matrix** out) {
  if (!out || !path) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    *out = new rmono_matrix{rmono::report::read_matrix_file(path)};
    return RMONO_OK;
  });
}

void rmono_matrix_destroy(rmono_matrix* m) { delete m; }
size_t rmono_matrix_rows(const rmono_matrix* m) { return m ? m->m.rows() : 0; }
size_t rmono_matrix_cols(const rmono_matrix* m) { return m ? m->m.cols() : 0; }

rmono_status rmono_matrix_copy(const rmono_matrix* m, double* out, size_t capacity) {
  if (!m || !out) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  const auto d = m->m.data();
  if (capacity < d.size()) return fail(RMONO_INVALID_ARGUMENT, "output buffer too small");
  std::memcpy(out, d.data(), d.size() * sizeof(double));
  return RMONO_OK;
}

rmono_status rmono_trivially_range_monotone(const rmono_options* opts, rmono_operator_kind kind,
                                            const rmono_matrix* a, rmono_tri* trivial, rmono_tri* range) {
  if (!a || !trivial || !valid_kind(kind)) return fail(RMONO_INVALID_ARGUMENT, "invalid argument");
  return guard([&] {
    const auto& ctx = context(opts);
    rmono::require_square(a->m, "rmono_trivially_range_monotone");
    const auto op = kind == RMONO_STEIN ? rmono::stein(a->m) : rmono::lyapunov(a->m);
    const auto v = range ? rmono::decide_range_operator(op, ctx.tol, decide_options(ctx))
                         : rmono::decide_trivial_operator(op, ctx.tol, decide_options(ctx));
    *trivial = to_c(v.trivial);
    if (range) *range = to_c(v.range);
    return RMONO_OK;
  });
}

rmono_status rmono_matrix_trivially_range_monotone(const rmono_options* opts, const rmono_matrix* a,
                                                   rmono_tri* trivial) {
  if (!a || !trivial) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    *trivial = to_c(rmono::decide_trivial_matrix(a->m, context(opts).tol).trivial);
    return RMONO_OK;
  });
}

rmono_status rmono_group_inverse(const rmono_options* opts, const rmono_matrix* a, int* exists, double* out,
                                 size_t capacity) {
  if (!a || !exists) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    rmono::require_square(a->m, "rmono_group_inverse");
    const auto g = rmono::group_inverse(a->m, context(opts).tol);
    *exists = g.exists ? 1 : 0;
    if (g.exists && out) {
      const auto d = g.inverse->data();
      if (capacity < d.size()) return fail(RMONO_INVALID_ARGUMENT, "output buffer too small");
      std::memcpy(out, d.data(), d.size() * sizeof(double));
    }
    return RMONO_OK;
  });
}

rmono_status rmono_classify(const rmono_options* opts, const rmono_matrix* a, rmono_report** out) {
  if (!a || !out) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] { return emit(rmono::report::classify(context(opts), a->m), out); });
}

rmono_status rmono_operator_analyze(const rmono_options* opts, rmono_operator_kind kind, const rmono_matrix* a,
                                    int analyze, rmono_report** out) {
  if (!a || !out || !valid_kind(kind)) return fail(RMONO_INVALID_ARGUMENT, "invalid argument");
  return guard([&] {
    return emit(rmono::report::operator_analysis(context(opts), kind_of(kind), a->m, analyze != 0), out);
  });
}

rmono_status rmono_solve(const rmono_options* opts, rmono_operator_kind kind, const rmono_matrix* a,
                         const rmono_matrix* q, rmono_report** out) {
  if (!a || !q || !out || !valid_kind(kind)) return fail(RMONO_INVALID_ARGUMENT, "invalid argument");
  return guard([&] { return emit(rmono::report::solve(context(opts), kind_of(kind), a->m, q->m), out); });
}

rmono_status rmono_groupinv_report(const rmono_options* opts, const rmono_matrix* a, rmono_report** out) {
  if (!a || !out) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] { return emit(rmono::report::group_inverse(context(opts), a->m), out); });
}

rmono_status rmono_feasibility(const rmono_options* opts, rmono_cone cone, const char* basis_path,
                               rmono_report** out) {
  if (!basis_path || !out || (cone != RMONO_CONE_PSD && cone != RMONO_CONE_ORTHANT))
    return fail(RMONO_INVALID_ARGUMENT, "invalid argument");
  return guard([&] {
    const auto& ctx = context(opts);
    const char* cmd = cone == RMONO_CONE_PSD ? "feas psd" : "feas orthant";
    rmono::report::BasisFile b;
    try {
      b = rmono::report::read_basis_file(basis_path);
    } catch (const rmono::Error& e) {
      return emit(rmono::report::failure(ctx, cmd, rmono::report::status_of(e.code()), e.what()), out);
    }
    const bool psd_file = b.ambient == rmono::Ambient::SymSpace;
    if (psd_file != (cone == RMONO_CONE_PSD))
      return emit(rmono::report::failure(ctx, cmd, rmono::report::Status::InvalidArgument,
                                         psd_file ? "basis file lists matrices; use the psd cone"
                                                  : "basis file lists vectors; use the orthant cone"),
                  out);
    return emit(rmono::report::feasibility(ctx, b), out);
  });
}

rmono_status rmono_reproduce_entry(const rmono_options* opts, const char* id, rmono_report** out) {
  if (!id || !out) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] { return emit(rmono::report::reproduce_entry(context(opts), id), out); });
}

rmono_status rmono_reproduce_all(const rmono_options* opts, rmono_report** out) {
  if (!out) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] { return emit(rmono::report::reproduce_all(context(opts)), out); });
}

rmono_status rmono_reproduce_table(const rmono_options* opts, rmono_report** out) {
  if (!out) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] { return emit(rmono::report::reproduce_table(context(opts)), out); });
}

rmono_status rmono_report_failure(const rmono_options* opts, const char* command, rmono_status status,
                                  const char* message, rmono_report** out) {
  if (!command || !out) return fail(RMONO_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    return emit(rmono::report::failure(context(opts), command, from_c(status), message ? message : ""), out);
  });
}

rmono_status rmono_report_status(const rmono_report* r) { return r ? to_c(r->r.status) : RMONO_INVALID_ARGUMENT; }
const char* rmono_report_json(const rmono_report* r) { return r ? r->r.json.c_str() : ""; }
const char* rmono_report_text(const rmono_report* r) { return r ? r->r.text.c_str() : ""; }
void rmono_report_destroy(rmono_report* r) { delete r; }

size_t rmono_catalog_size(void) {
  try {
    return rmono::catalog_entries().size();
  } catch (...) {
    return 0;
  }
}

const char* rmono_catalog_id(size_t index) {
  try {
    const auto& e = rmono::catalog_entries();
    return index < e.size() ? e[index].id.c_str() : nullptr;
  } catch (...) {
    return nullptr;
  }
}

}  // extern "C"
