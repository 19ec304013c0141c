// rangemono: classification, operator analysis, equation solving, group
// inverses, cone feasibility and catalog reproduction from the command line.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rangemono/rangemono.h"

namespace {

// Exit status contract.
int exit_code(rmono_status s) {
  switch (s) {
    case RMONO_OK: return 0;
    case RMONO_PARSE:
    case RMONO_INVALID_ARGUMENT:
    case RMONO_NOT_FOUND: return 2;
    case RMONO_CAPABILITY:
    case RMONO_NONCONVERGENCE: return 3;
    case RMONO_SINGULAR: return 4;
    case RMONO_MISMATCH: return 5;
    default: return 1;
  }
}

struct Options {
  double tol_rank = 1e-9;
  double tol_psd = 1e-9;
  double tol_feas = 1e-7;
  int max_iter = 5000;
  std::uint64_t seed = 1;
  bool json = false;
};

using OptionsPtr = std::unique_ptr<rmono_options, decltype(&rmono_options_destroy)>;
using MatrixPtr = std::unique_ptr<rmono_matrix, decltype(&rmono_matrix_destroy)>;

int print(rmono_status st, rmono_report* rep, bool json) {
  if (rep) {
    std::fputs(json ? rmono_report_json(rep) : rmono_report_text(rep), stdout);
    rmono_report_destroy(rep);
  }
  if (st != RMONO_OK) std::fprintf(stderr, "rangemono: %s: %s\n", rmono_status_string(st), rmono_last_error());
  return exit_code(st);
}

class Runner {
 public:
  Runner(const Options& o, int argc, char** argv) : o_(o), opts_(nullptr, rmono_options_destroy) {
    rmono_options* raw = nullptr;
    status_ = rmono_options_create(&raw);
    opts_.reset(raw);
    // argv[0] is left out so the echo does not depend on the install path.
    std::vector<const char*> args(argv + 1, argv + argc);
    set(rmono_options_set_argv(raw, static_cast<int>(args.size()), args.data()));
    set(rmono_options_set_tolerance(raw, RMONO_TOL_RANK, o.tol_rank));
    set(rmono_options_set_tolerance(raw, RMONO_TOL_PSD, o.tol_psd));
    set(rmono_options_set_tolerance(raw, RMONO_TOL_FEAS, o.tol_feas));
    set(rmono_options_set_max_iter(raw, o.max_iter));
    set(rmono_options_set_seed(raw, o.seed));
  }

  bool ok() const { return status_ == RMONO_OK; }
  int fail(const char* command) {
    rmono_report* rep = nullptr;
    const std::string msg = rmono_last_error();
    rmono_report_failure(nullptr, command, status_, msg.c_str(), &rep);
    return print(status_, rep, o_.json);
  }

  MatrixPtr load(const std::string& path, const char* command, int& code) {
    rmono_matrix* m = nullptr;
    const rmono_status st = rmono_matrix_read(path.c_str(), &m);
    if (st != RMONO_OK) {
      const std::string msg = rmono_last_error();
      rmono_report* rep = nullptr;
      rmono_report_failure(opts_.get(), command, st, msg.c_str(), &rep);
      code = print(st, rep, o_.json);
    }
    return MatrixPtr(m, rmono_matrix_destroy);
  }

  const rmono_options* opts() const { return opts_.get(); }
  bool json() const { return o_.json; }

 private:
  void set(rmono_status s) {
    if (status_ == RMONO_OK) status_ = s;
  }

  Options o_;
  OptionsPtr opts_;
  rmono_status status_ = RMONO_OK;
};

rmono_operator_kind parse_kind(const std::string& k) { return k == "stein" ? RMONO_STEIN : RMONO_LYAPUNOV; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range monotonicity of M-matrices, Lyapunov and Stein operators"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--tol-rank", o.tol_rank, "relative rank threshold")->check(CLI::PositiveNumber);
  app.add_option("--tol-psd", o.tol_psd, "PSD classification threshold")->check(CLI::PositiveNumber);
  app.add_option("--tol-feas", o.tol_feas, "feasibility residual threshold")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", o.max_iter, "iteration cap for searches")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed for randomized stages");
  app.add_flag("--json", o.json, "machine-readable output");

  const std::vector<std::string> kinds{"lyapunov", "stein"};

  std::string path;
  auto* classify = app.add_subcommand("classify", "classify a matrix (Z, M, irreducible, stability)");
  classify->add_option("matrix", path, "matrix file")->required();

  std::string kind;
  bool analyze = false;
  auto* op = app.add_subcommand("operator", "Lyapunov or Stein operator of a matrix");
  op->add_option("kind", kind, "lyapunov or stein")->required()->check(CLI::IsMember(kinds));
  op->add_option("matrix", path, "matrix file")->required();
  op->add_flag("--analyze", analyze, "idempotency, k-potency, group inverse and monotonicity verdicts");

  std::string qpath;
  auto* solve = app.add_subcommand("solve", "solve L_A(X) = Q or S_A(X) = Q");
  solve->add_option("kind", kind, "lyapunov or stein")->required()->check(CLI::IsMember(kinds));
  solve->add_option("A", path, "matrix file for A")->required();
  solve->add_option("Q", qpath, "matrix file for Q")->required();

  std::string entry;
  bool all = false;
  bool table = false;
  auto* repro = app.add_subcommand("reproduce", "re-verify catalog entries or the summary table");
  auto* e_opt = repro->add_option("--entry", entry, "catalog id");
  auto* a_opt = repro->add_flag("--all", all, "every catalog entry");
  auto* t_opt = repro->add_flag("--table", table, "the four-class summary table");
  e_opt->excludes(a_opt)->excludes(t_opt);
  a_opt->excludes(t_opt);
  repro->require_option(1);

  auto* ginv = app.add_subcommand("groupinv", "group inverse of a matrix");
  ginv->add_option("matrix", path, "matrix file")->required();

  std::string cone;
  auto* feas = app.add_subcommand("feas", "does a subspace meet the cone only at 0?");
  feas->add_option("cone", cone, "psd or orthant")->required()->check(CLI::IsMember({"psd", "orthant"}));
  feas->add_option("basis", path, "basis file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Runner run(o, argc, argv);
  if (!run.ok()) return run.fail("options");

  int code = 0;
  rmono_report* rep = nullptr;
  if (*classify) {
    auto m = run.load(path, "classify", code);
    if (!m) return code;
    const rmono_status st = rmono_classify(run.opts(), m.get(), &rep);
    return print(st, rep, run.json());
  }
  if (*op) {
    const std::string cmd = "operator " + kind;
    auto m = run.load(path, cmd.c_str(), code);
    if (!m) return code;
    const rmono_status st = rmono_operator_analyze(run.opts(), parse_kind(kind), m.get(), analyze ? 1 : 0, &rep);
    return print(st, rep, run.json());
  }
  if (*solve) {
    const std::string cmd = "solve " + kind;
    auto a = run.load(path, cmd.c_str(), code);
    if (!a) return code;
    auto q = run.load(qpath, cmd.c_str(), code);
    if (!q) return code;
    const rmono_status st = rmono_solve(run.opts(), parse_kind(kind), a.get(), q.get(), &rep);
    return print(st, rep, run.json());
  }
  if (*repro) {
    rmono_status st;
    if (table)
      st = rmono_reproduce_table(run.opts(), &rep);
    else if (all)
      st = rmono_reproduce_all(run.opts(), &rep);
    else
      st = rmono_reproduce_entry(run.opts(), entry.c_str(), &rep);
    return print(st, rep, run.json());
  }
  if (*ginv) {
    auto m = run.load(path, "groupinv", code);
    if (!m) return code;
    const rmono_status st = rmono_groupinv_report(run.opts(), m.get(), &rep);
    return print(st, rep, run.json());
  }
  if (*feas) {
    const rmono_cone c = cone == "psd" ? RMONO_CONE_PSD : RMONO_CONE_ORTHANT;
    const rmono_status st = rmono_feasibility(run.opts(), c, path.c_str(), &rep);
    return print(st, rep, run.json());
  }
  return 1;
}
