// Registry of worked examples and counterexamples with their claimed
// outcomes, and regeneration of the four-class summary table. Every claim is
// recomputed at run time; the registry stores inputs and claims only.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rangemono/matrix.hpp"
#include "rangemono/monotonicity.hpp"

namespace rmono {

struct Relation {
  std::string type;  // image, kernel, psd, indefinite, witness, power, group_inverse, ...
  std::optional<Matrix> input;
  std::optional<Matrix> output;
  std::optional<Matrix> matrix;
  bool range = false;   // witness: also refutes range monotonicity
  unsigned k = 0;       // power
  double alpha = 0.0;   // power, group_inverse
  bool holds = true;    // the relation is claimed to hold (false: claimed to fail)
  bool value = false;   // group_inverse_exists
};

struct CatalogEntry {
  std::string id;
  std::string locus;
  std::string kind;  // "lyapunov", "stein" or "matrix"
  Matrix a;
  std::optional<std::string> trivial;    // "yes" | "no"
  std::optional<std::string> range;      // "yes" | "no" | "not-refuted"
  std::optional<std::string> fast_path;
  std::vector<Relation> relations;
  std::vector<std::string> notes;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct EntryReport {
  std::string id;
  std::string locus;
  std::string kind;
  bool passed = false;
  std::vector<Check> checks;
  MonotonicityVerdict verdict;
  std::vector<std::string> notes;
};

struct TableCell {
  std::string claim;      // "yes", "no" or "split"
  std::string computed;   // rendered cell text
  std::vector<std::string> basis;
  bool passed = false;
};

struct TableRow {
  std::string matrix_class;
  TableCell lyapunov;
  TableCell stein;
  std::vector<Check> checks;
};

struct SummaryTable {
  std::string title;
  std::vector<TableRow> rows;
  bool passed = false;
};

/// Entries of the shipped catalog, ordered by id.
const std::vector<CatalogEntry>& catalog_entries();
/// Throws NotFound for an unknown id.
const CatalogEntry& catalog_entry(const std::string& id);
/// Parses a catalog document. Throws Parse on malformed input.
std::vector<CatalogEntry> parse_catalog(const std::string& json_text);

EntryReport run_entry(const std::string& id, const Tolerances& tol = {}, const DecideOptions& opt = {});
EntryReport run_entry(const CatalogEntry& e, const Tolerances& tol = {}, const DecideOptions& opt = {});
std::vector<EntryReport> run_all(const Tolerances& tol = {}, const DecideOptions& opt = {});

/// Yes cells: structural guarantee and reduction agree on the cited entry
/// and on seeded random members of the class. No cells: a cited entry
/// passes with a verified witness.
SummaryTable reproduce_table(const Tolerances& tol = {}, const DecideOptions& opt = {});

}  // namespace rmono
