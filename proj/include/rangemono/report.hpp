// Input files and rendered reports (JSON and aligned text) for the command
// front end. Both renderings carry the same numbers, printed with 12
// significant digits.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rangemono/conefeas.hpp"
#include "rangemono/matrix.hpp"
#include "rangemono/operators.hpp"

namespace rmono::report {

inline constexpr const char* kSchema = "rangemono.report/1";

/// JSON {"n": k, "rows": [[...], ...]} or plain text (first token n, then
/// n rows). Throws Parse.
Matrix parse_matrix_text(const std::string& text);
Matrix read_matrix_file(const std::string& path);

struct BasisFile {
  Ambient ambient = Ambient::Vector;
  std::size_t n = 0;
  Matrix spanning;  // columns; svec coordinates for the symmetric case
};

/// {"n": k, "vectors": [[...]]} or {"n": k, "matrices": [[[...]]]}.
BasisFile parse_basis_text(const std::string& text);
BasisFile read_basis_file(const std::string& path);

std::string read_file(const std::string& path);

struct Context {
  Tolerances tol;
  std::uint64_t seed = 1;
  std::vector<std::string> argv;  // command echo
};

enum class Status { Ok, Parse, Capability, Singular, Mismatch, InvalidArgument, NonConvergence, Inconsistent, NotFound, Internal };
Status status_of(ErrorCode c);
const char* to_string(Status s);

struct Rendered {
  Status status = Status::Ok;
  std::string json;  // single document, newline terminated
  std::string text;
  std::string message;  // empty on success
};

/// Each command catches library errors and renders them.
Rendered classify(const Context& ctx, const Matrix& a);
Rendered operator_analysis(const Context& ctx, OperatorKind kind, const Matrix& a, bool analyze);
Rendered solve(const Context& ctx, OperatorKind kind, const Matrix& a, const Matrix& q);
Rendered group_inverse(const Context& ctx, const Matrix& a);
Rendered feasibility(const Context& ctx, const BasisFile& basis);
Rendered reproduce_entry(const Context& ctx, const std::string& id);
Rendered reproduce_all(const Context& ctx);
Rendered reproduce_table(const Context& ctx);
Rendered failure(const Context& ctx, const std::string& command, Status status, const std::string& message);

/// 12 significant digits, negative zero printed as 0.
std::string format_number(double v);
/// Value rounded to what format_number prints.
double rounded(double v);

}  // namespace rmono::report
