// Dense real matrices, vectors, tolerances and the error hierarchy shared by
// every module of the library.
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmono {

using Vector = std::vector<double>;

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Capability,
  SingularOperator,
  NonConvergence,
  Inconsistent,
  Mismatch,
  NotFound,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Dense row-major real matrix. Entries are always finite once constructed
/// through the checked factories; arithmetic helpers do not re-check.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix from_columns(std::span<const Vector> columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> v);
  Vector row(std::size_t i) const;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  /// First `k` columns.
  Matrix leading_columns(std::size_t k) const { return block(0, 0, rows_, k); }

  bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double trace(const Matrix& a);
Matrix matrix_power(const Matrix& a, unsigned k);
Matrix block_diagonal(std::span<const Matrix> blocks);
/// Maximum absolute deviation from symmetry.
double asymmetry(const Matrix& a);
void require_square(const Matrix& a, const char* what);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double sum(std::span<const double> a);
double min_entry(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
Vector scaled(std::span<const double> x, double s);
Vector subtract(std::span<const double> a, std::span<const double> b);

/// Numerical thresholds used throughout. All are relative unless a module
/// documents otherwise.
struct Tolerances {
  double rank_tol = 1e-9;
  double psd_tol = 1e-9;
  double feas_tol = 1e-7;
  double eq_tol = 1e-9;
  int max_iter = 5000;

  void validate() const;
};

}  // namespace rmono
