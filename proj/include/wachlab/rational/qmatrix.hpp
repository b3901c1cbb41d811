#pragma once

// Dense matrices over Q with exact GMP rationals.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wachlab::rational {

class QMatrix {
 public:
  QMatrix() : QMatrix(0, 0) {}
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static QMatrix identity(int n);
  static QMatrix diagonal(const std::vector<mpq_class>& d);
  static QMatrix from_rows(const std::vector<std::vector<mpq_class>>& rows);
  static QMatrix from_columns(int rows, const std::vector<std::vector<mpq_class>>& cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  mpq_class& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const mpq_class& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<mpq_class> column(int c) const;
  QMatrix transpose() const;
  bool is_zero() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const mpq_class& s);
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const mpq_class& s) { return a *= s; }
  friend QMatrix operator*(const mpq_class& s, QMatrix a) { return a *= s; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b);

  std::vector<mpq_class> apply(const std::vector<mpq_class>& v) const;

  /// Columns [begin, end).
  QMatrix columns(int begin, int end) const;
  /// Rows [begin, end).
  QMatrix row_range(int begin, int end) const;

  std::string to_string() const;

 private:
  int rows_;
  int cols_;
  std::vector<mpq_class> a_;
};

QMatrix hstack(const QMatrix& a, const QMatrix& b);
QMatrix block_diagonal(const QMatrix& a, const QMatrix& b);
QMatrix kron(const QMatrix& a, const QMatrix& b);
QMatrix power(const QMatrix& a, int k);

/// Row-reduced echelon form; pivot columns appended to `pivots` when given.
QMatrix rref(QMatrix a, std::vector<int>* pivots = nullptr);
int rank(const QMatrix& a);
/// Basis of the right kernel, as columns.
QMatrix nullspace(const QMatrix& a);
mpq_class determinant(const QMatrix& a);
std::optional<QMatrix> inverse(const QMatrix& a);
/// Some x with a x = b, or nullopt.
std::optional<std::vector<mpq_class>> solve(const QMatrix& a, const std::vector<mpq_class>& b);

/// v_p of a nonzero rational.
int p_valuation(const mpq_class& x, int p);

/// Smallest k >= 1 with a^k = 0, or nullopt if a is not nilpotent.
std::optional<int> nilpotence_index(const QMatrix& a);

}  // namespace wachlab::rational
