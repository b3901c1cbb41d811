#pragma once

#include <string>
#include <vector>

#include "wachlab/padic/ring.hpp"

namespace wachlab::padic {

using SeriesVector = std::vector<TruncSeries>;

/// rows x cols matrix over R, stored flat (entry-major, then coefficient).
class SeriesMatrix {
 public:
  SeriesMatrix(const RingParams& params, int rows, int cols);

  static SeriesMatrix zero(const RingParams& params, int rows, int cols) {
    return SeriesMatrix(params, rows, cols);
  }
  static SeriesMatrix identity(const RingParams& params, int n);
  /// Columns taken from the vectors (all of the same length).
  static SeriesMatrix from_columns(const RingParams& params, int rows, const std::vector<SeriesVector>& cols);
  static SeriesMatrix from_entries(const RingParams& params, int rows, int cols,
                                   const std::vector<TruncSeries>& row_major);

  const RingParams& params() const noexcept { return params_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  TruncSeries at(int r, int c) const;
  void set(int r, int c, const TruncSeries& value);
  SeriesVector column(int c) const;
  void set_column(int c, const SeriesVector& v);

  const Residue* entry_data(int r, int c) const;
  Residue* entry_data(int r, int c);
  const std::vector<Residue>& raw() const noexcept { return data_; }

  bool is_zero() const;
  bool is_identity() const;

  SeriesMatrix& operator+=(const SeriesMatrix& o);
  SeriesMatrix& operator-=(const SeriesMatrix& o);
  friend SeriesMatrix operator+(SeriesMatrix a, const SeriesMatrix& b) { return a += b; }
  friend SeriesMatrix operator-(SeriesMatrix a, const SeriesMatrix& b) { return a -= b; }
  friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
  friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b);

  SeriesMatrix scaled(Residue c) const;
  SeriesMatrix scaled(const TruncSeries& s) const;
  SeriesMatrix shifted_up(int k) const;
  SeriesMatrix divided_by_p_power(int k) const;
  SeriesMatrix reduced_to(int digits) const;
  /// Same residues reinterpreted in a ring of lower p-adic precision.
  SeriesMatrix with_prec(int digits) const;

  /// Constant terms, row-major.
  std::vector<Residue> mod_x() const;

 private:
  RingParams params_;
  int rows_;
  int cols_;
  std::vector<Residue> data_;
};

SeriesVector operator*(const SeriesMatrix& a, const SeriesVector& v);

/// Entrywise substitution X -> (1+X)^p - 1.
SeriesMatrix subst_phi(const SeriesMatrix& m);
/// Entrywise substitution X -> (1+X)^exponent - 1.
SeriesMatrix subst_gamma(const SeriesMatrix& m, const mpz_class& exponent);
SeriesVector subst_phi(const SeriesVector& v);
SeriesVector subst_gamma(const SeriesVector& v, const mpz_class& exponent);

/// Block-diagonal assembly.
SeriesMatrix block_diagonal(const SeriesMatrix& a, const SeriesMatrix& b);

/// Determinant by subset expansion (exact in any commutative ring).
TruncSeries determinant(const SeriesMatrix& m);

/// M^k for k >= 0.
SeriesMatrix power(const SeriesMatrix& m, int k);

/// Smallest k >= 1 with m^k = 0, searching up to `limit`; nullopt if none.
std::optional<int> nilpotence_index(const SeriesMatrix& m, int limit);

/// sum_k C(exponent, k) (m - Id)^k; m - Id must be nilpotent.
SeriesMatrix binomial_power(const SeriesMatrix& m, const mpz_class& exponent);

/// min p-valuation and min X-valuation over entries (Np / Mx when zero).
struct ResidualPrecision {
  int p_digits;
  int x_order;
};
ResidualPrecision residual_precision(const SeriesMatrix& diff);

bool equal_mod(const SeriesMatrix& a, const SeriesMatrix& b, int p_digits, int x_order);

}  // namespace wachlab::padic
