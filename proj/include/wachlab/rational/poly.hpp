#pragma once

// Univariate polynomials over Q (coefficient of x^k at index k) and exact
// rational root extraction.

#include <vector>

#include "wachlab/rational/qmatrix.hpp"

namespace wachlab::rational {

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const noexcept { return c_; }
  const mpq_class& lead() const { return c_.back(); }
  bool is_zero() const noexcept { return c_.empty(); }

  mpq_class operator()(const mpq_class& x) const;
  QPoly derivative() const;
  QPoly monic() const;

  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<mpq_class> c_;
};

struct DivMod {
  QPoly quotient;
  QPoly remainder;
};
DivMod divmod(const QPoly& a, const QPoly& b);
/// Monic gcd.
QPoly gcd(QPoly a, QPoly b);

/// det(x I - a), by Faddeev-LeVerrier.
QPoly charpoly(const QMatrix& a);

struct RationalRoot {
  mpq_class value;
  int multiplicity;
};

/// All roots in Q with multiplicities, ascending. `splits` is set to whether
/// their multiplicities add up to the degree.
std::vector<RationalRoot> rational_roots(const QPoly& f, bool* splits = nullptr);

/// Simplest fraction (smallest denominator) strictly inside (lo, hi).
mpq_class simplest_between(const mpq_class& lo, const mpq_class& hi);

}  // namespace wachlab::rational
