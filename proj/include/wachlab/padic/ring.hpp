#pragma once

// Exact arithmetic in R = (Z/p^Np)[[X]] / (X^Mx).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wachlab/kernels/kernels.hpp"

namespace wachlab::padic {

using Residue = kernels::Residue;

class RingParams {
 public:
  /// Throws ParameterError unless p is an odd prime, prec >= 1, order >= 2
  /// and p^prec < 2^31.
  RingParams(int p, int prec, int order);

  int p() const noexcept { return p_; }
  /// p-adic precision Np: coefficients live mod p^Np.
  int prec() const noexcept { return prec_; }
  /// X-adic truncation order Mx.
  int order() const noexcept { return order_; }
  Residue modulus() const noexcept { return modulus_; }

  /// p-adic digits a character value must carry so that substitution is
  /// well defined mod (p^Np, X^Mx): Np + floor(Mx / (p - 1)).
  int guard_precision() const noexcept { return prec_ + order_ / (p_ - 1); }

  /// Same p and Mx, p-adic precision lowered to `prec`.
  RingParams with_prec(int prec) const { return RingParams(p_, prec, order_); }

  friend bool operator==(const RingParams&, const RingParams&) = default;

 private:
  int p_;
  int prec_;
  int order_;
  Residue modulus_;
};

/// v_p of a residue mod p^prec; returns prec for zero.
int valuation(Residue r, const RingParams& params);

/// Inverse of a unit residue mod p^prec.
Residue inverse_unit(Residue r, const RingParams& params);

/// Reduce an arbitrary integer into [0, p^prec).
Residue reduce(const mpz_class& value, const RingParams& params);
Residue reduce(long long value, const RingParams& params);

/// Symmetric lift into (-m/2, m/2] for modulus m = p^digits.
long long symmetric_lift(Residue r, int p, int digits);

class TruncSeries {
 public:
  explicit TruncSeries(const RingParams& params);
  TruncSeries(const RingParams& params, std::vector<Residue> coeffs);

  static TruncSeries zero(const RingParams& params) { return TruncSeries(params); }
  static TruncSeries one(const RingParams& params) { return constant(params, 1); }
  static TruncSeries constant(const RingParams& params, long long c);
  static TruncSeries constant(const RingParams& params, const mpz_class& c);
  /// X^k (zero when k >= Mx).
  static TruncSeries x_power(const RingParams& params, int k);
  /// Coefficients given as arbitrary integers, reduced mod p^Np; missing
  /// trailing coefficients are zero, extra ones are truncated away.
  static TruncSeries from_integers(const RingParams& params, const std::vector<long long>& coeffs);

  const RingParams& params() const noexcept { return params_; }
  Residue operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  std::span<const Residue> coeffs() const noexcept { return coeffs_; }
  const Residue* data() const noexcept { return coeffs_.data(); }
  Residue* data() noexcept { return coeffs_.data(); }

  bool is_zero() const;
  /// Constant term not divisible by p.
  bool is_unit() const;

  TruncSeries& operator+=(const TruncSeries& other);
  TruncSeries& operator-=(const TruncSeries& other);
  TruncSeries& operator*=(const TruncSeries& other);
  TruncSeries operator-() const;
  TruncSeries scaled(Residue c) const;
  /// Multiply by X^k.
  TruncSeries shifted_up(int k) const;

  /// Divide by p^k; every coefficient must be divisible by p^k. The result
  /// is the canonical representative mod p^(Np - k).
  TruncSeries divided_by_p_power(int k) const;
  /// Reduce every coefficient mod p^digits (canonical representative).
  TruncSeries reduced_to(int digits) const;

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  /// `[c0, c1, ..., c_{Mx-1}]`
  std::string to_string() const;

 private:
  RingParams params_;
  std::vector<Residue> coeffs_;
};

/// Ring operations with explicit parameter checks (ParameterError on
/// mismatch). The operators above route through these.
TruncSeries add(const TruncSeries& a, const TruncSeries& b);
TruncSeries sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries mul(const TruncSeries& a, const TruncSeries& b);

/// Throws NotAUnit when the constant term is divisible by p.
TruncSeries invert(const TruncSeries& a);

/// a((1+X)^p - 1).
TruncSeries subst_phi(const TruncSeries& a);

/// a((1+X)^exponent - 1), binomials computed exactly then reduced.
/// Throws InvalidCharacterValue when p divides exponent.
TruncSeries subst_gamma(const TruncSeries& a, const mpz_class& exponent);

/// phi(X) = (1+X)^p - 1.
TruncSeries phi_of_x(const RingParams& params);
/// q = phi(X) / X, constant term p.
TruncSeries q_series(const RingParams& params);
/// (1+X)^exponent - 1.
TruncSeries gamma_of_x(const RingParams& params, const mpz_class& exponent);

/// Smallest k with a nonzero coefficient; nullopt when a = 0.
std::optional<int> x_valuation(const TruncSeries& a);

/// min over coefficients of v_p; Np when a = 0.
int p_valuation(const TruncSeries& a);

/// Two series agree mod (p^p_digits, X^x_order).
bool equal_mod(const TruncSeries& a, const TruncSeries& b, int p_digits, int x_order);

}  // namespace wachlab::padic
