#pragma once

// Wach modules over R = (Z/p^Np)[[X]]/(X^Mx), given by the matrices of φ, τ
// and γ₀ in a fixed R-basis (column k holds the image of basis vector k).

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wachlab/fpn/module.hpp"
#include "wachlab/padic/series_matrix.hpp"

namespace wachlab::wach {

using padic::ResidualPrecision;
using padic::RingParams;
using padic::SeriesMatrix;
using padic::SeriesVector;
using padic::TruncSeries;

/// Default character value of γ₀: 1 + p.
mpz_class default_chi0(const RingParams& params);

class WachModule {
 public:
  /// Throws ParameterError on shape or parameter mismatch and
  /// InvalidCharacterValue when p divides chi0. chi0 is kept mod p^guard.
  WachModule(SeriesMatrix phi, SeriesMatrix tau, SeriesMatrix gamma, mpz_class chi0);

  const RingParams& params() const noexcept { return phi_.params(); }
  int rank() const noexcept { return phi_.rows(); }
  const SeriesMatrix& phi() const noexcept { return phi_; }
  const SeriesMatrix& tau() const noexcept { return tau_; }
  const SeriesMatrix& gamma() const noexcept { return gamma_; }
  const mpz_class& chi0() const noexcept { return chi0_; }

  friend bool operator==(const WachModule&, const WachModule&) = default;

 private:
  SeriesMatrix phi_;
  SeriesMatrix tau_;
  SeriesMatrix gamma_;
  mpz_class chi0_;
};

/// NotChecked marks conditions outside what is decided here; it never
/// affects an aggregate verdict.
enum class Verdict { Pass, Fail, Undecided, NotChecked };
const char* to_string(Verdict v);

struct RelationCheck {
  std::string name;
  bool holds = false;
  /// Valuations of the residual: (Np, Mx) when it vanishes.
  ResidualPrecision residual{0, 0};
};

/// det P = unit * q^s.
struct Positivity {
  Verdict verdict = Verdict::Undecided;
  std::optional<int> s;
  std::string detail;
};

struct WachReport {
  std::vector<RelationCheck> relations;  // phi-tau, gamma-phi, gamma-tau
  bool tau_trivial_mod_x = false;
  bool gamma_trivial_mod_x = false;
  Positivity positivity;
  std::optional<int> unipotence_index;      // of T - Id in R
  std::optional<int> monodromy_nilpotence;  // of N mod X

  bool relations_hold() const;
};

WachReport check_relations(const WachModule& w);

/// det P = unit * q^s, undecided when s >= Np.
Positivity positivity(const WachModule& w);

struct Monodromy {
  /// (1/X) log T. Valid mod (p^p_digits, X^x_order); residues are stored in
  /// the ring of precision p_digits.
  SeriesMatrix n;
  int p_digits;
  int x_order;
  /// Nilpotence index of N mod X (as a matrix over Z/p^p_digits).
  std::optional<int> nilpotence_mod_x;
};

/// Throws NotUnipotentModX when T is not Id mod X and PrecisionError when a
/// term of the logarithm is not divisible by the p-part of its index.
Monodromy monodromy(const WachModule& w);

struct ExpCheck {
  bool holds;
  int p_digits;
  int x_order;
  std::string detail;
};

/// T = exp(X N) at the attained precision.
ExpCheck exp_check(const WachModule& w);

struct QFiltration {
  /// Rational basis (columns) of the image of Fil^i in N / X N.
  rational::QMatrix basis;
  /// Directions are resolved mod p^p_digits: p^p_digits * N / X N lies in
  /// the image for trivial reasons once the truncation hides q^i.
  int p_digits;
};

QFiltration q_filtration(const WachModule& w, int i);

/// N / X N as a filtered (φ, N)-module. Entries are symmetric lifts of
/// residues mod the attained p-precision.
fpn::FilPhiNModule reduce_mod_X(const WachModule& w);

/// Basis f_k = X^{k+j} ⊗ e^k of the Wach module of V_i(-j).
WachModule build_standard_wach(int i, int j, const RingParams& params);

/// Ambient for the envelope construction: basis g_k = X^j ⊗ e^k, on which
/// τ acts by binomial coefficients without any power of X.
WachModule build_log_ambient(int i, int j, const RingParams& params);

WachModule direct_sum_wach(const WachModule& a, const WachModule& b);

struct VerifyItem {
  std::string name;  // stable identifier
  Verdict verdict;
  std::string detail;
};

struct VerifyResult {
  std::vector<VerifyItem> items;
  Verdict overall;
};

/// Relations, positivity with s = t_N(D), monodromy, then
/// reduce_mod_X(W) ≅ D. The lattice comparison X^r D⁺ ⊆ N and uniqueness
/// are not decided here.
VerifyResult verify_wach(const WachModule& w, const fpn::FilPhiNModule& d);

/// log T with no division by X; throws NotUnipotent when T - Id is not
/// nilpotent. Second member: attained p-precision.
std::pair<SeriesMatrix, int> log_tau(const SeriesMatrix& t);

struct Envelope {
  std::vector<SeriesVector> generators;  // minimal over R
  int p_digits;                          // precision of the computation
  bool independent = false;              // free up to truncation
  bool tau_trivial = false;              // (T - Id) out ⊆ X out
  std::optional<bool> gamma_stable;      // G out ⊆ out
  std::optional<bool> gamma_trivial_mod_x;
  /// Smallest r with X^r (log τ)^{-n}(M) ⊆ out.
  std::optional<int> r;
};

/// Sum over i = 0..n of X^i (log τ)^{-i}(M). `gamma`, when given, is the
/// matrix of γ₀ on the ambient and enables the γ checks.
Envelope naive_envelope(const SeriesMatrix& tau, const std::vector<SeriesVector>& m, int n,
                        const std::optional<SeriesMatrix>& gamma = std::nullopt,
                        const std::optional<mpz_class>& chi0 = std::nullopt);

}  // namespace wachlab::wach
