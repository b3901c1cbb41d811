#pragma once

// Filtered (φ, N)-modules over Q_p, modelled over Q.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wachlab/fpn/flag.hpp"

namespace wachlab::fpn {

class FilPhiNModule {
 public:
  /// Throws InvariantViolation naming the failed invariant: "phi invertible",
  /// "N nilpotent", "N phi = p phi N", or a flag invariant; ParameterError
  /// for shape mismatches or a p that is not an odd prime.
  FilPhiNModule(int p, QMatrix phi, QMatrix n, Flag fil);

  int p() const noexcept { return p_; }
  int dim() const noexcept { return phi_.rows(); }
  const QMatrix& phi() const noexcept { return phi_; }
  const QMatrix& n() const noexcept { return n_; }
  const Flag& fil() const noexcept { return fil_; }
  /// Smallest k with N^k = 0.
  int nilpotence_index() const noexcept { return nil_index_; }

  friend bool operator==(const FilPhiNModule&, const FilPhiNModule&) = default;

 private:
  int p_;
  QMatrix phi_;
  QMatrix n_;
  Flag fil_;
  int nil_index_;
};

long t_n(const FilPhiNModule& d);
long t_h(const FilPhiNModule& d);
/// v_p(det φ|sub) for a φ-stable subspace.
long t_n_on(const FilPhiNModule& d, const QMatrix& sub);

/// Fil-hat^i = ∩_{k >= 0} N^{-k}(Fil^{i-k}).
Flag hat_filtration(const FilPhiNModule& d);
/// N(Fil^i) ⊆ Fil^{i-1} for every i.
bool griffiths_check(const FilPhiNModule& d);
bool is_naive(const FilPhiNModule& d);

/// Smallest (φ, N)-stable subspace containing the columns of `gens`.
QMatrix stable_closure(const FilPhiNModule& d, const QMatrix& gens);
bool is_stable_subspace(const FilPhiNModule& d, const QMatrix& sub);

enum class AdmissibilityStatus { Admissible, NotAdmissible, VerifiedOnEnumerated };
const char* to_string(AdmissibilityStatus s);

struct AdmissibilityVerdict {
  AdmissibilityStatus status;
  std::optional<QMatrix> witness;  // canonical basis of the violating subobject
  long enumerated_count = 0;
  bool exhaustive = false;
  std::string reason;
};

/// Throws UnsupportedEigenstructure when the characteristic polynomial of φ
/// does not split over Q.
AdmissibilityVerdict is_admissible(const FilPhiNModule& d, std::uint64_t seed = 0x5eed);

// Constructors.
FilPhiNModule unit_object(int p);
FilPhiNModule standard_block(int p, int i, int j);
FilPhiNModule direct_sum(const FilPhiNModule& a, const FilPhiNModule& b);
FilPhiNModule tensor(const FilPhiNModule& a, const FilPhiNModule& b);
FilPhiNModule sym_power(const FilPhiNModule& d, int n);
FilPhiNModule twist(const FilPhiNModule& d, int j);
FilPhiNModule crystalline_companion(const FilPhiNModule& d);
/// The same module in the basis given by the columns of an invertible u
/// (new coordinates v' = u^{-1} v).
FilPhiNModule change_basis(const FilPhiNModule& d, const QMatrix& u);

/// U with U φ1 = φ2 U, U N1 = N2 U and U(Fil1^i) = Fil2^i, if one exists.
/// Throws UnsupportedEigenstructure unless both characteristic polynomials
/// split over Q.
std::optional<QMatrix> isomorphic(const FilPhiNModule& a, const FilPhiNModule& b);

struct BlockSpec {
  int i;
  int j;
  int mult;
  friend auto operator<=>(const BlockSpec&, const BlockSpec&) = default;
};

struct DecompositionFailure {
  std::string reason;
};

using Decomposition = std::variant<std::vector<BlockSpec>, DecompositionFailure>;

/// Sorted multiset of standard blocks isomorphic to d, or the first mismatch.
Decomposition decompose_standard(const FilPhiNModule& d);

/// ⊕ standard_block(i, j)^mult in the given order.
FilPhiNModule direct_sum_of_blocks(int p, const std::vector<BlockSpec>& blocks);

}  // namespace wachlab::fpn
