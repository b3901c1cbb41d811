#pragma once

// Decreasing, exhaustive, separated filtrations of Q^dim, stored by jumps.
//
// Steps (l_0, S_0), ..., (l_r, S_r) with l_0 < ... < l_r and
// S_0 = Q^dim ⊋ S_1 ⊋ ... ⊋ S_r ≠ 0 mean
//   Fil^m = Q^dim  for m <= l_0,
//   Fil^m = S_a    for l_{a-1} < m <= l_a,
//   Fil^m = 0      for m > l_r,
// so the l_a are exactly the levels m with Fil^m ≠ Fil^{m+1}. The zero
// space has no steps.

#include <vector>

#include "wachlab/rational/qmatrix.hpp"

namespace wachlab::fpn {

using rational::QMatrix;

class Flag {
 public:
  struct Step {
    int level;
    QMatrix span;  // canonical basis
    friend bool operator==(const Step&, const Step&) = default;
  };

  /// Accepts any list of (level, spanning columns) describing Fil^level.
  /// Steps are sorted, spans canonicalized, zero spans dropped, equal
  /// neighbours merged (the higher level wins) and a full step is inserted
  /// below the first one when needed. Throws InvariantViolation when a
  /// basis is rank deficient or the spans do not decrease.
  Flag(int dim, std::vector<Step> steps);

  /// Fil^m = Q^dim for m <= level, 0 above.
  static Flag concentrated(int dim, int level);

  int dim() const noexcept { return dim_; }
  const std::vector<Step>& steps() const noexcept { return steps_; }
  bool empty() const noexcept { return steps_.empty(); }
  std::vector<int> levels() const;

  /// Fil^m.
  QMatrix at(int m) const;
  /// Graded dimension dim Fil^m / Fil^{m+1}.
  int graded_dim(int m) const;
  /// Σ_m m · dim gr^m.
  long t_h() const;

  friend bool operator==(const Flag&, const Flag&) = default;

 private:
  int dim_;
  std::vector<Step> steps_;
};

/// Induced flag Fil ∩ sub on the subspace with basis columns `sub`,
/// expressed in the coordinates of that basis.
Flag induced(const Flag& fil, const QMatrix& sub);

/// Σ_m m · dim((Fil^m ∩ sub) / (Fil^{m+1} ∩ sub)).
long t_h_on(const Flag& fil, const QMatrix& sub);

}  // namespace wachlab::fpn
