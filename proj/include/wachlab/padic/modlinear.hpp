#pragma once

// Linear algebra over the finite local ring Z/p^N.

#include <optional>
#include <vector>

#include "wachlab/padic/ring.hpp"

namespace wachlab::padic {

class ModMatrix {
 public:
  ModMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}
  static ModMatrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  Residue& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  Residue operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  Residue* row(int r) { return a_.data() + static_cast<std::size_t>(r) * cols_; }
  std::vector<Residue> column(int c) const;

  std::vector<Residue> apply(const std::vector<Residue>& x, Residue mod) const;
  ModMatrix multiply(const ModMatrix& o, Residue mod) const;

 private:
  int rows_;
  int cols_;
  std::vector<Residue> a_;
};

/// L * A * R = diag(p^{v_0}, ..., p^{v_{rank-1}}, 0, ...) with L, R invertible.
struct SmithForm {
  ModMatrix left;
  ModMatrix right;
  std::vector<int> valuations;  // length = rank, each < N
};

/// Full pivoting on minimum p-valuation; ties go to the earliest column, then
/// the lowest row.
SmithForm smith_form(ModMatrix a, const RingParams& params);

/// Some x with A x = b, or nullopt.
std::optional<std::vector<Residue>> solve(const ModMatrix& a, const SmithForm& snf,
                                          const std::vector<Residue>& b, const RingParams& params);

/// Best-effort x: exact solution when one exists, otherwise the quotient
/// parts of each pivot equation.
std::vector<Residue> best_effort_solution(const SmithForm& snf, const std::vector<Residue>& b,
                                          const RingParams& params, int unknowns);

/// Generators of {x : A x = 0} as a Z/p^N-module.
std::vector<std::vector<Residue>> kernel(const SmithForm& snf, int unknowns, const RingParams& params);

/// Generators of the column space that form a "basis" in Smith sense:
/// columns of L^{-1} scaled by p^{v_i}. Returns (L^{-1} columns, valuations).
struct ColumnSpace {
  std::vector<std::vector<Residue>> directions;  // unimodular directions
  std::vector<int> valuations;                   // column space = span p^{v_i} directions
};
ColumnSpace column_space(const ModMatrix& a, const RingParams& params);

/// Inverse of an invertible matrix over Z/p^N.
ModMatrix inverse(const ModMatrix& a, const RingParams& params);

}  // namespace wachlab::padic
