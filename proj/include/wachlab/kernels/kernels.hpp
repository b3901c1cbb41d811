#pragma once

// Hot loops of the truncated-series layer.
//
// Layout: a series is `order` consecutive residues (coefficient of X^k at
// offset k); a matrix of series is row-major, one series per entry. All
// residues are reduced into [0, mod) and mod < 2^31, so a product of two
// residues fits in 62 bits and a Cauchy sum fits in 128.
//
// `serial` is the reference implementation. `omp` computes identical results
// with OpenMP work-sharing over independent outputs; it is what the library
// calls. The two are cross-checked in tests/test_kernels.cpp and timed
// against each other in bench/.

#include <cstddef>
#include <cstdint>

namespace wachlab::kernels {

using Residue = std::uint64_t;

inline Residue mulmod(Residue a, Residue b, Residue mod) { return (a * b) % mod; }
inline Residue addmod(Residue a, Residue b, Residue mod) {
  Residue s = a + b;
  return s >= mod ? s - mod : s;
}
inline Residue submod(Residue a, Residue b, Residue mod) { return a >= b ? a - b : a + mod - b; }

namespace serial {

/// out = a * b mod (mod, X^order). `out` must not alias `a` or `b`.
void series_mul(const Residue* a, const Residue* b, Residue* out, int order, Residue mod);

/// C (n x m) = A (n x k) * B (k x m), entries are series.
void matrix_mul(const Residue* a, const Residue* b, Residue* c, int n, int k, int m, int order,
                Residue mod);

/// out = a(inner), where inner has zero constant term.
void compose(const Residue* a, const Residue* inner, Residue* out, int order, Residue mod);

/// For every row r != pivot_row with factors[r] != 0:
///   row_r[c] -= factors[r] * row_pivot[c]  for c in [col_begin, cols).
void eliminate(Residue* rows, int nrows, int cols, int pivot_row, const Residue* factors,
               int col_begin, Residue mod);

}  // namespace serial

namespace omp {

void series_mul(const Residue* a, const Residue* b, Residue* out, int order, Residue mod);
void matrix_mul(const Residue* a, const Residue* b, Residue* c, int n, int k, int m, int order,
                Residue mod);
void compose(const Residue* a, const Residue* inner, Residue* out, int order, Residue mod);
void eliminate(Residue* rows, int nrows, int cols, int pivot_row, const Residue* factors,
               int col_begin, Residue mod);

/// Number of threads the omp kernels may use (1 when built without OpenMP).
int max_threads();

}  // namespace omp

}  // namespace wachlab::kernels
