#pragma once

// Subspaces of Q^n, stored as a canonical basis: the columns of the
// transposed RREF of any spanning set. Equal spans give equal matrices.

#include "wachlab/rational/qmatrix.hpp"

namespace wachlab::rational {

/// Canonical basis (columns) of the span of the columns of `gens`.
QMatrix canonical_span(const QMatrix& gens);
QMatrix zero_space(int n);
QMatrix full_space(int n);

int dimension(const QMatrix& span);
bool contains(const QMatrix& span, const std::vector<mpq_class>& v);
/// a ⊆ b.
bool is_subspace(const QMatrix& a, const QMatrix& b);

QMatrix sum(const QMatrix& a, const QMatrix& b);
QMatrix intersection(const QMatrix& a, const QMatrix& b);
/// {v : m v in s}.
QMatrix preimage(const QMatrix& m, const QMatrix& s);
/// m(s), canonical.
QMatrix image(const QMatrix& m, const QMatrix& s);
/// m(s) ⊆ s.
bool is_stable(const QMatrix& m, const QMatrix& s);

/// Restriction of m to an m-stable subspace with basis columns `s`: the
/// matrix A with m * s = s * A.
QMatrix restrict_to(const QMatrix& m, const QMatrix& s);

}  // namespace wachlab::rational
