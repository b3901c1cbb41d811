#pragma once

// Text formats `filmod v1` and `wach v1`.
//
//   filmod v1 p=<p> dim=<d>
//   phi:            d lines of d rationals num/den
//   N:              d lines of d rationals
//   fil:            one line per step: level=<i> span=<v1;v2;...>
//
//   wach v1 p=<p> Np=<n> Mx=<m> rank=<d> chi0=<int>
//   P:              d*d lines, one series [c0, c1, ...] per entry, row-major
//   T:              same
//   G:              same
//
// Blank lines and lines starting with '#' are ignored. Syntax errors throw
// ParseError with a 1-based line and column; well-formed input that breaks
// a module invariant throws the constructor's InvariantViolation.

#include <string>
#include <string_view>
#include <vector>

#include "wachlab/fpn/module.hpp"
#include "wachlab/wach/wach.hpp"

namespace wachlab::io {

fpn::FilPhiNModule parse_filmod(std::string_view text);
std::string serialize(const fpn::FilPhiNModule& d);

wach::WachModule parse_wach(std::string_view text);
std::string serialize(const wach::WachModule& w);

/// "num/den" or "num".
std::string format_rational(const mpq_class& q);

/// Vectors "a,b,c;d,e,f" of length dim as matrix columns; "" is no vector.
rational::QMatrix parse_vectors(std::string_view text, int dim);
std::string format_vectors(const rational::QMatrix& cols);

}  // namespace wachlab::io
