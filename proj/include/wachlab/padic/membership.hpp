#pragma once

// Module membership and submodule calculus in R^n, R = (Z/p^N)[[X]]/(X^M).
//
// An R-linear (or semilinear) map is linearized over Z/p^N: unknown index
// m * cols + j stands for the coefficient of X^m in component j, equation
// index i * Mx + k for the coefficient of X^k in component i.

#include <variant>
#include <vector>

#include "wachlab/padic/modlinear.hpp"
#include "wachlab/padic/series_matrix.hpp"

namespace wachlab::padic {

struct NotInSpan {
  int row;                // component of the target
  int degree;             // X-degree of the first nonzero residual coefficient
  TruncSeries residual;   // residual in that component after the best attempt
};

using MembershipResult = std::variant<SeriesVector, NotInSpan>;

/// Finds c with cols * c = target exactly in R^rows.
MembershipResult solve_membership(const SeriesMatrix& cols, const SeriesVector& target);

/// Linearization of v -> sum_j v_j * images_j where images_j is the image of
/// the j-th basis vector (R-linear map given by its matrix).
ModMatrix linearize(const SeriesMatrix& m);

/// Linearization of an arbitrary Z/p^N-linear map given by the images of all
/// unknowns X^m e_j (ordered m * cols + j).
ModMatrix linearize_images(const RingParams& params, int rows, const std::vector<SeriesVector>& images);

/// Flatten / unflatten a vector of series using the unknown ordering above.
std::vector<Residue> flatten_unknowns(const SeriesVector& v);
SeriesVector unflatten_unknowns(const RingParams& params, int cols, const std::vector<Residue>& x);
/// Equation ordering (component-major).
std::vector<Residue> flatten_equations(const SeriesVector& v);

/// Whether target lies in the R-span of the given columns.
bool in_span(const std::vector<SeriesVector>& gens, const SeriesVector& target, int rows,
             const RingParams& params);

/// Generators (over Z/p^N, hence over R) of {v : A v in span_R(B)}.
std::vector<SeriesVector> preimage(const SeriesMatrix& a, const std::vector<SeriesVector>& b);

/// Irredundant subset generating the same R-module; over the local ring R
/// this is a minimal generating set.
std::vector<SeriesVector> minimal_generators(const std::vector<SeriesVector>& gens, int rows,
                                             const RingParams& params);

/// True when every R-relation among gens is a sum of relations c_j g_j = 0,
/// i.e. the generators are independent up to truncation.
bool independent_up_to_truncation(const std::vector<SeriesVector>& gens, int rows, const RingParams& params);

}  // namespace wachlab::padic
