#include <algorithm>
#include <map>
#include <random>

#include "wachlab/errors.hpp"
#include "wachlab/fpn/module.hpp"
#include "wachlab/rational/poly.hpp"
#include "wachlab/rational/subspace.hpp"

namespace wachlab::fpn {

using namespace rational;

namespace {

std::vector<RationalRoot> split_eigenvalues(const FilPhiNModule& d) {
  bool splits = false;
  auto roots = rational_roots(charpoly(d.phi()), &splits);
  if (!splits) throw UnsupportedEigenstructure("characteristic polynomial of phi does not split over Q");
  return roots;
}

std::vector<std::pair<int, int>> graded_profile(const Flag& f) {
  std::vector<std::pair<int, int>> out;
  for (const auto& s : f.steps()) out.emplace_back(s.level, s.span.cols());
  return out;
}

// Rows r with r · x = 0 exactly for x in span.
QMatrix annihilator(const QMatrix& span) {
  if (span.cols() == 0) return QMatrix::identity(span.rows());
  return nullspace(span.transpose()).transpose();
}

}  // namespace

std::optional<QMatrix> isomorphic(const FilPhiNModule& a, const FilPhiNModule& b) {
  split_eigenvalues(a);
  split_eigenvalues(b);
  if (a.p() != b.p() || a.dim() != b.dim()) return std::nullopt;
  if (t_n(a) != t_n(b) || graded_profile(a.fil()) != graded_profile(b.fil())) return std::nullopt;

  const int d = a.dim();
  const int unknowns = d * d;  // U(i, k) at i * d + k
  std::vector<std::vector<mpq_class>> rows;
  auto commute = [&](const QMatrix& m1, const QMatrix& m2) {
    // (U m1 - m2 U)(i, j)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        std::vector<mpq_class> row(static_cast<std::size_t>(unknowns));
        for (int k = 0; k < d; ++k) {
          row[static_cast<std::size_t>(i * d + k)] += m1(k, j);
          row[static_cast<std::size_t>(k * d + j)] -= m2(i, k);
        }
        rows.push_back(std::move(row));
      }
  };
  commute(a.phi(), b.phi());
  commute(a.n(), b.n());
  for (const auto& step : a.fil().steps()) {
    const QMatrix ann = annihilator(b.fil().at(step.level));
    for (int c = 0; c < step.span.cols(); ++c)
      for (int r = 0; r < ann.rows(); ++r) {
        std::vector<mpq_class> row(static_cast<std::size_t>(unknowns));
        for (int i = 0; i < d; ++i) {
          if (sgn(ann(r, i)) == 0) continue;
          for (int k = 0; k < d; ++k) row[static_cast<std::size_t>(i * d + k)] += ann(r, i) * step.span(k, c);
        }
        rows.push_back(std::move(row));
      }
  }
  const QMatrix solutions = nullspace(QMatrix::from_rows(rows));
  if (solutions.cols() == 0) return std::nullopt;

  auto as_matrix = [&](const std::vector<mpq_class>& v) {
    QMatrix u(d, d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) u(i, k) = v[static_cast<std::size_t>(i * d + k)];
    return u;
  };
  for (int c = 0; c < solutions.cols(); ++c) {
    QMatrix u = as_matrix(solutions.column(c));
    if (sgn(determinant(u)) != 0) return u;
  }
  // det is a nonzero polynomial on the solution space when an isomorphism
  // exists, so random points miss its zero set with high probability.
  std::mt19937_64 rng(0x15011);
  std::uniform_int_distribution<int> coeff(-50, 50);
  for (int trial = 0; trial < 64; ++trial) {
    std::vector<mpq_class> v(static_cast<std::size_t>(unknowns));
    for (int c = 0; c < solutions.cols(); ++c) {
      const mpq_class w = coeff(rng);
      for (int k = 0; k < unknowns; ++k) v[static_cast<std::size_t>(k)] += w * solutions(k, c);
    }
    QMatrix u = as_matrix(v);
    if (sgn(determinant(u)) != 0) return u;
  }
  return std::nullopt;
}

Decomposition decompose_standard(const FilPhiNModule& d) {
  const int dim = d.dim();
  std::map<int, QMatrix> graded;  // m -> ker(φ - p^m)
  int geometric = 0;
  for (const auto& r : split_eigenvalues(d)) {
    const int m = p_valuation(r.value, d.p());
    mpq_class pm = 1;
    for (int k = 0; k < std::abs(m); ++k) pm *= d.p();
    if (m < 0) pm = 1 / pm;
    if (r.value != pm)
      return DecompositionFailure{"phi eigenvalue " + r.value.get_str() + " is not a power of p"};
    graded[m] = canonical_span(nullspace(d.phi() - QMatrix::identity(dim) * r.value));
    geometric += graded[m].cols();
  }
  if (geometric != dim) return DecompositionFailure{"phi is not diagonalizable"};

  auto rank_on = [&](int m, int l) {
    const auto it = graded.find(m);
    if (it == graded.end()) return 0;
    return rank(power(d.n(), l) * it->second);
  };
  // Strings with top in degree m reaching at least l steps: c(m, l).
  auto reaching = [&](int m, int l) { return rank_on(m, l - 1) - rank_on(m + 1, l); };

  std::vector<BlockSpec> blocks;
  int total = 0;
  for (const auto& [m, space] : graded) {
    for (int l = 1; l <= dim; ++l) {
      const int count = reaching(m, l) - reaching(m, l + 1);
      if (count < 0) return DecompositionFailure{"inconsistent N-string counts"};
      if (count == 0) continue;
      blocks.push_back({l, l - 1 - m, count});
      total += l * count;
    }
  }
  if (total != dim) return DecompositionFailure{"N-strings do not cover the module"};
  std::sort(blocks.begin(), blocks.end());
  if (!isomorphic(d, direct_sum_of_blocks(d.p(), blocks)))
    return DecompositionFailure{"(phi, N) matches the blocks but the filtration does not"};
  return blocks;
}

}  // namespace wachlab::fpn
