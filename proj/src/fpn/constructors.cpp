#include <algorithm>
#include <functional>
#include <set>

#include "wachlab/errors.hpp"
#include "wachlab/fpn/module.hpp"
#include "wachlab/rational/subspace.hpp"

namespace wachlab::fpn {

using namespace rational;

namespace {

mpq_class p_power(int p, int e) {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? mpq_class(1) / mpq_class(m) : mpq_class(m);
}

void require_same_p(const FilPhiNModule& a, const FilPhiNModule& b) {
  if (a.p() != b.p()) throw ParameterError("modules over different primes");
}

// Builds a flag from Fil^c evaluated on a candidate set containing every jump.
Flag flag_from(int dim, const std::set<int>& candidates, const std::function<QMatrix(int)>& fil_at) {
  std::vector<Flag::Step> steps;
  for (int c : candidates) steps.push_back({c, fil_at(c)});
  return Flag(dim, std::move(steps));
}

}  // namespace

FilPhiNModule unit_object(int p) { return standard_block(p, 1, 0); }

FilPhiNModule standard_block(int p, int i, int j) {
  if (i < 1) throw ParameterError("standard block rank must be >= 1");
  QMatrix phi(i, i);
  QMatrix n(i, i);
  for (int k = 0; k < i; ++k) {
    phi(k, k) = p_power(p, k - j);
    if (k > 0) n(k - 1, k) = k;
  }
  std::vector<Flag::Step> steps;
  for (int k = 0; k < i; ++k) {
    QMatrix span(i, i - k);
    for (int c = k; c < i; ++c) span(c, c - k) = 1;
    steps.push_back({k - j, span});
  }
  return FilPhiNModule(p, phi, n, Flag(i, std::move(steps)));
}

FilPhiNModule direct_sum(const FilPhiNModule& a, const FilPhiNModule& b) {
  require_same_p(a, b);
  std::set<int> candidates;
  for (int l : a.fil().levels()) candidates.insert(l);
  for (int l : b.fil().levels()) candidates.insert(l);
  const Flag fil = flag_from(a.dim() + b.dim(), candidates,
                             [&](int c) { return block_diagonal(a.fil().at(c), b.fil().at(c)); });
  return FilPhiNModule(a.p(), block_diagonal(a.phi(), b.phi()), block_diagonal(a.n(), b.n()), fil);
}

FilPhiNModule tensor(const FilPhiNModule& a, const FilPhiNModule& b) {
  require_same_p(a, b);
  const int dim = a.dim() * b.dim();
  const QMatrix n = kron(a.n(), QMatrix::identity(b.dim())) + kron(QMatrix::identity(a.dim()), b.n());
  std::set<int> candidates;
  for (const auto& sa : a.fil().steps())
    for (const auto& sb : b.fil().steps()) candidates.insert(sa.level + sb.level);
  const Flag fil = flag_from(dim, candidates, [&](int c) {
    QMatrix gens(dim, 0);
    for (const auto& sa : a.fil().steps())
      for (const auto& sb : b.fil().steps())
        if (sa.level + sb.level >= c) gens = hstack(gens, kron(sa.span, sb.span));
    return canonical_span(gens);
  });
  return FilPhiNModule(a.p(), kron(a.phi(), b.phi()), n, fil);
}

FilPhiNModule sym_power(const FilPhiNModule& d, int n) {
  if (n < 1) throw ParameterError("symmetric power index must be >= 1");
  FilPhiNModule t = d;
  for (int k = 1; k < n; ++k) t = tensor(t, d);

  // Symmetrized monomials: one column per multiset k_1 <= ... <= k_n.
  const int dim = d.dim();
  const int big = t.dim();
  std::vector<std::vector<mpq_class>> cols;
  std::vector<int> multiset(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<mpq_class> v(static_cast<std::size_t>(big));
    for (int idx = 0; idx < big; ++idx) {
      std::vector<int> digits(static_cast<std::size_t>(n));
      int x = idx;
      for (int pos = n - 1; pos >= 0; --pos) {
        digits[static_cast<std::size_t>(pos)] = x % dim;
        x /= dim;
      }
      std::sort(digits.begin(), digits.end());
      if (digits == multiset) v[static_cast<std::size_t>(idx)] = 1;
    }
    cols.push_back(std::move(v));
    int pos = n - 1;
    while (pos >= 0 && multiset[static_cast<std::size_t>(pos)] == dim - 1) --pos;
    if (pos < 0) break;
    const int value = multiset[static_cast<std::size_t>(pos)] + 1;
    for (int q = pos; q < n; ++q) multiset[static_cast<std::size_t>(q)] = value;
  }
  const QMatrix s = QMatrix::from_columns(big, cols);
  std::vector<Flag::Step> steps;
  for (const auto& st : t.fil().steps()) steps.push_back({st.level, preimage(s, st.span)});
  return FilPhiNModule(d.p(), restrict_to(t.phi(), s), restrict_to(t.n(), s), Flag(s.cols(), std::move(steps)));
}

FilPhiNModule twist(const FilPhiNModule& d, int j) {
  std::vector<Flag::Step> steps;
  for (const auto& s : d.fil().steps()) steps.push_back({s.level - j, s.span});
  return FilPhiNModule(d.p(), d.phi() * p_power(d.p(), -j), d.n(), Flag(d.dim(), std::move(steps)));
}

FilPhiNModule crystalline_companion(const FilPhiNModule& d) {
  return FilPhiNModule(d.p(), d.phi(), QMatrix(d.dim(), d.dim()), hat_filtration(d));
}

FilPhiNModule change_basis(const FilPhiNModule& d, const QMatrix& u) {
  const auto inv = inverse(u);
  if (!inv) throw ParameterError("change_basis: matrix is singular");
  std::vector<Flag::Step> steps;
  for (const auto& s : d.fil().steps()) steps.push_back({s.level, *inv * s.span});
  return FilPhiNModule(d.p(), *inv * d.phi() * u, *inv * d.n() * u, Flag(d.dim(), std::move(steps)));
}

FilPhiNModule direct_sum_of_blocks(int p, const std::vector<BlockSpec>& blocks) {
  std::optional<FilPhiNModule> acc;
  for (const auto& b : blocks)
    for (int m = 0; m < b.mult; ++m) {
      FilPhiNModule blk = standard_block(p, b.i, b.j);
      acc = acc ? direct_sum(*acc, blk) : blk;
    }
  if (!acc) throw ParameterError("empty block list");
  return *acc;
}

}  // namespace wachlab::fpn
