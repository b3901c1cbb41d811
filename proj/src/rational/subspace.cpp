#include "wachlab/rational/subspace.hpp"

#include "wachlab/errors.hpp"

namespace wachlab::rational {

QMatrix canonical_span(const QMatrix& gens) {
  std::vector<int> piv;
  const QMatrix r = rref(gens.transpose(), &piv);
  return r.row_range(0, static_cast<int>(piv.size())).transpose();
}

QMatrix zero_space(int n) { return QMatrix(n, 0); }
QMatrix full_space(int n) { return QMatrix::identity(n); }

int dimension(const QMatrix& span) { return span.cols(); }

bool contains(const QMatrix& span, const std::vector<mpq_class>& v) { return solve(span, v).has_value(); }

bool is_subspace(const QMatrix& a, const QMatrix& b) {
  if (a.cols() == 0) return true;
  return rank(hstack(b, a)) == rank(b);
}

QMatrix sum(const QMatrix& a, const QMatrix& b) { return canonical_span(hstack(a, b)); }

QMatrix intersection(const QMatrix& a, const QMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return zero_space(a.rows());
  const QMatrix k = nullspace(hstack(a, b * mpq_class(-1)));
  return canonical_span(a * k.row_range(0, a.cols()));
}

QMatrix preimage(const QMatrix& m, const QMatrix& s) {
  const int n = m.cols();
  const QMatrix k = nullspace(hstack(m, s * mpq_class(-1)));
  return canonical_span(k.row_range(0, n));
}

QMatrix image(const QMatrix& m, const QMatrix& s) { return canonical_span(m * s); }

bool is_stable(const QMatrix& m, const QMatrix& s) { return is_subspace(m * s, s); }

QMatrix restrict_to(const QMatrix& m, const QMatrix& s) {
  const QMatrix ms = m * s;
  QMatrix out(s.cols(), s.cols());
  for (int j = 0; j < s.cols(); ++j) {
    const auto x = solve(s, ms.column(j));
    if (!x) throw ParameterError("restrict_to: subspace is not stable");
    for (int i = 0; i < s.cols(); ++i) out(i, j) = (*x)[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace wachlab::rational
