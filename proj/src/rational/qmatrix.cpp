#include "wachlab/rational/qmatrix.hpp"

#include <sstream>

#include "wachlab/errors.hpp"

namespace wachlab::rational {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::diagonal(const std::vector<mpq_class>& d) {
  const int n = static_cast<int>(d.size());
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<mpq_class>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  QMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw ParameterError("ragged rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

QMatrix QMatrix::from_columns(int rows, const std::vector<std::vector<mpq_class>>& cols) {
  QMatrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(cols[static_cast<std::size_t>(j)].size()) != rows) throw ParameterError("ragged columns");
    for (int i = 0; i < rows; ++i) m(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  return m;
}

std::vector<mpq_class> QMatrix::column(int c) const {
  std::vector<mpq_class> v(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v[static_cast<std::size_t>(i)] = (*this)(i, c);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool QMatrix::is_zero() const {
  for (const auto& x : a_)
    if (sgn(x) != 0) return false;
  return true;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ParameterError("add: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ParameterError("sub: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(const mpq_class& s) {
  for (auto& x : a_) x *= s;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw ParameterError("mul: inner dimensions differ");
  QMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const mpq_class& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::vector<mpq_class> QMatrix::apply(const std::vector<mpq_class>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw ParameterError("apply: length mismatch");
  std::vector<mpq_class> out(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

QMatrix QMatrix::columns(int begin, int end) const {
  QMatrix m(rows_, end - begin);
  for (int i = 0; i < rows_; ++i)
    for (int j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
  return m;
}

QMatrix QMatrix::row_range(int begin, int end) const {
  QMatrix m(end - begin, cols_);
  for (int i = begin; i < end; ++i)
    for (int j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
  return m;
}

std::string QMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << (*this)(i, j).get_str();
    }
  }
  os << ']';
  return os.str();
}

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw ParameterError("hstack: row counts differ");
  QMatrix m(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

QMatrix block_diagonal(const QMatrix& a, const QMatrix& b) {
  QMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

QMatrix power(const QMatrix& a, int k) {
  QMatrix out = QMatrix::identity(a.rows());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

QMatrix rref(QMatrix a, std::vector<int>* pivots) {
  int row = 0;
  for (int c = 0; c < a.cols() && row < a.rows(); ++c) {
    int piv = -1;
    for (int r = row; r < a.rows(); ++r)
      if (sgn(a(r, c)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    const mpq_class inv = 1 / a(row, c);
    for (int j = c; j < a.cols(); ++j) a(row, j) *= inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row || sgn(a(r, c)) == 0) continue;
      const mpq_class f = a(r, c);
      for (int j = c; j < a.cols(); ++j) a(r, j) -= f * a(row, j);
    }
    if (pivots) pivots->push_back(c);
    ++row;
  }
  return a;
}

int rank(const QMatrix& a) {
  std::vector<int> piv;
  rref(a, &piv);
  return static_cast<int>(piv.size());
}

QMatrix nullspace(const QMatrix& a) {
  std::vector<int> piv;
  const QMatrix r = rref(a, &piv);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<mpq_class>> basis;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<mpq_class> v(static_cast<std::size_t>(a.cols()));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[static_cast<std::size_t>(piv[i])] = -r(static_cast<int>(i), f);
    basis.push_back(std::move(v));
  }
  return QMatrix::from_columns(a.cols(), basis);
}

mpq_class determinant(const QMatrix& a) {
  if (a.rows() != a.cols()) throw ParameterError("determinant of a non-square matrix");
  QMatrix m = a;
  mpq_class det = 1;
  const int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (sgn(m(r, c)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (sgn(m(r, c)) == 0) continue;
      const mpq_class f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& a) {
  if (a.rows() != a.cols()) throw ParameterError("inverse of a non-square matrix");
  const int n = a.rows();
  std::vector<int> piv;
  const QMatrix r = rref(hstack(a, QMatrix::identity(n)), &piv);
  if (static_cast<int>(piv.size()) < n || piv[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  return r.columns(n, 2 * n);
}

std::optional<std::vector<mpq_class>> solve(const QMatrix& a, const std::vector<mpq_class>& b) {
  QMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[static_cast<std::size_t>(i)];
  }
  std::vector<int> piv;
  const QMatrix r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  std::vector<mpq_class> x(static_cast<std::size_t>(a.cols()));
  for (std::size_t i = 0; i < piv.size(); ++i) x[static_cast<std::size_t>(piv[i])] = r(static_cast<int>(i), a.cols());
  return x;
}

int p_valuation(const mpq_class& x, int p) {
  if (sgn(x) == 0) throw ParameterError("valuation of zero");
  const mpz_class pz = p;
  mpz_class t;
  const auto vn = static_cast<int>(mpz_remove(t.get_mpz_t(), x.get_num_mpz_t(), pz.get_mpz_t()));
  const auto vd = static_cast<int>(mpz_remove(t.get_mpz_t(), x.get_den_mpz_t(), pz.get_mpz_t()));
  return vn - vd;
}

std::optional<int> nilpotence_index(const QMatrix& a) {
  QMatrix acc = a;
  for (int k = 1; k <= std::max(1, a.rows()); ++k) {
    if (acc.is_zero()) return k;
    acc = acc * a;
  }
  return std::nullopt;
}

}  // namespace wachlab::rational
