#include "wachlab/padic/series_matrix.hpp"

#include <algorithm>

#include "wachlab/errors.hpp"

namespace wachlab::padic {

namespace {

void require_same(const RingParams& a, const RingParams& b, const char* op) {
  if (!(a == b)) throw ParameterError(std::string(op) + ": matrices live over different rings");
}

std::size_t offset(int r, int c, int cols, int order) {
  return (static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)) *
         static_cast<std::size_t>(order);
}

}  // namespace

SeriesMatrix::SeriesMatrix(const RingParams& params, int rows, int cols)
    : params_(params),
      rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) *
                static_cast<std::size_t>(params.order()),
            0) {
  if (rows < 0 || cols < 0) throw ParameterError("negative matrix dimension");
}

SeriesMatrix SeriesMatrix::identity(const RingParams& params, int n) {
  SeriesMatrix m(params, n, n);
  for (int i = 0; i < n; ++i) m.entry_data(i, i)[0] = 1;
  return m;
}

SeriesMatrix SeriesMatrix::from_columns(const RingParams& params, int rows,
                                        const std::vector<SeriesVector>& cols) {
  SeriesMatrix m(params, rows, static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols(); ++c) m.set_column(c, cols[static_cast<std::size_t>(c)]);
  return m;
}

SeriesMatrix SeriesMatrix::from_entries(const RingParams& params, int rows, int cols,
                                        const std::vector<TruncSeries>& row_major) {
  if (row_major.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw ParameterError("entry count does not match shape");
  SeriesMatrix m(params, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.set(r, c, row_major[static_cast<std::size_t>(r * cols + c)]);
  return m;
}

const Residue* SeriesMatrix::entry_data(int r, int c) const {
  return data_.data() + offset(r, c, cols_, params_.order());
}

Residue* SeriesMatrix::entry_data(int r, int c) { return data_.data() + offset(r, c, cols_, params_.order()); }

TruncSeries SeriesMatrix::at(int r, int c) const {
  const Residue* p = entry_data(r, c);
  return TruncSeries(params_, std::vector<Residue>(p, p + params_.order()));
}

void SeriesMatrix::set(int r, int c, const TruncSeries& value) {
  require_same(params_, value.params(), "set");
  std::copy(value.coeffs().begin(), value.coeffs().end(), entry_data(r, c));
}

SeriesVector SeriesMatrix::column(int c) const {
  SeriesVector v;
  v.reserve(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) v.push_back(at(r, c));
  return v;
}

void SeriesMatrix::set_column(int c, const SeriesVector& v) {
  if (static_cast<int>(v.size()) != rows_) throw ParameterError("column length mismatch");
  for (int r = 0; r < rows_; ++r) set(r, c, v[static_cast<std::size_t>(r)]);
}

bool SeriesMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

bool SeriesMatrix::is_identity() const {
  return rows_ == cols_ && *this == identity(params_, rows_);
}

SeriesMatrix& SeriesMatrix::operator+=(const SeriesMatrix& o) {
  require_same(params_, o.params_, "add");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ParameterError("add: shape mismatch");
  const Residue m = params_.modulus();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = kernels::addmod(data_[i], o.data_[i], m);
  return *this;
}

SeriesMatrix& SeriesMatrix::operator-=(const SeriesMatrix& o) {
  require_same(params_, o.params_, "sub");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ParameterError("sub: shape mismatch");
  const Residue m = params_.modulus();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = kernels::submod(data_[i], o.data_[i], m);
  return *this;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  require_same(a.params_, b.params_, "mul");
  if (a.cols_ != b.rows_) throw ParameterError("mul: inner dimensions differ");
  SeriesMatrix c(a.params_, a.rows_, b.cols_);
  kernels::omp::matrix_mul(a.data_.data(), b.data_.data(), c.data_.data(), a.rows_, a.cols_, b.cols_,
                           a.params_.order(), a.params_.modulus());
  return c;
}

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
  return a.params_ == b.params_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

SeriesMatrix SeriesMatrix::scaled(Residue c) const {
  SeriesMatrix out = *this;
  const Residue m = params_.modulus();
  c %= m;
  for (auto& x : out.data_) x = kernels::mulmod(x, c, m);
  return out;
}

SeriesMatrix SeriesMatrix::scaled(const TruncSeries& s) const {
  SeriesMatrix out(params_, rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.set(r, c, at(r, c) * s);
  return out;
}

SeriesMatrix SeriesMatrix::shifted_up(int k) const {
  SeriesMatrix out(params_, rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.set(r, c, at(r, c).shifted_up(k));
  return out;
}

SeriesMatrix SeriesMatrix::divided_by_p_power(int k) const {
  SeriesMatrix out(params_, rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.set(r, c, at(r, c).divided_by_p_power(k));
  return out;
}

SeriesMatrix SeriesMatrix::reduced_to(int digits) const {
  SeriesMatrix out(params_, rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.set(r, c, at(r, c).reduced_to(digits));
  return out;
}

SeriesMatrix SeriesMatrix::with_prec(int digits) const {
  const RingParams lowered = params_.with_prec(digits);
  SeriesMatrix out(lowered, rows_, cols_);
  const Residue m = lowered.modulus();
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] % m;
  return out;
}

std::vector<Residue> SeriesMatrix::mod_x() const {
  std::vector<Residue> out;
  out.reserve(static_cast<std::size_t>(rows_ * cols_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.push_back(entry_data(r, c)[0]);
  return out;
}

SeriesVector operator*(const SeriesMatrix& a, const SeriesVector& v) {
  if (static_cast<int>(v.size()) != a.cols()) throw ParameterError("matrix-vector shape mismatch");
  SeriesVector out;
  for (int r = 0; r < a.rows(); ++r) {
    TruncSeries acc(a.params());
    for (int c = 0; c < a.cols(); ++c) acc += a.at(r, c) * v[static_cast<std::size_t>(c)];
    out.push_back(std::move(acc));
  }
  return out;
}

SeriesMatrix subst_phi(const SeriesMatrix& m) {
  SeriesMatrix out(m.params(), m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.set(r, c, subst_phi(m.at(r, c)));
  return out;
}

SeriesMatrix subst_gamma(const SeriesMatrix& m, const mpz_class& exponent) {
  SeriesMatrix out(m.params(), m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.set(r, c, subst_gamma(m.at(r, c), exponent));
  return out;
}

SeriesVector subst_phi(const SeriesVector& v) {
  SeriesVector out;
  for (const auto& s : v) out.push_back(subst_phi(s));
  return out;
}

SeriesVector subst_gamma(const SeriesVector& v, const mpz_class& exponent) {
  SeriesVector out;
  for (const auto& s : v) out.push_back(subst_gamma(s, exponent));
  return out;
}

SeriesMatrix block_diagonal(const SeriesMatrix& a, const SeriesMatrix& b) {
  require_same(a.params(), b.params(), "block_diagonal");
  SeriesMatrix out(a.params(), a.rows() + b.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c));
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) out.set(a.rows() + r, a.cols() + c, b.at(r, c));
  return out;
}

TruncSeries determinant(const SeriesMatrix& m) {
  if (m.rows() != m.cols()) throw ParameterError("determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return TruncSeries::one(m.params());
  if (n > 20) throw ParameterError("determinant: dimension too large for subset expansion");
  // minors[S] = det of rows 0..|S|-1 against column set S (Laplace along rows).
  std::vector<TruncSeries> minors(std::size_t{1} << n, TruncSeries(m.params()));
  minors[0] = TruncSeries::one(m.params());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int row = __builtin_popcount(mask) - 1;
    TruncSeries acc(m.params());
    int sign_index = 0;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      // sign from the position of c among the chosen columns
      const TruncSeries term = m.at(row, c) * minors[mask & ~(1u << c)];
      const int higher = __builtin_popcount(mask >> (c + 1));
      if (higher % 2 == 0) acc += term; else acc -= term;
      ++sign_index;
    }
    minors[mask] = std::move(acc);
  }
  return minors[(1u << n) - 1];
}

SeriesMatrix power(const SeriesMatrix& m, int k) {
  SeriesMatrix out = SeriesMatrix::identity(m.params(), m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

std::optional<int> nilpotence_index(const SeriesMatrix& m, int limit) {
  SeriesMatrix acc = m;
  for (int k = 1; k <= limit; ++k) {
    if (acc.is_zero()) return k;
    acc = acc * m;
  }
  return std::nullopt;
}

SeriesMatrix binomial_power(const SeriesMatrix& m, const mpz_class& exponent) {
  const RingParams& params = m.params();
  const SeriesMatrix id = SeriesMatrix::identity(params, m.rows());
  const SeriesMatrix u = m - id;
  const int limit = m.rows() * (params.order() + params.prec()) + 1;
  SeriesMatrix out = id;
  SeriesMatrix term = id;
  mpz_class c;
  for (int k = 1; k <= limit; ++k) {
    term = term * u;
    if (term.is_zero()) return out;
    mpz_bin_ui(c.get_mpz_t(), exponent.get_mpz_t(), static_cast<unsigned long>(k));
    out += term.scaled(reduce(c, params));
  }
  throw NotUnipotent("binomial power: matrix minus identity is not nilpotent");
}

ResidualPrecision residual_precision(const SeriesMatrix& diff) {
  const RingParams& params = diff.params();
  ResidualPrecision out{params.prec(), params.order()};
  for (int r = 0; r < diff.rows(); ++r)
    for (int c = 0; c < diff.cols(); ++c) {
      const TruncSeries s = diff.at(r, c);
      out.p_digits = std::min(out.p_digits, p_valuation(s));
      if (auto v = x_valuation(s)) out.x_order = std::min(out.x_order, *v);
    }
  return out;
}

bool equal_mod(const SeriesMatrix& a, const SeriesMatrix& b, int p_digits, int x_order) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (!equal_mod(a.at(r, c), b.at(r, c), p_digits, x_order)) return false;
  return true;
}

}  // namespace wachlab::padic
