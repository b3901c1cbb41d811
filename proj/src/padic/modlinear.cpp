#include "wachlab/padic/modlinear.hpp"

#include <algorithm>

#include "wachlab/errors.hpp"

namespace wachlab::padic {

namespace {

Residue p_power(const RingParams& params, int v) {
  Residue r = 1;
  for (int i = 0; i < v; ++i) r *= static_cast<Residue>(params.p());
  return r;
}

ModMatrix transpose(const ModMatrix& a) {
  ModMatrix t(a.cols(), a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  return t;
}

void swap_rows(ModMatrix& a, int i, int j) {
  if (i == j) return;
  std::swap_ranges(a.row(i), a.row(i) + a.cols(), a.row(j));
}

}  // namespace

ModMatrix ModMatrix::identity(int n) {
  ModMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Residue> ModMatrix::column(int c) const {
  std::vector<Residue> out(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) out[static_cast<std::size_t>(r)] = (*this)(r, c);
  return out;
}

std::vector<Residue> ModMatrix::apply(const std::vector<Residue>& x, Residue mod) const {
  if (static_cast<int>(x.size()) != cols_) throw ParameterError("apply: length mismatch");
  std::vector<Residue> out(static_cast<std::size_t>(rows_), 0);
  for (int r = 0; r < rows_; ++r) {
    unsigned __int128 acc = 0;
    for (int c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(r)] = static_cast<Residue>(acc % mod);
  }
  return out;
}

ModMatrix ModMatrix::multiply(const ModMatrix& o, Residue mod) const {
  if (cols_ != o.rows_) throw ParameterError("multiply: inner dimensions differ");
  ModMatrix out(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < o.cols_; ++c) {
      unsigned __int128 acc = 0;
      for (int k = 0; k < cols_; ++k) acc += (*this)(r, k) * o(k, c);
      out(r, c) = static_cast<Residue>(acc % mod);
    }
  return out;
}

SmithForm smith_form(ModMatrix a, const RingParams& params) {
  const Residue mod = params.modulus();
  const int m = a.rows();
  const int n = a.cols();
  ModMatrix left = ModMatrix::identity(m);
  // Column operations are applied as row operations on R^T.
  ModMatrix right_t = ModMatrix::identity(n);
  std::vector<int> vals;
  std::vector<Residue> factors;

  for (int t = 0; t < std::min(m, n); ++t) {
    int best_v = params.prec();
    int br = -1;
    int bc = -1;
    for (int c = t; c < n && best_v > 0; ++c)
      for (int r = t; r < m; ++r) {
        const Residue x = a(r, c);
        if (x == 0) continue;
        const int v = valuation(x, params);
        if (v < best_v) {
          best_v = v;
          br = r;
          bc = c;
          if (v == 0) break;
        }
      }
    if (br < 0) break;

    swap_rows(a, t, br);
    swap_rows(left, t, br);
    if (bc != t) {
      for (int r = 0; r < m; ++r) std::swap(a(r, t), a(r, bc));
      swap_rows(right_t, t, bc);
    }

    const Residue pv = p_power(params, best_v);
    const Residue unit_inv = inverse_unit(a(t, t) / pv, params);
    for (int c = 0; c < n; ++c) a(t, c) = kernels::mulmod(a(t, c), unit_inv, mod);
    for (int c = 0; c < m; ++c) left(t, c) = kernels::mulmod(left(t, c), unit_inv, mod);

    factors.assign(static_cast<std::size_t>(m), 0);
    for (int r = t + 1; r < m; ++r) factors[static_cast<std::size_t>(r)] = a(r, t) / pv;
    kernels::omp::eliminate(a.row(0), m, n, t, factors.data(), t, mod);
    kernels::omp::eliminate(left.row(0), m, m, t, factors.data(), 0, mod);

    factors.assign(static_cast<std::size_t>(n), 0);
    for (int c = t + 1; c < n; ++c) {
      factors[static_cast<std::size_t>(c)] = a(t, c) / pv;
      a(t, c) = 0;
    }
    kernels::omp::eliminate(right_t.row(0), n, n, t, factors.data(), 0, mod);
    vals.push_back(best_v);
  }
  return SmithForm{std::move(left), transpose(right_t), std::move(vals)};
}

std::vector<Residue> best_effort_solution(const SmithForm& snf, const std::vector<Residue>& b,
                                          const RingParams& params, int unknowns) {
  const std::vector<Residue> c = snf.left.apply(b, params.modulus());
  std::vector<Residue> y(static_cast<std::size_t>(unknowns), 0);
  for (std::size_t i = 0; i < snf.valuations.size(); ++i)
    y[i] = c[i] / p_power(params, snf.valuations[i]);
  return snf.right.apply(y, params.modulus());
}

std::optional<std::vector<Residue>> solve(const ModMatrix& a, const SmithForm& snf,
                                          const std::vector<Residue>& b, const RingParams& params) {
  if (static_cast<int>(b.size()) != a.rows()) throw ParameterError("solve: right-hand side length mismatch");
  const std::vector<Residue> c = snf.left.apply(b, params.modulus());
  const std::size_t rank = snf.valuations.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < rank) {
      if (c[i] % p_power(params, snf.valuations[i]) != 0) return std::nullopt;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return best_effort_solution(snf, b, params, a.cols());
}

std::vector<std::vector<Residue>> kernel(const SmithForm& snf, int unknowns, const RingParams& params) {
  std::vector<std::vector<Residue>> gens;
  const Residue mod = params.modulus();
  for (int i = 0; i < unknowns; ++i) {
    Residue scale = 1;
    if (i < static_cast<int>(snf.valuations.size())) {
      const int v = snf.valuations[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      scale = p_power(params, params.prec() - v);
    }
    std::vector<Residue> g(static_cast<std::size_t>(unknowns));
    for (int r = 0; r < unknowns; ++r) g[static_cast<std::size_t>(r)] = kernels::mulmod(snf.right(r, i), scale, mod);
    gens.push_back(std::move(g));
  }
  return gens;
}

ModMatrix inverse(const ModMatrix& a, const RingParams& params) {
  if (a.rows() != a.cols()) throw ParameterError("inverse of a non-square matrix");
  const SmithForm snf = smith_form(a, params);
  if (static_cast<int>(snf.valuations.size()) != a.rows() ||
      std::any_of(snf.valuations.begin(), snf.valuations.end(), [](int v) { return v != 0; }))
    throw NotAUnit("matrix is not invertible over Z/p^N");
  return snf.right.multiply(snf.left, params.modulus());
}

ColumnSpace column_space(const ModMatrix& a, const RingParams& params) {
  const SmithForm snf = smith_form(a, params);
  const ModMatrix linv = inverse(snf.left, params);
  ColumnSpace out;
  for (std::size_t i = 0; i < snf.valuations.size(); ++i) {
    out.directions.push_back(linv.column(static_cast<int>(i)));
    out.valuations.push_back(snf.valuations[i]);
  }
  return out;
}

}  // namespace wachlab::padic
