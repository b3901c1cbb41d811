#include "wachlab/errors.hpp"
#include "wachlab/wach/wach.hpp"

namespace wachlab::wach {

using namespace padic;

namespace {

// γ(X) / X = Σ_{k≥1} C(chi, k) X^{k-1}, exact to X^Mx.
TruncSeries gamma_x_over_x(const RingParams& params, const mpz_class& chi) {
  std::vector<Residue> c(static_cast<std::size_t>(params.order()));
  mpz_class b;
  for (int k = 0; k < params.order(); ++k) {
    mpz_bin_ui(b.get_mpz_t(), chi.get_mpz_t(), static_cast<unsigned long>(k + 1));
    c[static_cast<std::size_t>(k)] = reduce(b, params);
  }
  return TruncSeries(params, std::move(c));
}

TruncSeries pow(const TruncSeries& a, int e) {
  TruncSeries out = TruncSeries::one(a.params());
  for (int k = 0; k < e; ++k) out *= a;
  return out;
}

Residue pow_mod(Residue a, int e, const RingParams& params) {
  Residue out = 1;
  for (int k = 0; k < e; ++k) out = kernels::mulmod(out, a, params.modulus());
  return out;
}

// diag((γ(X)/X)^{e_k} · chi^{-c_k})
SeriesMatrix gamma_diagonal(const RingParams& params, const mpz_class& chi, const std::vector<int>& x_exp,
                            const std::vector<int>& chi_exp) {
  const int d = static_cast<int>(x_exp.size());
  const TruncSeries ratio = gamma_x_over_x(params, chi);
  const Residue chi_inv = inverse_unit(reduce(chi, params), params);
  SeriesMatrix g(params, d, d);
  for (int k = 0; k < d; ++k)
    g.set(k, k, pow(ratio, x_exp[static_cast<std::size_t>(k)]).scaled(pow_mod(chi_inv, chi_exp[static_cast<std::size_t>(k)], params)));
  return g;
}

void require_block(int i, int j) {
  if (i < 1) throw ParameterError("block rank i must be >= 1");
  if (j < 0) throw ParameterError("block twist j must be >= 0");
}

}  // namespace

WachModule build_standard_wach(int i, int j, const RingParams& params) {
  require_block(i, j);
  const mpz_class chi = default_chi0(params);
  const TruncSeries q = q_series(params);
  SeriesMatrix p(params, i, i);
  SeriesMatrix t(params, i, i);
  std::vector<int> e;
  mpz_class b;
  for (int k = 0; k < i; ++k) {
    p.set(k, k, pow(q, k + j));
    for (int m = 0; m <= k; ++m) {
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(m));
      t.set(m, k, TruncSeries::x_power(params, k - m).scaled(reduce(b, params)));
    }
    e.push_back(k + j);
  }
  return WachModule(p, t, gamma_diagonal(params, chi, e, e), chi);
}

WachModule build_log_ambient(int i, int j, const RingParams& params) {
  require_block(i, j);
  const mpz_class chi = default_chi0(params);
  const TruncSeries qj = pow(q_series(params), j);
  SeriesMatrix p(params, i, i);
  SeriesMatrix t(params, i, i);
  std::vector<int> x_exp;
  std::vector<int> chi_exp;
  mpz_class b;
  for (int k = 0; k < i; ++k) {
    p.set(k, k, qj);
    for (int m = 0; m <= k; ++m) {
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(m));
      t.set(m, k, TruncSeries::constant(params, b));
    }
    x_exp.push_back(j);
    chi_exp.push_back(j + k);
  }
  return WachModule(p, t, gamma_diagonal(params, chi, x_exp, chi_exp), chi);
}

}  // namespace wachlab::wach
