#include "wachlab/errors.hpp"
#include "wachlab/wach/wach.hpp"

namespace wachlab::wach {

using namespace padic;

namespace {

int vp(long k, int p) {
  int v = 0;
  for (; k % p == 0; k /= p) ++v;
  return v;
}

// Divides by X; entries must have zero constant term. The top coefficient
// becomes unknown and is set to zero.
SeriesMatrix divided_by_x(const SeriesMatrix& m) {
  const int order = m.params().order();
  SeriesMatrix out(m.params(), m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const Residue* src = m.entry_data(r, c);
      if (src[0] != 0) throw NotUnipotentModX("log T has a nonzero constant term");
      Residue* dst = out.entry_data(r, c);
      for (int k = 0; k + 1 < order; ++k) dst[k] = src[k + 1];
    }
  return out;
}

SeriesMatrix constant_part(const SeriesMatrix& m) {
  SeriesMatrix out(m.params(), m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.entry_data(r, c)[0] = m.entry_data(r, c)[0];
  return out;
}

}  // namespace

std::pair<SeriesMatrix, int> log_tau(const SeriesMatrix& t) {
  const RingParams& params = t.params();
  const int d = t.rows();
  const SeriesMatrix u = t - SeriesMatrix::identity(params, d);
  const auto idx = nilpotence_index(u, d * (params.order() + params.prec()) + 1);
  if (!idx) throw NotUnipotent("T - Id is not nilpotent");
  SeriesMatrix sum(params, d, d);
  int digits = params.prec();
  SeriesMatrix term = SeriesMatrix::identity(params, d);
  for (int k = 1; k < *idx; ++k) {
    term = term * u;
    if (term.is_zero()) break;
    const int v = vp(k, params.p());
    if (v >= digits) throw PrecisionError("log T: division by " + std::to_string(k) + " exhausts the p-precision");
    const SeriesMatrix divided = term.divided_by_p_power(v);
    digits = std::min(digits, params.prec() - v);
    long unit = k;
    for (int s = 0; s < v; ++s) unit /= params.p();
    const Residue inv = inverse_unit(reduce(static_cast<long long>(unit), params), params);
    const SeriesMatrix scaled = divided.scaled(inv);
    if (k % 2 == 1) sum += scaled;
    else sum -= scaled;
  }
  return {sum.with_prec(digits), digits};
}

Monodromy monodromy(const WachModule& w) {
  const auto c = w.tau().mod_x();
  for (int r = 0; r < w.rank(); ++r)
    for (int k = 0; k < w.rank(); ++k)
      if (c[static_cast<std::size_t>(r * w.rank() + k)] != (r == k ? 1u : 0u))
        throw NotUnipotentModX("T is not the identity mod X");
  auto [log, digits] = log_tau(w.tau());
  Monodromy m{divided_by_x(log), digits, w.params().order() - 1, std::nullopt};
  const SeriesMatrix n0 = constant_part(m.n);
  m.nilpotence_mod_x = nilpotence_index(n0, w.rank() * digits + 1);
  return m;
}

ExpCheck exp_check(const WachModule& w) {
  std::optional<Monodromy> m;
  try {
    m = monodromy(w);
  } catch (const Error& e) {
    return {false, 0, 0, e.what()};
  }
  const RingParams& params = m->n.params();
  const int d = w.rank();
  const SeriesMatrix xn = m->n.shifted_up(1);
  SeriesMatrix sum = SeriesMatrix::identity(params, d);
  SeriesMatrix term = SeriesMatrix::identity(params, d);
  int digits = params.prec();
  int factorial_v = 0;
  long factorial_unit = 1;
  const Residue mod = params.modulus();
  for (int k = 1; k <= params.order(); ++k) {
    term = term * xn;
    if (term.is_zero()) break;
    long unit = k;
    const int v = vp(k, params.p());
    for (int s = 0; s < v; ++s) unit /= params.p();
    factorial_v += v;
    factorial_unit = static_cast<long>(kernels::mulmod(static_cast<Residue>(factorial_unit), static_cast<Residue>(unit), mod));
    if (factorial_v >= digits)
      return {false, digits, params.order(), "exp(XN): division by " + std::to_string(k) + "! exhausts the p-precision"};
    SeriesMatrix divided(params, d, d);
    try {
      divided = term.divided_by_p_power(factorial_v);
    } catch (const PrecisionError&) {
      return {false, digits, params.order(), "exp(XN): term " + std::to_string(k) + " is not divisible by k!"};
    }
    digits = std::min(digits, params.prec() - factorial_v);
    sum += divided.scaled(inverse_unit(static_cast<Residue>(factorial_unit), params));
  }
  const SeriesMatrix t = w.tau().with_prec(digits);
  const bool holds = sum.with_prec(digits) == t;
  return {holds, digits, params.order(), holds ? "T = exp(XN)" : "T differs from exp(XN)"};
}

}  // namespace wachlab::wach
