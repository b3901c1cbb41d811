#include <algorithm>

#include "wachlab/errors.hpp"
#include "wachlab/padic/membership.hpp"
#include "wachlab/rational/subspace.hpp"
#include "wachlab/wach/wach.hpp"

namespace wachlab::wach {

using namespace padic;
using rational::QMatrix;

namespace {

TruncSeries pow(const TruncSeries& a, int e) {
  TruncSeries out = TruncSeries::one(a.params());
  for (int k = 0; k < e; ++k) out *= a;
  return out;
}

// Smallest v with p^v ∈ q^i R. Below it the truncated ring can still tell
// genuine filtration directions apart from multiples of p.
int resolution(const RingParams& params, int i) {
  const SeriesMatrix qi = SeriesMatrix::from_entries(params, 1, 1, {pow(q_series(params), i)});
  Residue pv = 1;
  for (int v = 0; v < params.prec(); ++v, pv *= static_cast<Residue>(params.p()))
    if (std::holds_alternative<SeriesVector>(solve_membership(qi, {TruncSeries::constant(params, static_cast<long long>(pv))})))
      return v;
  return params.prec();
}

// Reduced column echelon form of unimodular columns over Z/p^N.
std::vector<std::vector<Residue>> echelon(std::vector<std::vector<Residue>> cols, const RingParams& params) {
  const Residue mod = params.modulus();
  const int d = cols.empty() ? 0 : static_cast<int>(cols.front().size());
  std::vector<std::vector<Residue>> out;
  std::vector<int> pivots;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto& v = cols[c];
    int piv = -1;
    for (int r = 0; r < d && piv < 0; ++r)
      if (valuation(v[static_cast<std::size_t>(r)], params) == 0) piv = r;
    if (piv < 0) throw PrecisionError("filtration direction is not unimodular");
    const Residue inv = inverse_unit(v[static_cast<std::size_t>(piv)], params);
    for (auto& x : v) x = kernels::mulmod(x, inv, mod);
    auto eliminate = [&](std::vector<Residue>& w, const std::vector<Residue>& by, int row) {
      const Residue f = w[static_cast<std::size_t>(row)];
      if (f == 0) return;
      for (int r = 0; r < d; ++r)
        w[static_cast<std::size_t>(r)] =
            (w[static_cast<std::size_t>(r)] + mod - kernels::mulmod(f, by[static_cast<std::size_t>(r)], mod)) % mod;
    };
    for (auto& w : out) eliminate(w, v, piv);
    for (std::size_t e = c + 1; e < cols.size(); ++e) eliminate(cols[e], v, piv);
    out.push_back(v);
    pivots.push_back(piv);
  }
  std::vector<std::size_t> order(out.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });
  std::vector<std::vector<Residue>> sorted;
  for (std::size_t k : order) sorted.push_back(out[k]);
  return sorted;
}

QMatrix lift(const std::vector<std::vector<Residue>>& cols, int d, int p, int digits) {
  QMatrix out(d, static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (int r = 0; r < d; ++r)
      out(r, static_cast<int>(c)) = mpq_class(static_cast<long>(symmetric_lift(cols[c][static_cast<std::size_t>(r)], p, digits)));
  return out;
}

QMatrix lift_mod_x(const SeriesMatrix& m, int digits) {
  const auto c = m.mod_x();
  QMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int k = 0; k < m.cols(); ++k)
      out(r, k) = mpq_class(static_cast<long>(symmetric_lift(c[static_cast<std::size_t>(r * m.cols() + k)], m.params().p(), digits)));
  return out;
}

}  // namespace

QFiltration q_filtration(const WachModule& w, int i) {
  if (i < 0) throw ParameterError("filtration index must be >= 0");
  const RingParams& params = w.params();
  const int d = w.rank();
  if (i == 0) return {rational::full_space(d), params.prec()};
  const int order = params.order();

  // Unknowns (a, y) with P φ(a) - q^i y = 0; a first, both X-degree-major.
  const TruncSeries qi = pow(q_series(params), i);
  const TruncSeries phix = phi_of_x(params);
  std::vector<SeriesVector> images;
  TruncSeries phix_m = TruncSeries::one(params);
  for (int m = 0; m < order; ++m, phix_m *= phix)
    for (int j = 0; j < d; ++j) {
      SeriesVector col = w.phi().column(j);
      for (auto& s : col) s *= phix_m;
      images.push_back(std::move(col));
    }
  for (int m = 0; m < order; ++m)
    for (int j = 0; j < d; ++j) {
      SeriesVector col(static_cast<std::size_t>(d), TruncSeries(params));
      col[static_cast<std::size_t>(j)] = -qi.shifted_up(m);
      images.push_back(std::move(col));
    }
  const ModMatrix a = linearize_images(params, d, images);
  const SmithForm snf = smith_form(a, params);
  const auto gens = kernel(snf, a.cols(), params);

  // Constant terms of a.
  ModMatrix proj(d, std::max<int>(1, static_cast<int>(gens.size())));
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (int j = 0; j < d; ++j) proj(j, static_cast<int>(g)) = gens[g][static_cast<std::size_t>(j)];
  const ColumnSpace cs = column_space(proj, params);

  const int floor = resolution(params, i);
  std::vector<std::vector<Residue>> genuine;
  int digits = floor;
  for (std::size_t k = 0; k < cs.valuations.size(); ++k) {
    if (cs.valuations[k] == 0) genuine.push_back(cs.directions[k]);
    else digits = std::min(digits, cs.valuations[k]);
  }
  return {lift(echelon(std::move(genuine), params), d, params.p(), params.prec()), digits};
}

fpn::FilPhiNModule reduce_mod_X(const WachModule& w) {
  const RingParams& params = w.params();
  const int d = w.rank();
  const Monodromy m = monodromy(w);
  const QMatrix phi = lift_mod_x(w.phi(), params.prec());
  const QMatrix n = lift_mod_x(m.n, m.p_digits);

  const Positivity pos = positivity(w);
  const int cap = pos.s ? *pos.s + 1 : params.prec() * params.order();
  std::vector<QMatrix> fil;
  for (int i = 0;; ++i) {
    if (i > cap) throw PrecisionError("filtration did not terminate by level " + std::to_string(cap));
    QFiltration f = q_filtration(w, i);
    if (f.p_digits < 1) throw PrecisionError("Fil^" + std::to_string(i) + " is not resolved at this precision");
    fil.push_back(std::move(f.basis));
    if (fil.back().cols() == 0) break;
  }
  // Lifted bases nest only mod p^Np; enforce nesting over Q.
  for (std::size_t k = fil.size() - 1; k-- > 0;) fil[k] = rational::sum(fil[k], fil[k + 1]);
  std::vector<fpn::Flag::Step> steps;
  for (std::size_t k = 0; k < fil.size(); ++k) steps.push_back({static_cast<int>(k), fil[k]});
  return fpn::FilPhiNModule(params.p(), phi, n, fpn::Flag(d, std::move(steps)));
}

}  // namespace wachlab::wach
