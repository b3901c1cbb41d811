#include <algorithm>

#include "wachlab/errors.hpp"
#include "wachlab/padic/membership.hpp"
#include "wachlab/wach/wach.hpp"

namespace wachlab::wach {

using namespace padic;

namespace {

mpz_class guard_modulus(const RingParams& params) {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(params.p()),
                static_cast<unsigned long>(params.guard_precision()));
  return m;
}

bool is_identity_mod_x(const SeriesMatrix& m) {
  const auto c = m.mod_x();
  for (int r = 0; r < m.rows(); ++r)
    for (int k = 0; k < m.cols(); ++k)
      if (c[static_cast<std::size_t>(r * m.cols() + k)] != (r == k ? 1u : 0u)) return false;
  return true;
}

RelationCheck relation(std::string name, const SeriesMatrix& lhs, const SeriesMatrix& rhs) {
  return {std::move(name), lhs == rhs, residual_precision(lhs - rhs)};
}

}  // namespace

mpz_class default_chi0(const RingParams& params) { return mpz_class(1 + params.p()); }

WachModule::WachModule(SeriesMatrix phi, SeriesMatrix tau, SeriesMatrix gamma, mpz_class chi0)
    : phi_(std::move(phi)), tau_(std::move(tau)), gamma_(std::move(gamma)), chi0_(std::move(chi0)) {
  const int d = phi_.rows();
  if (d < 1) throw ParameterError("Wach module rank must be >= 1");
  for (const SeriesMatrix* m : {&phi_, &tau_, &gamma_}) {
    if (m->rows() != d || m->cols() != d)
      throw ParameterError("P, T and G must all be " + std::to_string(d) + "x" + std::to_string(d));
    if (!(m->params() == phi_.params())) throw ParameterError("P, T and G live over different rings");
  }
  const mpz_class m = guard_modulus(params());
  mpz_mod(chi0_.get_mpz_t(), chi0_.get_mpz_t(), m.get_mpz_t());
  if (mpz_divisible_ui_p(chi0_.get_mpz_t(), static_cast<unsigned long>(params().p())))
    throw InvalidCharacterValue("chi0 must be a p-adic unit");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Undecided: return "undecided";
    case Verdict::NotChecked: return "not-checked";
  }
  return "?";
}

bool WachReport::relations_hold() const {
  return tau_trivial_mod_x && gamma_trivial_mod_x &&
         std::all_of(relations.begin(), relations.end(), [](const RelationCheck& r) { return r.holds; });
}

Positivity positivity(const WachModule& w) {
  const RingParams& params = w.params();
  const TruncSeries det = determinant(w.phi());
  const Residue c0 = det[0];
  if (c0 == 0)
    return {Verdict::Undecided, std::nullopt,
            "det P(0) vanishes mod p^" + std::to_string(params.prec()) + ", so s >= Np"};
  const int s = valuation(c0, params);
  TruncSeries qs = TruncSeries::one(params);
  const TruncSeries q = q_series(params);
  for (int k = 0; k < s; ++k) qs *= q;
  const auto res = solve_membership(SeriesMatrix::from_entries(params, 1, 1, {qs}), {det});
  if (std::holds_alternative<SeriesVector>(res)) return {Verdict::Pass, s, "det P = unit * q^" + std::to_string(s)};
  return {Verdict::Fail, s, "det P is not divisible by q^" + std::to_string(s)};
}

WachReport check_relations(const WachModule& w) {
  const SeriesMatrix& p = w.phi();
  const SeriesMatrix& t = w.tau();
  const SeriesMatrix& g = w.gamma();
  WachReport rep;
  rep.relations.push_back(relation("phi-tau", t * p, p * subst_phi(t)));
  rep.relations.push_back(relation("gamma-phi", g * subst_gamma(p, w.chi0()), p * subst_phi(g)));
  try {
    rep.relations.push_back(relation("gamma-tau", g * subst_gamma(t, w.chi0()), binomial_power(t, w.chi0()) * g));
  } catch (const NotUnipotent&) {
    rep.relations.push_back({"gamma-tau", false, {0, 0}});
  }
  rep.tau_trivial_mod_x = is_identity_mod_x(t);
  rep.gamma_trivial_mod_x = is_identity_mod_x(g);
  rep.positivity = positivity(w);
  const SeriesMatrix u = t - SeriesMatrix::identity(w.params(), w.rank());
  rep.unipotence_index = nilpotence_index(u, w.rank() * (w.params().order() + w.params().prec()) + 1);
  if (rep.tau_trivial_mod_x) {
    try {
      rep.monodromy_nilpotence = monodromy(w).nilpotence_mod_x;
    } catch (const PrecisionError&) {
    }
  }
  return rep;
}

WachModule direct_sum_wach(const WachModule& a, const WachModule& b) {
  if (!(a.params() == b.params())) throw ParameterError("direct sum of Wach modules over different rings");
  if (a.chi0() != b.chi0()) throw ParameterError("direct sum of Wach modules with different chi0");
  return WachModule(block_diagonal(a.phi(), b.phi()), block_diagonal(a.tau(), b.tau()),
                    block_diagonal(a.gamma(), b.gamma()), a.chi0());
}

}  // namespace wachlab::wach
