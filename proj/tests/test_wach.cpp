#include <doctest.h>

#include <tuple>

#include "wachlab/errors.hpp"
#include "wachlab/padic/membership.hpp"
#include "wachlab/rational/subspace.hpp"
#include "wachlab/wach/wach.hpp"

using namespace wachlab;
using namespace wachlab::padic;
using namespace wachlab::wach;

namespace {

const RingParams kDefault(3, 8, 16);

// ((1+X)^3 - 1) / X written out.
TruncSeries q_oracle(const RingParams& params) { return TruncSeries::from_integers(params, {3, 3, 1}); }

TruncSeries series(std::vector<long long> c) { return TruncSeries::from_integers(kDefault, c); }

SeriesMatrix matrix2(const TruncSeries& a, const TruncSeries& b, const TruncSeries& c, const TruncSeries& d) {
  return SeriesMatrix::from_entries(a.params(), 2, 2, {a, b, c, d});
}

// Constant terms lifted symmetrically mod p^digits.
rational::QMatrix lift0(const SeriesMatrix& m, int digits) {
  rational::QMatrix out(m.rows(), m.cols());
  const auto c = m.mod_x();
  for (int r = 0; r < m.rows(); ++r)
    for (int k = 0; k < m.cols(); ++k)
      out(r, k) = mpq_class(static_cast<long>(symmetric_lift(c[static_cast<std::size_t>(r * m.cols() + k)], m.params().p(), digits)));
  return out;
}

bool single_jordan_string(const rational::QMatrix& n) {
  const int d = n.rows();
  const auto idx = rational::nilpotence_index(n);
  return idx && *idx == d && rational::rank(n) == d - 1;
}

WachModule trivial() {
  const SeriesMatrix id = SeriesMatrix::identity(kDefault, 1);
  return WachModule(id, id, id, default_chi0(kDefault));
}

SeriesVector basis_vector(const RingParams& params, int d, int k, int x_power = 0) {
  SeriesVector v(static_cast<std::size_t>(d), TruncSeries(params));
  v[static_cast<std::size_t>(k)] = TruncSeries::x_power(params, x_power);
  return v;
}

// Two finite lists of generators span the same R-submodule.
bool same_span(const std::vector<SeriesVector>& a, const std::vector<SeriesVector>& b, int d, const RingParams& params) {
  for (const auto& v : a)
    if (!in_span(b, v, d, params)) return false;
  for (const auto& v : b)
    if (!in_span(a, v, d, params)) return false;
  return true;
}

std::vector<std::pair<int, int>> all_blocks() {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= 4; ++i)
    for (int j = 0; j <= 3; ++j) out.emplace_back(i, j);
  return out;
}

}  // namespace

TEST_CASE("standard (2,1) matrices and the phi-tau relation") {
  const WachModule w = build_standard_wach(2, 1, kDefault);
  const TruncSeries q = q_oracle(kDefault);
  const TruncSeries zero(kDefault);
  const TruncSeries one = TruncSeries::one(kDefault);
  const TruncSeries x = TruncSeries::x_power(kDefault, 1);
  CHECK(w.phi() == matrix2(q, zero, zero, q * q));
  CHECK(w.tau() == matrix2(one, x, zero, one));
  const SeriesMatrix expected = matrix2(q, q * q * x, zero, q * q);
  CHECK(w.tau() * w.phi() == expected);
  CHECK(w.phi() * subst_phi(w.tau()) == expected);
  const WachReport rep = check_relations(w);
  CHECK(rep.relations_hold());
  for (const auto& r : rep.relations) {
    CHECK(r.residual.p_digits == 8);
    CHECK(r.residual.x_order == 16);
  }
  CHECK(rep.positivity.verdict == Verdict::Pass);
  CHECK(rep.positivity.s == 3);
  CHECK(rep.unipotence_index == 2);
  CHECK(rep.monodromy_nilpotence == 2);
}

TEST_CASE("trivial module and corrupted tau") {
  CHECK(check_relations(trivial()).relations_hold());
  CHECK(build_standard_wach(1, 0, kDefault) == trivial());

  const WachModule w = build_standard_wach(2, 1, kDefault);
  const TruncSeries x = TruncSeries::x_power(kDefault, 1);
  const TruncSeries one = TruncSeries::one(kDefault);
  const WachModule bad(w.phi(), matrix2(one, x, x, one), w.gamma(), w.chi0());
  const WachReport rep = check_relations(bad);
  CHECK_FALSE(rep.relations_hold());
  const auto& gt = rep.relations[2];
  CHECK(gt.name == "gamma-tau");
  CHECK_FALSE(gt.holds);
  CHECK(gt.residual.x_order < 16);
  CHECK_FALSE(exp_check(bad).holds);
}

TEST_CASE("gamma is trivial mod X on every standard block") {
  for (auto [i, j] : all_blocks()) {
    const WachModule w = build_standard_wach(i, j, kDefault);
    CHECK(check_relations(w).gamma_trivial_mod_x);
  }
}

TEST_CASE("monodromy examples") {
  const Monodromy m = monodromy(build_standard_wach(2, 1, kDefault));
  const TruncSeries zero(m.n.params());
  CHECK(m.n == SeriesMatrix::from_entries(m.n.params(), 2, 2, {zero, TruncSeries::one(m.n.params()), zero, zero}));
  CHECK(m.p_digits == 8);
  CHECK(m.x_order == 15);
  CHECK(m.nilpotence_mod_x == 2);

  const Monodromy t = monodromy(trivial());
  CHECK(t.n.is_zero());
  CHECK(exp_check(trivial()).holds);

  const WachModule sum = direct_sum_wach(build_standard_wach(2, 1, kDefault), build_standard_wach(3, 0, kDefault));
  const Monodromy ms = monodromy(sum);
  const rational::QMatrix n0 = lift0(ms.n, ms.p_digits);
  CHECK(rational::rank(n0) == 3);
  CHECK(rational::rank(rational::power(n0, 2)) == 1);
  CHECK(rational::power(n0, 3).is_zero());

  const WachModule shifted(SeriesMatrix::identity(kDefault, 1),
                           SeriesMatrix::from_entries(kDefault, 1, 1, {series({2, 1})}),
                           SeriesMatrix::identity(kDefault, 1), default_chi0(kDefault));
  CHECK_THROWS_AS(monodromy(shifted), NotUnipotentModX);
}

TEST_CASE("monodromy of rank-4 blocks loses one digit to the division by 3") {
  const Monodromy m = monodromy(build_standard_wach(4, 0, kDefault));
  CHECK(m.p_digits == 7);
  CHECK(single_jordan_string(lift0(m.n, m.p_digits)));
  const ExpCheck e = exp_check(build_standard_wach(4, 0, kDefault));
  CHECK(e.holds);
  CHECK(e.p_digits <= 7);
}

TEST_CASE("q_filtration examples") {
  const WachModule w = build_standard_wach(2, 1, kDefault);
  CHECK(q_filtration(w, 0).basis == rational::full_space(2));
  const QFiltration f2 = q_filtration(w, 2);
  CHECK(f2.basis == rational::QMatrix::from_columns(2, {{0, 1}}));
  CHECK(f2.p_digits >= 1);
  CHECK(q_filtration(w, 3).basis.cols() == 0);
  CHECK_THROWS_AS(q_filtration(w, -1), ParameterError);
}

TEST_CASE("reduce_mod_X examples") {
  const fpn::FilPhiNModule d = reduce_mod_X(build_standard_wach(2, 1, kDefault));
  CHECK(d.phi() == rational::QMatrix::from_rows({{3, 0}, {0, 9}}));
  CHECK(d.n() == rational::QMatrix::from_rows({{0, 1}, {0, 0}}));
  CHECK(d.fil().levels() == std::vector<int>{1, 2});
  CHECK(reduce_mod_X(trivial()) == fpn::unit_object(3));
  CHECK(fpn::isomorphic(reduce_mod_X(build_standard_wach(3, 0, kDefault)), fpn::standard_block(3, 3, 0)));
}

TEST_CASE("direct sums") {
  const WachModule a = build_standard_wach(2, 1, kDefault);
  const WachModule s = direct_sum_wach(a, trivial());
  CHECK(s.rank() == 3);
  CHECK(check_relations(s).relations_hold());
  const fpn::FilPhiNModule expected = fpn::direct_sum(fpn::twist(fpn::standard_block(3, 2, 0), -1), fpn::unit_object(3));
  CHECK(fpn::isomorphic(reduce_mod_X(s), expected));
  const WachModule b = build_standard_wach(3, 0, kDefault);
  CHECK(direct_sum_wach(direct_sum_wach(a, b), trivial()) == direct_sum_wach(a, direct_sum_wach(b, trivial())));
  CHECK_THROWS_AS(direct_sum_wach(a, build_standard_wach(1, 0, RingParams(3, 6, 16))), ParameterError);
}

TEST_CASE("verify_wach examples") {
  const WachModule w = build_standard_wach(2, 1, kDefault);
  CHECK(verify_wach(w, fpn::twist(fpn::standard_block(3, 2, 0), -1)).overall == Verdict::Pass);
  CHECK(verify_wach(trivial(), fpn::unit_object(3)).overall == Verdict::Pass);
  const VerifyResult bad = verify_wach(w, fpn::standard_block(3, 2, 0));
  CHECK(bad.overall == Verdict::Fail);
  bool positivity_failed = false;
  for (const auto& it : bad.items)
    if (it.name == "positivity") positivity_failed = it.verdict == Verdict::Fail;
  CHECK(positivity_failed);
  bool lattice_not_checked = false;
  for (const auto& it : bad.items)
    if (it.name == "lattice_comparison") lattice_not_checked = it.verdict == Verdict::NotChecked;
  CHECK(lattice_not_checked);
}

TEST_CASE("positivity") {
  CHECK(positivity(build_standard_wach(4, 3, kDefault)).verdict == Verdict::Undecided);
  const SeriesMatrix id = SeriesMatrix::identity(kDefault, 1);
  auto with_p = [&](const TruncSeries& s) {
    return WachModule(SeriesMatrix::from_entries(kDefault, 1, 1, {s}), id, id, default_chi0(kDefault));
  };
  const Positivity unit = positivity(with_p(series({2, 1})));
  CHECK(unit.verdict == Verdict::Pass);
  CHECK(unit.s == 0);
  // 3 + X is not a unit multiple of q = 3 + 3X + X^2.
  const Positivity off = positivity(with_p(series({3, 1})));
  CHECK(off.verdict == Verdict::Fail);
  CHECK(off.s == 1);
}

TEST_CASE("invariants over every block and pairwise sum") {
  std::vector<WachModule> mods;
  for (auto [i, j] : all_blocks()) mods.push_back(build_standard_wach(i, j, kDefault));
  const std::size_t singles = mods.size();
  for (std::size_t a = 0; a < singles; a += 3)
    for (std::size_t b = a + 1; b < singles; b += 5)
      if (mods[a].rank() + mods[b].rank() <= 6) mods.push_back(direct_sum_wach(mods[a], mods[b]));
  for (const auto& w : mods) {
    const Monodromy m = monodromy(w);
    const rational::QMatrix n0 = lift0(m.n, m.p_digits);
    const rational::QMatrix p0 = lift0(w.phi(), m.p_digits);
    // N φ = p φ N mod X, exactly on integers mod p^digits.
    const rational::QMatrix diff = n0 * p0 - mpq_class(3) * (p0 * n0);
    mpz_class modulus;
    mpz_ui_pow_ui(modulus.get_mpz_t(), 3, static_cast<unsigned long>(m.p_digits));
    for (int r = 0; r < w.rank(); ++r)
      for (int c = 0; c < w.rank(); ++c) CHECK(mpz_divisible_p(diff(r, c).get_num_mpz_t(), modulus.get_mpz_t()));
    CHECK(exp_check(w).holds);

    const Positivity pos = positivity(w);
    rational::QMatrix prev = rational::full_space(w.rank());
    CHECK(q_filtration(w, 0).basis == prev);
    for (int i = 1; i <= 8; ++i) {
      const rational::QMatrix f = q_filtration(w, i).basis;
      CHECK(rational::is_subspace(f, prev));
      if (pos.s && i > *pos.s) CHECK(f.cols() == 0);
      prev = f;
    }
  }
}

TEST_CASE("standard blocks reduce to twisted standard blocks") {
  for (auto [i, j] : all_blocks()) {
    CAPTURE(i);
    CAPTURE(j);
    const WachModule w = build_standard_wach(i, j, kDefault);
    const fpn::FilPhiNModule d = reduce_mod_X(w);
    CHECK(fpn::isomorphic(d, fpn::twist(fpn::standard_block(3, i, 0), -j)));
    const Monodromy m = monodromy(w);
    CHECK(single_jordan_string(lift0(m.n, m.p_digits)));
  }
}

TEST_CASE("chi0 is only defined mod p^guard") {
  const WachModule w = build_standard_wach(3, 1, kDefault);
  mpz_class shift;
  mpz_ui_pow_ui(shift.get_mpz_t(), 3, static_cast<unsigned long>(kDefault.guard_precision()));
  const WachModule v(w.phi(), w.tau(), w.gamma(), w.chi0() + shift);
  CHECK(v == w);
  CHECK(check_relations(v).relations_hold());
  CHECK(subst_gamma(w.phi(), w.chi0() + 5 * shift) == subst_gamma(w.phi(), w.chi0()));
  CHECK_THROWS_AS(WachModule(w.phi(), w.tau(), w.gamma(), mpz_class(9)), InvalidCharacterValue);
}

TEST_CASE("replacing tau by a unit power scales the monodromy") {
  for (auto [i, j] : std::vector<std::pair<int, int>>{{2, 1}, {3, 0}, {4, 2}}) {
    const WachModule w = build_standard_wach(i, j, kDefault);
    const Monodromy base = monodromy(w);
    for (long a : {2L, 4L, 5L}) {
      const WachModule v(w.phi(), binomial_power(w.tau(), mpz_class(a)), w.gamma(), w.chi0());
      const Monodromy m = monodromy(v);
      const int digits = std::min(base.p_digits, m.p_digits);
      const rational::QMatrix n0 = lift0(base.n.with_prec(digits), digits);
      const rational::QMatrix n1 = lift0(m.n.with_prec(digits), digits);
      CHECK(n1 == mpq_class(a) * n0);
      CHECK(single_jordan_string(n1));
    }
  }
}

TEST_CASE("log tau") {
  CHECK_THROWS_AS(log_tau(SeriesMatrix::identity(kDefault, 2).scaled(Residue{2})), NotUnipotent);
  const auto [l, digits] = log_tau(SeriesMatrix::identity(kDefault, 3));
  CHECK(l.is_zero());
  CHECK(digits == 8);
}

TEST_CASE("naive envelope") {
  SUBCASE("trivial tau") {
    const SeriesMatrix id = SeriesMatrix::identity(kDefault, 2);
    const std::vector<SeriesVector> full{basis_vector(kDefault, 2, 0), basis_vector(kDefault, 2, 1)};
    const Envelope env = naive_envelope(id, full, 1);
    CHECK(same_span(env.generators, full, 2, kDefault));
    CHECK(env.tau_trivial);
    CHECK(env.r == 0);
    CHECK_FALSE(env.gamma_stable.has_value());
  }
  SUBCASE("n = 0 returns M") {
    const WachModule a = build_log_ambient(2, 1, kDefault);
    const std::vector<SeriesVector> m{basis_vector(kDefault, 2, 0)};
    const Envelope env = naive_envelope(a.tau(), m, 0);
    CHECK(same_span(env.generators, m, 2, kDefault));
  }
  SUBCASE("Wach module (2,1) as ambient") {
    const WachModule w = build_standard_wach(2, 1, kDefault);
    const Envelope env = naive_envelope(w.tau(), {basis_vector(kDefault, 2, 0)}, 1, w.gamma(), w.chi0());
    CHECK(same_span(env.generators, {basis_vector(kDefault, 2, 0), basis_vector(kDefault, 2, 1, 1)}, 2, kDefault));
    CHECK(env.tau_trivial);
    CHECK(env.gamma_stable == true);
  }
  SUBCASE("log ambients recover the Wach lattice") {
    // Needs (i-1)! invertible, so rank 4 runs at p = 5.
    const RingParams p5(5, 6, 16);
    for (auto [i, j, ring] : std::vector<std::tuple<int, int, RingParams>>{
             {2, 1, kDefault}, {3, 0, kDefault}, {3, 2, kDefault}, {4, 1, p5}, {5, 0, p5}}) {
      CAPTURE(i);
      const RingParams& base = ring;
      const WachModule a = build_log_ambient(i, j, base);
      CHECK(check_relations(a).relations[0].holds);
      CHECK(check_relations(a).relations[1].holds);
      CHECK(check_relations(a).relations[2].holds);
      const Envelope env = naive_envelope(a.tau(), {basis_vector(base, i, 0)}, i - 1, a.gamma(), a.chi0());
      const RingParams params = RingParams(base.p(), env.p_digits, 16);
      std::vector<SeriesVector> lattice;
      for (int k = 0; k < i; ++k) lattice.push_back(basis_vector(params, i, k, k));
      CHECK(static_cast<int>(env.generators.size()) == i);
      CHECK(env.independent);
      CHECK(env.tau_trivial);
      CHECK(env.gamma_stable == true);
      CHECK(env.gamma_trivial_mod_x == true);
      CHECK(env.r == i - 1);
      CHECK(same_span(env.generators, lattice, i, params));
    }
  }
  CHECK_THROWS_AS(naive_envelope(SeriesMatrix::identity(kDefault, 1).scaled(Residue{2}), {}, 1), NotUnipotent);
}
