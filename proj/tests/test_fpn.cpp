#include <doctest.h>

#include "fpn_support.hpp"
#include "wachlab/errors.hpp"
#include "wachlab/fpn/module.hpp"
#include "wachlab/rational/subspace.hpp"

using namespace wachlab;
using namespace wachlab::fpn;
using namespace wachlab::rational;

namespace {

constexpr int P = 3;

QMatrix m(std::vector<std::vector<mpq_class>> rows) { return QMatrix::from_rows(rows); }
QMatrix col(std::vector<mpq_class> v) { return QMatrix::from_columns(static_cast<int>(v.size()), {v}); }

// D_2 with φ = diag(1, p), N ε2 = ε1 and a chosen flag.
FilPhiNModule tate_d2(std::vector<Flag::Step> steps) {
  return FilPhiNModule(P, m({{1, 0}, {0, P}}), m({{0, 1}, {0, 0}}), Flag(2, std::move(steps)));
}

FilPhiNModule modified_d2() {
  return tate_d2({{0, full_space(2)}, {1, col({0, 1})}, {2, col({0, 1})}});
}

bool same_multiset(const Decomposition& got, std::vector<BlockSpec> want) {
  const auto* blocks = std::get_if<std::vector<BlockSpec>>(&got);
  if (!blocks) return false;
  std::sort(want.begin(), want.end());
  return *blocks == want;
}

}  // namespace

TEST_CASE("flag normalization") {
  const Flag f(2, {{2, col({0, 1})}, {1, col({0, 1})}, {0, full_space(2)}});
  REQUIRE(f.steps().size() == 2);
  CHECK(f.levels() == std::vector<int>{0, 2});
  CHECK(f.at(1) == col({0, 1}));
  CHECK(f.at(3).cols() == 0);
  CHECK(f.at(-5) == full_space(2));
  CHECK(f.t_h() == 2);
  // A first step that is not the whole space gets a full step right below it.
  const Flag g(2, {{1, col({0, 1})}});
  CHECK(g.levels() == std::vector<int>{0, 1});
  CHECK(g.t_h() == 1);
  CHECK_THROWS_AS(Flag(2, {{0, col({1, 0})}, {1, col({0, 1})}}), InvariantViolation);
  CHECK_THROWS_AS(Flag(2, {{0, m({{1, 2}, {1, 2}})}}), InvariantViolation);
}

TEST_CASE("module invariants are enforced") {
  CHECK_THROWS_AS(FilPhiNModule(P, m({{1, 0}, {0, 0}}), QMatrix(2, 2), Flag::concentrated(2, 0)), InvariantViolation);
  CHECK_THROWS_AS(FilPhiNModule(P, QMatrix::identity(2), m({{1, 0}, {0, 0}}), Flag::concentrated(2, 0)),
                  InvariantViolation);
  // N φ = p φ N fails for φ = Id and N ≠ 0.
  CHECK_THROWS_AS(FilPhiNModule(P, QMatrix::identity(2), m({{0, 1}, {0, 0}}), Flag::concentrated(2, 0)),
                  InvariantViolation);
  CHECK_THROWS_AS(FilPhiNModule(4, QMatrix::identity(1), QMatrix(1, 1), Flag::concentrated(1, 0)), ParameterError);
}

TEST_CASE("t_N and t_H examples") {
  const FilPhiNModule b20 = standard_block(P, 2, 0);
  CHECK(b20.phi() == m({{1, 0}, {0, P}}));
  CHECK(b20.n() == m({{0, 1}, {0, 0}}));
  CHECK(t_n(b20) == 1);
  CHECK(t_h(b20) == 1);
  CHECK(t_n(unit_object(P)) == 0);
  CHECK(t_h(unit_object(P)) == 0);
  const FilPhiNModule b2m1 = standard_block(P, 2, -1);
  CHECK(b2m1.phi() == m({{P, 0}, {0, P * P}}));
  CHECK(t_n(b2m1) == 3);
  CHECK(t_h(b2m1) == 3);
  CHECK(b2m1.fil().levels() == std::vector<int>{1, 2});
}

TEST_CASE("hat filtration, Griffiths, naivety") {
  const FilPhiNModule d = modified_d2();
  const Flag hat = hat_filtration(d);
  CHECK(hat.at(2).cols() == 0);
  CHECK(hat.at(1) == col({0, 1}));
  CHECK(hat.at(0) == full_space(2));
  CHECK_FALSE(griffiths_check(d));
  CHECK_FALSE(is_naive(d));
  CHECK(t_h(d) == 2);
  CHECK(t_h(crystalline_companion(d)) == 1);

  for (int i = 1; i <= 4; ++i)
    for (int j = -2; j <= 2; ++j) {
      const FilPhiNModule b = standard_block(P, i, j);
      CHECK(griffiths_check(b));
      CHECK(is_naive(b));
      CHECK(hat_filtration(b) == b.fil());
    }
  const FilPhiNModule flat(P, m({{1, 0}, {0, P}}), QMatrix(2, 2), Flag(2, {{1, col({1, 1})}}));
  CHECK(hat_filtration(flat) == flat.fil());
  CHECK(griffiths_check(flat));
  CHECK(crystalline_companion(flat) == flat);
}

TEST_CASE("admissibility examples") {
  auto v = is_admissible(standard_block(P, 2, 0));
  CHECK(v.status == AdmissibilityStatus::Admissible);
  CHECK(v.exhaustive);

  const FilPhiNModule bad = tate_d2({{0, full_space(2)}, {1, col({1, 0})}});
  v = is_admissible(bad);
  CHECK(v.status == AdmissibilityStatus::NotAdmissible);
  REQUIRE(v.witness);
  CHECK(*v.witness == col({1, 0}));
  CHECK(is_stable_subspace(bad, *v.witness));
  CHECK(t_h_on(bad.fil(), *v.witness) > t_n_on(bad, *v.witness));

  CHECK(is_admissible(unit_object(P)).status == AdmissibilityStatus::Admissible);

  const FilPhiNModule irrational(P, m({{0, 2}, {1, 0}}), QMatrix(2, 2), Flag::concentrated(2, 0));
  CHECK_THROWS_AS(is_admissible(irrational), UnsupportedEigenstructure);

  // Scalar φ: infinitely many stable lines, so the verdict is honest about it.
  const FilPhiNModule scalar(P, QMatrix::identity(2) * mpq_class(P), QMatrix(2, 2), Flag::concentrated(2, 1));
  v = is_admissible(scalar);
  CHECK(v.status == AdmissibilityStatus::VerifiedOnEnumerated);
  CHECK(v.enumerated_count > 0);
  const FilPhiNModule scalar_bad(P, QMatrix::identity(2) * mpq_class(P), QMatrix(2, 2),
                                 Flag(2, {{0, full_space(2)}, {2, col({1, 2})}}));
  CHECK(t_h(scalar_bad) == 2);
  v = is_admissible(scalar_bad);
  CHECK(v.status == AdmissibilityStatus::NotAdmissible);
  REQUIRE(v.witness);
  CHECK(*v.witness == canonical_span(col({1, 2})));
}

TEST_CASE("constructors") {
  CHECK(twist(unit_object(P), 0) == unit_object(P));
  const FilPhiNModule t = twist(standard_block(P, 2, 0), -1);
  CHECK(t.phi() == m({{P, 0}, {0, P * P}}));
  CHECK(t.fil().levels() == std::vector<int>{1, 2});
  CHECK(t == standard_block(P, 2, -1));
  CHECK(standard_block(P, 1, 0) == unit_object(P));

  const FilPhiNModule s = sym_power(standard_block(P, 2, 0), 2);
  CHECK(s.dim() == 3);
  CHECK(isomorphic(s, standard_block(P, 3, 0)).has_value());
  CHECK(isomorphic(sym_power(standard_block(P, 2, 0), 3), standard_block(P, 4, 0)).has_value());
  CHECK(sym_power(standard_block(P, 2, 1), 1) == standard_block(P, 2, 1));

  const FilPhiNModule a = standard_block(P, 2, 0);
  const FilPhiNModule b = standard_block(P, 2, -1);
  const FilPhiNModule ab = tensor(a, b);
  CHECK(t_n(ab) == 2 * t_n(a) + 2 * t_n(b));
  CHECK(t_h(ab) == 2 * t_h(a) + 2 * t_h(b));
  const FilPhiNModule sum = direct_sum(a, b);
  CHECK(t_n(sum) == t_n(a) + t_n(b));
  CHECK(t_h(sum) == t_h(a) + t_h(b));
  // Clebsch-Gordan: V_2 ⊗ V_2 ≅ V_3 ⊕ V_1(1).
  CHECK(isomorphic(tensor(a, a), direct_sum(standard_block(P, 3, 0), standard_block(P, 1, -1))).has_value());
}

TEST_CASE("isomorphic") {
  const FilPhiNModule a = standard_block(P, 3, 1);
  const auto u = isomorphic(a, a);
  REQUIRE(u);
  CHECK(sgn(determinant(*u)) != 0);
  CHECK_FALSE(isomorphic(standard_block(P, 1, 0), standard_block(P, 1, 1)).has_value());
  std::mt19937_64 rng(51);
  const QMatrix basis = testsupport::random_invertible(rng, 3);
  const auto v = isomorphic(a, change_basis(a, basis));
  REQUIRE(v);
  const FilPhiNModule b = change_basis(a, basis);
  CHECK(*v * a.phi() == b.phi() * *v);
  CHECK(*v * a.n() == b.n() * *v);
  // Same (φ, N), different flag.
  CHECK_FALSE(isomorphic(standard_block(P, 2, 0), tate_d2({{0, full_space(2)}, {1, col({1, 0})}})).has_value());
}

TEST_CASE("decompose_standard examples") {
  CHECK(same_multiset(decompose_standard(direct_sum(standard_block(P, 2, 0), standard_block(P, 1, -1))),
                      {{2, 0, 1}, {1, -1, 1}}));
  CHECK(same_multiset(decompose_standard(unit_object(P)), {{1, 0, 1}}));
  const auto generic = decompose_standard(tate_d2({{0, full_space(2)}, {1, col({1, 1})}}));
  CHECK(std::holds_alternative<DecompositionFailure>(generic));
  CHECK(same_multiset(decompose_standard(direct_sum_of_blocks(P, {{2, 1, 2}, {3, -1, 1}})), {{2, 1, 2}, {3, -1, 1}}));
  const FilPhiNModule non_diag(P, m({{1, 1}, {0, 1}}), QMatrix(2, 2), Flag::concentrated(2, 0));
  CHECK(std::holds_alternative<DecompositionFailure>(decompose_standard(non_diag)));
}

TEST_CASE("random module properties") {
  std::mt19937_64 rng(52);
  int naive = 0;
  for (int t = 0; t < 120; ++t) {
    const FilPhiNModule d = testsupport::random_module(rng, P);
    const Flag hat = hat_filtration(d);
    const FilPhiNModule dh(P, d.phi(), d.n(), hat);
    CHECK(griffiths_check(dh));
    CHECK(hat_filtration(dh) == hat);
    for (int i = -5; i <= 5; ++i) CHECK(is_subspace(hat.at(i), d.fil().at(i)));
    CHECK(griffiths_check(d) == is_naive(d));
    naive += is_naive(d);

    // Nφ = pφN survives every constructor (the constructors would throw otherwise).
    const FilPhiNModule e = testsupport::random_module(rng, P, {2, -1, 1});
    const FilPhiNModule de = tensor(d, e);
    CHECK(t_n(de) == e.dim() * t_n(d) + d.dim() * t_n(e));
    CHECK(t_h(de) == e.dim() * t_h(d) + d.dim() * t_h(e));
    const FilPhiNModule s = direct_sum(d, e);
    CHECK(t_h(s) == t_h(d) + t_h(e));
    CHECK(t_n(s) == t_n(d) + t_n(e));
    const FilPhiNModule tw = twist(d, 2);
    CHECK(t_n(tw) == t_n(d) - 2 * d.dim());
    CHECK(t_h(tw) == t_h(d) - 2 * d.dim());
    if (e.dim() <= 2) CHECK(sym_power(e, 2).dim() == e.dim() * (e.dim() + 1) / 2);
  }
  CHECK(naive > 0);
}
