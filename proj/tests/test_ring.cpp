#include <doctest.h>

#include "support.hpp"
#include "wachlab/errors.hpp"
#include "wachlab/padic/ring.hpp"
#include "wachlab/padic/series_matrix.hpp"

using namespace wachlab;
using namespace wachlab::padic;
using testsupport::random_series;
using testsupport::random_unit;

namespace {

const RingParams kDefault(3, 8, 16);

TruncSeries poly(const RingParams& params, std::vector<long long> c) {
  return TruncSeries::from_integers(params, c);
}

// Binomial expansion of (1+X)^n - 1 with machine integers, independent of GMP.
TruncSeries naive_power_minus_one(const RingParams& params, long long n) {
  std::vector<long long> c(static_cast<std::size_t>(params.order()), 0);
  const auto m = static_cast<long long>(params.modulus());
  std::vector<long long> row{1};
  for (long long i = 1; i <= n; ++i) {
    std::vector<long long> next(row.size() + 1, 0);
    for (std::size_t k = 0; k < next.size(); ++k) {
      long long v = 0;
      if (k < row.size()) v += row[k];
      if (k > 0) v += row[k - 1];
      next[k] = v % m;
    }
    row = std::move(next);
    if (row.size() > c.size()) row.resize(c.size());
  }
  for (std::size_t k = 1; k < row.size() && k < c.size(); ++k) c[k] = row[k];
  return TruncSeries::from_integers(params, c);
}

}  // namespace

TEST_CASE("RingParams validation") {
  CHECK_THROWS_AS(RingParams(2, 4, 4), ParameterError);
  CHECK_THROWS_AS(RingParams(9, 4, 4), ParameterError);
  CHECK_THROWS_AS(RingParams(3, 0, 4), ParameterError);
  CHECK_THROWS_AS(RingParams(3, 4, 1), ParameterError);
  CHECK_THROWS_AS(RingParams(3, 20, 4), ParameterError);
  CHECK(kDefault.modulus() == 6561);
  CHECK(kDefault.guard_precision() == 16);
}

TEST_CASE("ring operations") {
  const RingParams& r = kDefault;
  CHECK(poly(r, {1, 1}) * poly(r, {1, -1}) == poly(r, {1, 0, -1}));
  CHECK((TruncSeries::x_power(r, 15) * TruncSeries::x_power(r, 1)).is_zero());
  const RingParams small(3, 2, 16);
  CHECK(poly(small, {3, 1}) + poly(small, {6, 2}) == poly(small, {0, 3}));
  CHECK_THROWS_AS(poly(r, {1}) + poly(small, {1}), ParameterError);
  CHECK_THROWS_AS(mul(poly(r, {1}), poly(small, {1})), ParameterError);
}

TEST_CASE("invert") {
  const RingParams& r = kDefault;
  std::vector<long long> geometric(16, 1);
  CHECK(invert(poly(r, {1, -1})) == poly(r, geometric));
  CHECK(invert(TruncSeries::one(r)) == TruncSeries::one(r));
  CHECK_THROWS_AS(invert(TruncSeries::x_power(r, 1)), NotAUnit);
  CHECK_THROWS_AS(invert(poly(r, {3, 1})), NotAUnit);

  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const TruncSeries a = random_unit(rng, r);
    const TruncSeries b = invert(a);
    CHECK(a * b == TruncSeries::one(r));
    CHECK(b * a == TruncSeries::one(r));
  }
}

TEST_CASE("subst_phi examples") {
  const RingParams& r = kDefault;
  CHECK(subst_phi(TruncSeries::x_power(r, 1)) == poly(r, {0, 3, 3, 1}));
  CHECK(subst_phi(TruncSeries::one(r)) == TruncSeries::one(r));
  const TruncSeries q = q_series(r);
  CHECK(q[0] == 3);
  CHECK(q * TruncSeries::x_power(r, 1) == phi_of_x(r));
  CHECK(x_valuation(q) == 0);
  CHECK(x_valuation(poly(r, {0, 0, 1, 1})) == 2);
  CHECK_FALSE(x_valuation(TruncSeries::zero(r)).has_value());
}

TEST_CASE("subst_gamma examples") {
  const RingParams& r = kDefault;
  std::mt19937_64 rng(22);
  const TruncSeries a = random_series(rng, r);
  CHECK(subst_gamma(a, mpz_class(1)) == a);
  CHECK(gamma_of_x(r, mpz_class(4))[1] == 4);
  CHECK(gamma_of_x(r, mpz_class(-2))[1] == r.modulus() - 2);
  CHECK_THROWS_AS(subst_gamma(a, mpz_class(6)), InvalidCharacterValue);
  for (long n : {2, 4, 5, 7, 10}) CHECK(gamma_of_x(r, mpz_class(n)) == naive_power_minus_one(r, n));
}

TEST_CASE("substitutions are ring homomorphisms") {
  for (const RingParams& r : {kDefault, RingParams(5, 4, 10), RingParams(3, 3, 7)}) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
      const TruncSeries a = random_series(rng, r);
      const TruncSeries b = random_series(rng, r);
      CHECK(subst_phi(a * b) == subst_phi(a) * subst_phi(b));
      CHECK(subst_phi(a + b) == subst_phi(a) + subst_phi(b));
      const mpz_class chi = 1 + r.p();
      CHECK(subst_gamma(a * b, chi) == subst_gamma(a, chi) * subst_gamma(b, chi));
      CHECK(subst_gamma(a + b, chi) == subst_gamma(a, chi) + subst_gamma(b, chi));
      CHECK(subst_phi(subst_gamma(a, chi)) == subst_gamma(subst_phi(a), chi));
      const mpz_class other = 2;
      CHECK(subst_phi(subst_gamma(a, other)) == subst_gamma(subst_phi(a), other));
    }
  }
}

TEST_CASE("gamma substitutions compose multiplicatively") {
  const RingParams r(3, 3, 6);
  const TruncSeries x = TruncSeries::x_power(r, 1);
  for (long a : {2, 4, 5, 7}) {
    for (long b : {2, 4, 8, -1}) {
      CHECK(subst_gamma(subst_gamma(x, mpz_class(a)), mpz_class(b)) == subst_gamma(x, mpz_class(a * b)));
    }
  }
}

TEST_CASE("character representative changes by p^guard leave substitution unchanged") {
  const RingParams& r = kDefault;
  mpz_class shift;
  mpz_ui_pow_ui(shift.get_mpz_t(), 3, static_cast<unsigned long>(r.guard_precision()));
  std::mt19937_64 rng(24);
  for (int t = 0; t < 10; ++t) {
    const TruncSeries a = random_series(rng, r);
    for (long chi : {4, 2, -5}) {
      CHECK(subst_gamma(a, mpz_class(chi)) == subst_gamma(a, mpz_class(chi) + shift));
      CHECK(subst_gamma(a, mpz_class(chi)) == subst_gamma(a, mpz_class(chi) - 7 * shift));
    }
  }
}

TEST_CASE("valuations and precision helpers") {
  const RingParams& r = kDefault;
  CHECK(p_valuation(poly(r, {9, 27})) == 2);
  CHECK(p_valuation(TruncSeries::zero(r)) == 8);
  CHECK(poly(r, {9, 27}).divided_by_p_power(2) == poly(r, {1, 3}));
  CHECK_THROWS_AS(poly(r, {9, 1}).divided_by_p_power(1), PrecisionError);
  CHECK(equal_mod(poly(r, {1, 2, 5}), poly(r, {10, 2}), 2, 2));
  CHECK_FALSE(equal_mod(poly(r, {1, 2, 5}), poly(r, {10, 2}), 3, 2));
  CHECK(symmetric_lift(6560, 3, 8) == -1);
  CHECK(symmetric_lift(9, 3, 8) == 9);
}

TEST_CASE("matrix helpers") {
  const RingParams& r = kDefault;
  std::mt19937_64 rng(25);
  for (int n = 1; n <= 4; ++n) {
    const SeriesMatrix a = testsupport::random_matrix(rng, r, n, n);
    const SeriesMatrix b = testsupport::random_matrix(rng, r, n, n);
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
    CHECK(subst_phi(a * b) == subst_phi(a) * subst_phi(b));
  }
  SeriesMatrix u = SeriesMatrix::identity(r, 2);
  u.set(0, 1, TruncSeries::x_power(r, 1));
  CHECK(nilpotence_index(u - SeriesMatrix::identity(r, 2), 4) == 2);
  // tau^a for unipotent tau = [[1, X], [0, 1]] is [[1, aX], [0, 1]].
  SeriesMatrix expected = SeriesMatrix::identity(r, 2);
  expected.set(0, 1, poly(r, {0, 4}));
  CHECK(binomial_power(u, mpz_class(4)) == expected);
  CHECK(binomial_power(binomial_power(u, mpz_class(2)), mpz_class(5)) == binomial_power(u, mpz_class(10)));
}
