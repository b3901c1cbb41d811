#include "wachlab/rational/poly.hpp"

#include <algorithm>

#include "wachlab/errors.hpp"

namespace wachlab::rational {

namespace {

mpz_class floor_of(const mpq_class& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f;
}

std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> chain{f, f.derivative()};
  while (!chain.back().is_zero()) {
    QPoly r = divmod(chain[chain.size() - 2], chain.back()).remainder;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sign_changes(const std::vector<QPoly>& chain, const mpq_class& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

struct Isolator {
  const QPoly& f;
  const std::vector<QPoly>& chain;
  mpq_class tolerance;
  std::vector<mpq_class> found;
  bool irrational = false;

  // Roots in (a, b]; count = V(a) - V(b).
  void run(const mpq_class& a, const mpq_class& b, int va, int vb) {
    const int count = va - vb;
    if (count <= 0) return;
    if (count == 1 && sgn(f(b)) == 0) {
      found.push_back(b);
      return;
    }
    if (count == 1 && b - a < tolerance) {
      const mpq_class r = simplest_between(a, b);
      if (sgn(f(r)) == 0) found.push_back(r);
      else irrational = true;
      return;
    }
    const mpq_class mid = (a + b) / 2;
    const int vm = sign_changes(chain, mid);
    run(a, mid, va, vm);
    run(mid, b, vm, vb);
  }
};

}  // namespace

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

mpq_class QPoly::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

QPoly QPoly::derivative() const {
  std::vector<mpq_class> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (c_.empty()) return *this;
  std::vector<mpq_class> m = c_;
  const mpq_class l = lead();
  for (auto& x : m) x /= l;
  return QPoly(std::move(m));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a) {
  std::vector<mpq_class> c = a.c_;
  for (auto& x : c) x = -x;
  return QPoly(std::move(c));
}

DivMod divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw ParameterError("polynomial division by zero");
  std::vector<mpq_class> r = a.coeffs();
  const int db = b.degree();
  std::vector<mpq_class> q(static_cast<std::size_t>(std::max(0, a.degree() - db + 1)));
  for (int k = a.degree(); k >= db; --k) {
    const mpq_class f = r[static_cast<std::size_t>(k)] / b.lead();
    if (sgn(f) == 0) continue;
    q[static_cast<std::size_t>(k - db)] = f;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(k - db + i)] -= f * b.coeffs()[static_cast<std::size_t>(i)];
  }
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

QPoly charpoly(const QMatrix& a) {
  if (a.rows() != a.cols()) throw ParameterError("charpoly of a non-square matrix");
  const int n = a.rows();
  std::vector<mpq_class> c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = 1;
  QMatrix m(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m;
    for (int i = 0; i < n; ++i) m(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    const QMatrix am = a * m;
    mpq_class tr = 0;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<std::size_t>(n - k)] = -tr / k;
  }
  return QPoly(std::move(c));
}

mpq_class simplest_between(const mpq_class& lo, const mpq_class& hi) {
  if (!(lo < hi)) throw ParameterError("simplest_between: empty interval");
  const mpz_class fl = floor_of(lo);
  const mpq_class next(fl + 1);
  if (next < hi) {
    // An integer lies inside; take the one closest to zero.
    if (sgn(lo) < 0 && sgn(hi) > 0) return 0;
    if (sgn(hi) <= 0) {
      mpq_class top(floor_of(hi));
      if (top == hi) top -= 1;
      return top;
    }
    return next;
  }
  // lo and hi share the integer part fl (hi may equal fl + 1).
  const mpq_class lo_frac = lo - fl;
  const mpq_class hi_frac = hi - fl;
  if (sgn(lo_frac) == 0) {
    // x = fl + 1/y with y > 1/hi_frac.
    const mpq_class bound = 1 / hi_frac;
    return mpq_class(fl) + 1 / mpq_class(floor_of(bound) + 1);
  }
  const mpq_class y = simplest_between(1 / hi_frac, 1 / lo_frac);
  return mpq_class(fl) + 1 / y;
}

std::vector<RationalRoot> rational_roots(const QPoly& f, bool* splits) {
  if (f.is_zero()) throw ParameterError("roots of the zero polynomial");
  std::vector<RationalRoot> out;
  if (f.degree() == 0) {
    if (splits) *splits = true;
    return out;
  }
  const QPoly sf = divmod(f, gcd(f, f.derivative())).quotient.monic();

  // Primitive integer model: denominators of rational roots divide its lead.
  mpz_class lcm_den = 1;
  for (const auto& c : sf.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  mpq_class bound = 0;
  for (const auto& c : sf.coeffs()) bound = std::max(bound, mpq_class(abs(c)));
  bound += 1;
  const mpq_class tolerance = 1 / mpq_class(lcm_den * lcm_den);

  const auto chain = sturm_chain(sf);
  Isolator iso{sf, chain, tolerance, {}, false};
  const mpq_class lo = -bound;
  iso.run(lo, bound, sign_changes(chain, lo), sign_changes(chain, bound));
  std::sort(iso.found.begin(), iso.found.end());

  int total = 0;
  for (const auto& r : iso.found) {
    const QPoly linear({-r, mpq_class(1)});
    QPoly rest = f;
    int mult = 0;
    while (true) {
      DivMod dm = divmod(rest, linear);
      if (!dm.remainder.is_zero()) break;
      rest = std::move(dm.quotient);
      ++mult;
    }
    out.push_back({r, mult});
    total += mult;
  }
  if (splits) *splits = !iso.irrational && total == f.degree();
  return out;
}

}  // namespace wachlab::rational
