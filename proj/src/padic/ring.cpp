#include "wachlab/padic/ring.hpp"

#include <sstream>

#include "wachlab/errors.hpp"

namespace wachlab::padic {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_same(const RingParams& a, const RingParams& b, const char* op) {
  if (!(a == b)) throw ParameterError(std::string(op) + ": operands live in different rings");
}

}  // namespace

RingParams::RingParams(int p, int prec, int order) : p_(p), prec_(prec), order_(order) {
  if (p < 3 || !is_prime(p)) throw ParameterError("p must be an odd prime, got " + std::to_string(p));
  if (prec < 1) throw ParameterError("p-adic precision must be >= 1");
  if (order < 2) throw ParameterError("X-adic order must be >= 2");
  Residue m = 1;
  for (int i = 0; i < prec; ++i) {
    m *= static_cast<Residue>(p);
    if (m >= (Residue{1} << 31)) throw ParameterError("p^prec must stay below 2^31");
  }
  modulus_ = m;
}

int valuation(Residue r, const RingParams& params) {
  if (r == 0) return params.prec();
  int v = 0;
  const auto p = static_cast<Residue>(params.p());
  while (r % p == 0) {
    r /= p;
    ++v;
  }
  return v;
}

Residue inverse_unit(Residue r, const RingParams& params) {
  const auto m = static_cast<long long>(params.modulus());
  long long a = static_cast<long long>(r % params.modulus()), b = m, x0 = 1, x1 = 0;
  while (b != 0) {
    long long t = a / b;
    a -= t * b;
    std::swap(a, b);
    x0 -= t * x1;
    std::swap(x0, x1);
  }
  if (a != 1) throw NotAUnit("residue " + std::to_string(r) + " is not a unit mod p^" +
                             std::to_string(params.prec()));
  x0 %= m;
  if (x0 < 0) x0 += m;
  return static_cast<Residue>(x0);
}

Residue reduce(const mpz_class& value, const RingParams& params) {
  mpz_class m = static_cast<unsigned long>(params.modulus());
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), m.get_mpz_t());
  return static_cast<Residue>(r.get_ui());
}

Residue reduce(long long value, const RingParams& params) {
  const auto m = static_cast<long long>(params.modulus());
  long long r = value % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

long long symmetric_lift(Residue r, int p, int digits) {
  long long m = 1;
  for (int i = 0; i < digits; ++i) m *= p;
  auto v = static_cast<long long>(r % static_cast<Residue>(m));
  if (2 * v > m) v -= m;
  return v;
}

TruncSeries::TruncSeries(const RingParams& params)
    : params_(params), coeffs_(static_cast<std::size_t>(params.order()), 0) {}

TruncSeries::TruncSeries(const RingParams& params, std::vector<Residue> coeffs)
    : params_(params), coeffs_(std::move(coeffs)) {
  coeffs_.resize(static_cast<std::size_t>(params.order()), 0);
  for (auto& c : coeffs_) c %= params.modulus();
}

TruncSeries TruncSeries::constant(const RingParams& params, long long c) {
  TruncSeries s(params);
  s.coeffs_[0] = reduce(c, params);
  return s;
}

TruncSeries TruncSeries::constant(const RingParams& params, const mpz_class& c) {
  TruncSeries s(params);
  s.coeffs_[0] = reduce(c, params);
  return s;
}

TruncSeries TruncSeries::x_power(const RingParams& params, int k) {
  TruncSeries s(params);
  if (k >= 0 && k < params.order()) s.coeffs_[static_cast<std::size_t>(k)] = 1;
  return s;
}

TruncSeries TruncSeries::from_integers(const RingParams& params,
                                       const std::vector<long long>& coeffs) {
  TruncSeries s(params);
  for (std::size_t k = 0; k < coeffs.size() && k < s.coeffs_.size(); ++k)
    s.coeffs_[k] = reduce(coeffs[k], params);
  return s;
}

bool TruncSeries::is_zero() const {
  for (auto c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool TruncSeries::is_unit() const { return coeffs_[0] % static_cast<Residue>(params_.p()) != 0; }

TruncSeries& TruncSeries::operator+=(const TruncSeries& other) {
  require_same(params_, other.params_, "add");
  const Residue m = params_.modulus();
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    coeffs_[k] = kernels::addmod(coeffs_[k], other.coeffs_[k], m);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& other) {
  require_same(params_, other.params_, "sub");
  const Residue m = params_.modulus();
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    coeffs_[k] = kernels::submod(coeffs_[k], other.coeffs_[k], m);
  return *this;
}

TruncSeries& TruncSeries::operator*=(const TruncSeries& other) {
  *this = *this * other;
  return *this;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries out(params_);
  const Residue m = params_.modulus();
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] = kernels::submod(0, coeffs_[k], m);
  return out;
}

TruncSeries TruncSeries::scaled(Residue c) const {
  TruncSeries out(params_);
  const Residue m = params_.modulus();
  c %= m;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] = kernels::mulmod(coeffs_[k], c, m);
  return out;
}

TruncSeries TruncSeries::shifted_up(int k) const {
  TruncSeries out(params_);
  const int n = params_.order();
  for (int i = 0; i + k < n; ++i)
    if (i + k >= 0) out.coeffs_[static_cast<std::size_t>(i + k)] = coeffs_[static_cast<std::size_t>(i)];
  return out;
}

TruncSeries TruncSeries::divided_by_p_power(int k) const {
  if (k == 0) return *this;
  Residue pk = 1;
  for (int i = 0; i < k; ++i) pk *= static_cast<Residue>(params_.p());
  TruncSeries out(params_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] % pk != 0)
      throw PrecisionError("coefficient " + std::to_string(coeffs_[i]) + " not divisible by p^" +
                           std::to_string(k));
    out.coeffs_[i] = coeffs_[i] / pk;
  }
  return out;
}

TruncSeries TruncSeries::reduced_to(int digits) const {
  if (digits >= params_.prec()) return *this;
  Residue m = 1;
  for (int i = 0; i < digits; ++i) m *= static_cast<Residue>(params_.p());
  TruncSeries out(params_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] % m;
  return out;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  require_same(a.params_, b.params_, "mul");
  TruncSeries out(a.params_);
  kernels::omp::series_mul(a.data(), b.data(), out.data(), a.params_.order(), a.params_.modulus());
  return out;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  return a.params_ == b.params_ && a.coeffs_ == b.coeffs_;
}

std::string TruncSeries::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) os << ", ";
    os << coeffs_[k];
  }
  os << ']';
  return os.str();
}

TruncSeries add(const TruncSeries& a, const TruncSeries& b) { return a + b; }
TruncSeries sub(const TruncSeries& a, const TruncSeries& b) { return a - b; }
TruncSeries mul(const TruncSeries& a, const TruncSeries& b) { return a * b; }

TruncSeries invert(const TruncSeries& a) {
  const RingParams& params = a.params();
  if (!a.is_unit()) throw NotAUnit("constant term " + std::to_string(a[0]) + " is divisible by p");
  const Residue m = params.modulus();
  const Residue inv0 = inverse_unit(a[0], params);
  std::vector<Residue> b(static_cast<std::size_t>(params.order()), 0);
  b[0] = inv0;
  // b_k = -a_0^{-1} * sum_{i=1..k} a_i b_{k-i}
  for (int k = 1; k < params.order(); ++k) {
    unsigned __int128 acc = 0;
    for (int i = 1; i <= k; ++i) acc += a[i] * b[static_cast<std::size_t>(k - i)];
    const auto s = static_cast<Residue>(acc % m);
    b[static_cast<std::size_t>(k)] = kernels::mulmod(kernels::submod(0, s, m), inv0, m);
  }
  return TruncSeries(params, std::move(b));
}

TruncSeries phi_of_x(const RingParams& params) {
  return gamma_of_x(params, mpz_class(params.p()));
}

TruncSeries q_series(const RingParams& params) {
  // ((1+X)^p - 1)/X = sum_{k=0}^{p-1} C(p, k+1) X^k
  TruncSeries q(params);
  mpz_class c;
  for (int k = 0; k < params.order() && k < params.p(); ++k) {
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(params.p()), static_cast<unsigned long>(k + 1));
    q.data()[k] = reduce(c, params);
  }
  return q;
}

TruncSeries gamma_of_x(const RingParams& params, const mpz_class& exponent) {
  TruncSeries g(params);
  mpz_class c;
  for (int k = 1; k < params.order(); ++k) {
    mpz_bin_ui(c.get_mpz_t(), exponent.get_mpz_t(), static_cast<unsigned long>(k));
    g.data()[k] = reduce(c, params);
  }
  return g;
}

TruncSeries subst_phi(const TruncSeries& a) {
  const RingParams& params = a.params();
  const TruncSeries inner = phi_of_x(params);
  TruncSeries out(params);
  kernels::omp::compose(a.data(), inner.data(), out.data(), params.order(), params.modulus());
  return out;
}

TruncSeries subst_gamma(const TruncSeries& a, const mpz_class& exponent) {
  const RingParams& params = a.params();
  mpz_class r;
  mpz_class p = params.p();
  mpz_fdiv_r(r.get_mpz_t(), exponent.get_mpz_t(), p.get_mpz_t());
  if (r == 0)
    throw InvalidCharacterValue("character value " + exponent.get_str() + " is divisible by p");
  const TruncSeries inner = gamma_of_x(params, exponent);
  TruncSeries out(params);
  kernels::omp::compose(a.data(), inner.data(), out.data(), params.order(), params.modulus());
  return out;
}

std::optional<int> x_valuation(const TruncSeries& a) {
  for (int k = 0; k < a.params().order(); ++k)
    if (a[k] != 0) return k;
  return std::nullopt;
}

int p_valuation(const TruncSeries& a) {
  int v = a.params().prec();
  for (auto c : a.coeffs()) v = std::min(v, valuation(c, a.params()));
  return v;
}

bool equal_mod(const TruncSeries& a, const TruncSeries& b, int p_digits, int x_order) {
  if (!(a.params() == b.params())) return false;
  Residue m = 1;
  for (int i = 0; i < std::min(p_digits, a.params().prec()); ++i) m *= static_cast<Residue>(a.params().p());
  const int n = std::min(x_order, a.params().order());
  for (int k = 0; k < n; ++k)
    if (a[k] % m != b[k] % m) return false;
  return true;
}

}  // namespace wachlab::padic
