#include "wachlab/errors.hpp"
#include "wachlab/padic/membership.hpp"
#include "wachlab/wach/wach.hpp"

namespace wachlab::wach {

using namespace padic;

namespace {

std::vector<SeriesVector> with_prec(const std::vector<SeriesVector>& vs, int rows, const RingParams& params,
                                    int digits) {
  if (vs.empty()) return {};
  const SeriesMatrix m = SeriesMatrix::from_columns(params, rows, vs).with_prec(digits);
  std::vector<SeriesVector> out;
  for (int c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

SeriesVector times_x(const SeriesVector& v, int k) {
  SeriesVector out;
  for (const auto& s : v) out.push_back(s.shifted_up(k));
  return out;
}

SeriesVector minus(SeriesVector a, const SeriesVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}

}  // namespace

Envelope naive_envelope(const SeriesMatrix& tau, const std::vector<SeriesVector>& m, int n,
                        const std::optional<SeriesMatrix>& gamma, const std::optional<mpz_class>& chi0) {
  if (n < 0) throw ParameterError("envelope index must be >= 0");
  if (tau.rows() != tau.cols()) throw ParameterError("tau must be square");
  if (gamma && !chi0) throw ParameterError("gamma checks need chi0");
  const int d = tau.rows();
  const int order = tau.params().order();
  if (n > order) throw ParameterError("envelope index exceeds the X-adic truncation");
  for (const auto& v : m)
    if (static_cast<int>(v.size()) != d) throw ParameterError("M generator length differs from ambient rank");

  const auto [log_full, digits] = log_tau(tau);
  const SeriesMatrix log = log_full;
  const RingParams& params = log.params();
  const SeriesMatrix t = tau.with_prec(digits);
  const std::vector<SeriesVector> base = with_prec(m, d, tau.params(), digits);

  std::vector<SeriesVector> gens = base;
  SeriesMatrix lpow = SeriesMatrix::identity(params, d);
  std::vector<SeriesVector> top = base;  // (log τ)^{-n}(M)
  for (int i = 1; i <= n; ++i) {
    lpow = lpow * log;
    top = preimage(lpow, base);
    for (const auto& g : top) gens.push_back(times_x(g, i));
  }
  Envelope env;
  env.p_digits = digits;
  env.generators = minimal_generators(gens, d, params);
  env.independent = independent_up_to_truncation(env.generators, d, params);

  std::vector<SeriesVector> x_out;
  for (const auto& g : env.generators) x_out.push_back(times_x(g, 1));
  env.tau_trivial = true;
  for (const auto& g : env.generators)
    env.tau_trivial = env.tau_trivial && in_span(x_out, minus(t * g, g), d, params);

  if (gamma) {
    const SeriesMatrix gm = gamma->with_prec(digits);
    env.gamma_stable = true;
    env.gamma_trivial_mod_x = true;
    for (const auto& g : env.generators) {
      const SeriesVector image = gm * subst_gamma(g, *chi0);
      env.gamma_stable = *env.gamma_stable && in_span(env.generators, image, d, params);
      env.gamma_trivial_mod_x = *env.gamma_trivial_mod_x && in_span(x_out, minus(image, g), d, params);
    }
  }

  for (int r = 0; r <= order; ++r) {
    bool inside = true;
    for (const auto& g : top) inside = inside && in_span(env.generators, times_x(g, r), d, params);
    if (inside) {
      env.r = r;
      break;
    }
  }
  return env;
}

}  // namespace wachlab::wach
