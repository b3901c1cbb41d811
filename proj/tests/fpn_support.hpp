#pragma once

// Random filtered (φ, N)-modules for property tests.

#include <random>

#include "wachlab/fpn/module.hpp"
#include "wachlab/rational/subspace.hpp"

namespace testsupport {

using wachlab::fpn::FilPhiNModule;
using wachlab::fpn::Flag;
using wachlab::rational::QMatrix;

struct RandomModuleOptions {
  int max_dim = 4;
  int min_level = -3;
  int max_level = 3;
};

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline QMatrix random_invertible(std::mt19937_64& rng, int dim) {
  while (true) {
    QMatrix u(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) u(i, j) = uniform(rng, -2, 2);
    if (sgn(wachlab::rational::determinant(u)) != 0) return u;
  }
}

inline Flag random_flag(std::mt19937_64& rng, int dim, int lo, int hi) {
  const int nsteps = uniform(rng, 1, std::min(3, hi - lo + 1));
  std::vector<int> levels;
  while (static_cast<int>(levels.size()) < nsteps) {
    const int l = uniform(rng, lo, hi);
    if (std::find(levels.begin(), levels.end(), l) == levels.end()) levels.push_back(l);
  }
  std::sort(levels.begin(), levels.end());
  const QMatrix basis = random_invertible(rng, dim);
  std::vector<Flag::Step> steps;
  int k = dim;
  for (std::size_t a = 0; a < levels.size(); ++a) {
    if (a > 0) k = uniform(rng, 0, k);
    if (a == 0 && uniform(rng, 0, 1) == 0) k = uniform(rng, 1, dim);
    steps.push_back({levels[a], basis.columns(0, k)});
  }
  return Flag(dim, std::move(steps));
}

/// N-strings with φ eigenvalues unit * p^e, conjugated by a random integer
/// basis change; filtration random, sometimes replaced by its hat
/// filtration and sometimes shifted so that t_H = t_N.
inline FilPhiNModule random_module(std::mt19937_64& rng, int p, const RandomModuleOptions& opt = {}) {
  const int dim = uniform(rng, 1, opt.max_dim);
  const bool distinct_units = uniform(rng, 0, 4) != 0;
  const int units[] = {1, 2, -1, 5, -2, 7, 4, -5};
  QMatrix phi(dim, dim);
  QMatrix n(dim, dim);
  int pos = 0;
  int string_index = 0;
  while (pos < dim) {
    const int len = uniform(rng, 1, dim - pos);
    const int unit = distinct_units ? units[string_index] : units[uniform(rng, 0, 1)];
    const int base = uniform(rng, -1, 1);
    for (int k = 0; k < len; ++k) {
      mpq_class e = unit;
      const int exp = base + k;
      for (int t = 0; t < std::abs(exp); ++t) e = exp > 0 ? mpq_class(e * p) : mpq_class(e / p);
      phi(pos + k, pos + k) = e;
      if (k > 0) n(pos + k - 1, pos + k) = uniform(rng, 1, 3);
    }
    pos += len;
    ++string_index;
  }
  const QMatrix u = random_invertible(rng, dim);
  Flag fil = random_flag(rng, dim, opt.min_level, opt.max_level);
  FilPhiNModule d = wachlab::fpn::change_basis(FilPhiNModule(p, phi, n, fil), u);
  if (uniform(rng, 0, 2) == 0) d = FilPhiNModule(p, d.phi(), d.n(), wachlab::fpn::hat_filtration(d));
  if (uniform(rng, 0, 1) == 0) {
    const long delta = wachlab::fpn::t_n(d) - wachlab::fpn::t_h(d);
    if (delta % dim == 0) {
      const int shift = static_cast<int>(delta / dim);
      bool in_range = true;
      for (int l : d.fil().levels()) in_range = in_range && l + shift >= opt.min_level && l + shift <= opt.max_level;
      if (in_range) {
        std::vector<Flag::Step> steps;
        for (const auto& s : d.fil().steps()) steps.push_back({s.level + shift, s.span});
        d = FilPhiNModule(p, d.phi(), d.n(), Flag(dim, std::move(steps)));
      }
    }
  }
  return d;
}

}  // namespace testsupport
