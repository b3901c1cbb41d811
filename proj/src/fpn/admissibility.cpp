#include <algorithm>
#include <map>
#include <random>

#include "wachlab/errors.hpp"
#include "wachlab/fpn/module.hpp"
#include "wachlab/rational/poly.hpp"
#include "wachlab/rational/subspace.hpp"

namespace wachlab::fpn {

using namespace rational;

namespace {

struct Eigen {
  mpq_class value;
  int algebraic;
  int geometric;
  QMatrix generalized;  // ker (phi - value)^algebraic
};

std::vector<Eigen> eigenstructure(const FilPhiNModule& d) {
  bool splits = false;
  const auto roots = rational_roots(charpoly(d.phi()), &splits);
  if (!splits) throw UnsupportedEigenstructure("characteristic polynomial of phi does not split over Q");
  std::vector<Eigen> out;
  for (const auto& r : roots) {
    const QMatrix shifted = d.phi() - QMatrix::identity(d.dim()) * r.value;
    out.push_back({r.value, r.multiplicity, nullspace(shifted).cols(),
                   canonical_span(nullspace(power(shifted, r.multiplicity)))});
  }
  return out;
}

// Keeps the subobject with the largest t_H - t_N seen so far.
class Scorer {
 public:
  explicit Scorer(const FilPhiNModule& d) : d_(d) {}

  void offer(const QMatrix& w) {
    const QMatrix c = canonical_span(w);
    if (c.cols() == 0 || c.cols() == d_.dim()) return;
    const std::string key = c.to_string();
    if (!seen_.emplace(key, true).second) return;
    ++count_;
    const long violation = t_h_on(d_.fil(), c) - t_n_on(d_, c);
    if (violation > best_) {
      best_ = violation;
      witness_ = c;
    }
  }

  long count() const { return count_; }
  long best() const { return best_; }
  const std::optional<QMatrix>& witness() const { return witness_; }

 private:
  const FilPhiNModule& d_;
  std::map<std::string, bool> seen_;
  long count_ = 0;
  long best_ = 0;
  std::optional<QMatrix> witness_;
};

// Basis of `sub` adapted to the induced filtration, highest level first.
std::vector<std::pair<int, std::vector<mpq_class>>> adapted_basis(const Flag& fil, const QMatrix& sub) {
  std::vector<std::pair<int, std::vector<mpq_class>>> out;
  QMatrix chosen(fil.dim(), 0);
  const auto& steps = fil.steps();
  for (std::size_t a = steps.size(); a-- > 0;) {
    const QMatrix s = intersection(steps[a].span, sub);
    for (int c = 0; c < s.cols(); ++c) {
      const auto v = s.column(c);
      if (chosen.cols() > 0 && contains(chosen, v)) continue;
      chosen = hstack(chosen, QMatrix::from_columns(fil.dim(), {v}));
      out.emplace_back(steps[a].level, v);
    }
  }
  return out;
}

void enumerate_exhaustive(const FilPhiNModule& d, const std::vector<Eigen>& eig, Scorer& scorer) {
  // φ is cyclic, so its stable subspaces are ⊕_λ ker(φ - λ)^{m_λ}.
  std::vector<std::vector<QMatrix>> levels;
  for (const auto& e : eig) {
    std::vector<QMatrix> chain;
    const QMatrix shifted = d.phi() - QMatrix::identity(d.dim()) * e.value;
    for (int m = 0; m <= e.algebraic; ++m) chain.push_back(canonical_span(nullspace(power(shifted, m))));
    levels.push_back(std::move(chain));
  }
  std::vector<int> pick(levels.size(), 0);
  while (true) {
    QMatrix w(d.dim(), 0);
    for (std::size_t k = 0; k < levels.size(); ++k) w = hstack(w, levels[k][static_cast<std::size_t>(pick[k])]);
    if (is_stable(d.n(), w)) scorer.offer(w);
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == static_cast<int>(levels[pos].size())) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }
}

void enumerate_tiered(const FilPhiNModule& d, const std::vector<Eigen>& eig, std::uint64_t seed, Scorer& scorer) {
  const int dim = d.dim();
  // Structural subobjects.
  std::vector<QMatrix> structural;
  for (int k = 1; k < d.nilpotence_index(); ++k) {
    const QMatrix nk = power(d.n(), k);
    structural.push_back(canonical_span(nullspace(nk)));
    structural.push_back(canonical_span(nk));
  }
  if (eig.size() <= 10) {
    for (unsigned mask = 1; mask < (1u << eig.size()); ++mask) {
      QMatrix w(dim, 0);
      for (std::size_t k = 0; k < eig.size(); ++k)
        if (mask & (1u << k)) w = hstack(w, eig[k].generalized);
      structural.push_back(stable_closure(d, w));
    }
  }
  const std::size_t base = structural.size();
  for (std::size_t a = 0; a < base; ++a)
    for (std::size_t b = a + 1; b < base; ++b) {
      structural.push_back(intersection(structural[a], structural[b]));
      structural.push_back(sum(structural[a], structural[b]));
    }
  for (const auto& w : structural) scorer.offer(w);

  // Scalar blocks: inside ker(φ - λ) ∩ ker N every subspace is a subobject,
  // and the best r-dimensional one takes the r highest filtration vectors.
  std::vector<std::pair<long, std::vector<mpq_class>>> pooled;
  for (const auto& e : eig) {
    const QMatrix eigvecs = nullspace(d.phi() - QMatrix::identity(dim) * e.value);
    const QMatrix scalar = intersection(canonical_span(eigvecs), canonical_span(nullspace(d.n())));
    const long slope = p_valuation(e.value, d.p());
    for (const QMatrix& block : {scalar, canonical_span(eigvecs)}) {
      const auto basis = adapted_basis(d.fil(), block);
      QMatrix w(dim, 0);
      for (const auto& [level, v] : basis) {
        w = hstack(w, QMatrix::from_columns(dim, {v}));
        scorer.offer(stable_closure(d, w));
      }
    }
    for (const auto& [level, v] : adapted_basis(d.fil(), scalar)) pooled.emplace_back(level - slope, v);
  }
  std::stable_sort(pooled.begin(), pooled.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  QMatrix w(dim, 0);
  for (const auto& entry : pooled) {
    w = hstack(w, QMatrix::from_columns(dim, {entry.second}));
    scorer.offer(w);
  }

  // Seeded random stable closures.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int trial = 0; trial < 64; ++trial) {
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::max(1, dim - 1)));
    QMatrix g(dim, r);
    for (int i = 0; i < dim; ++i)
      for (int c = 0; c < r; ++c) g(i, c) = coeff(rng);
    scorer.offer(stable_closure(d, g));
  }
}

}  // namespace

AdmissibilityVerdict is_admissible(const FilPhiNModule& d, std::uint64_t seed) {
  const long th = t_h(d);
  const long tn = t_n(d);
  if (th != tn) {
    return {AdmissibilityStatus::NotAdmissible, full_space(d.dim()), 0, true,
            "t_H(D) = " + std::to_string(th) + " differs from t_N(D) = " + std::to_string(tn)};
  }
  const auto eig = eigenstructure(d);
  const bool cyclic = std::all_of(eig.begin(), eig.end(), [](const Eigen& e) { return e.geometric == 1; });
  Scorer scorer(d);
  if (cyclic) enumerate_exhaustive(d, eig, scorer);
  else enumerate_tiered(d, eig, seed, scorer);

  AdmissibilityVerdict v{AdmissibilityStatus::Admissible, std::nullopt, scorer.count(), cyclic, ""};
  if (scorer.witness()) {
    v.status = AdmissibilityStatus::NotAdmissible;
    v.witness = scorer.witness();
    v.reason = "subobject with t_H - t_N = " + std::to_string(scorer.best());
  } else if (!cyclic) {
    v.status = AdmissibilityStatus::VerifiedOnEnumerated;
    v.reason = "phi is not cyclic; checked " + std::to_string(scorer.count()) + " candidate subobjects";
  }
  return v;
}

}  // namespace wachlab::fpn
