#include "wachlab/fpn/module.hpp"

#include <set>

#include "wachlab/errors.hpp"
#include "wachlab/rational/subspace.hpp"

namespace wachlab::fpn {

using namespace rational;

namespace {

bool odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

FilPhiNModule::FilPhiNModule(int p, QMatrix phi, QMatrix n, Flag fil)
    : p_(p), phi_(std::move(phi)), n_(std::move(n)), fil_(std::move(fil)), nil_index_(0) {
  if (!odd_prime(p)) throw ParameterError("p must be an odd prime, got " + std::to_string(p));
  const int d = phi_.rows();
  if (phi_.cols() != d || n_.rows() != d || n_.cols() != d)
    throw ParameterError("phi and N must both be " + std::to_string(d) + "x" + std::to_string(d));
  if (fil_.dim() != d) throw ParameterError("filtration dimension differs from module dimension");
  if (sgn(determinant(phi_)) == 0) throw InvariantViolation("phi invertible", "det(phi) = 0");
  const auto idx = rational::nilpotence_index(n_);
  if (!idx) throw InvariantViolation("N nilpotent", "N^" + std::to_string(d) + " != 0");
  nil_index_ = *idx;
  if (!(n_ * phi_ == mpq_class(p) * (phi_ * n_)))
    throw InvariantViolation("N phi = p phi N", "the commutation relation fails");
}

long t_n(const FilPhiNModule& d) {
  if (d.dim() == 0) return 0;
  return p_valuation(determinant(d.phi()), d.p());
}

long t_h(const FilPhiNModule& d) { return d.fil().t_h(); }

long t_n_on(const FilPhiNModule& d, const QMatrix& sub) {
  if (sub.cols() == 0) return 0;
  return p_valuation(determinant(restrict_to(d.phi(), sub)), d.p());
}

Flag hat_filtration(const FilPhiNModule& d) {
  const Flag& fil = d.fil();
  if (fil.empty()) return fil;
  const int n = d.nilpotence_index();
  std::vector<QMatrix> npow;
  for (int k = 0; k < n; ++k) npow.push_back(power(d.n(), k));

  std::set<int> candidates{fil.levels().front() - 1};
  for (int level : fil.levels())
    for (int k = 0; k < n; ++k) candidates.insert(level + k);

  std::vector<Flag::Step> steps;
  for (int c : candidates) {
    QMatrix acc = full_space(d.dim());
    for (int k = 0; k < n && acc.cols() > 0; ++k) acc = intersection(acc, preimage(npow[static_cast<std::size_t>(k)], fil.at(c - k)));
    steps.push_back({c, std::move(acc)});
  }
  return Flag(d.dim(), std::move(steps));
}

bool griffiths_check(const FilPhiNModule& d) {
  for (int level : d.fil().levels())
    for (int i : {level + 1, level + 2})
      if (!is_subspace(image(d.n(), d.fil().at(i)), d.fil().at(i - 1))) return false;
  return true;
}

bool is_naive(const FilPhiNModule& d) { return hat_filtration(d) == d.fil(); }

QMatrix stable_closure(const FilPhiNModule& d, const QMatrix& gens) {
  QMatrix w = canonical_span(gens);
  while (true) {
    QMatrix next = canonical_span(hstack(hstack(w, d.phi() * w), d.n() * w));
    if (next.cols() == w.cols()) return next;
    w = std::move(next);
  }
}

bool is_stable_subspace(const FilPhiNModule& d, const QMatrix& sub) {
  return is_stable(d.phi(), sub) && is_stable(d.n(), sub);
}

const char* to_string(AdmissibilityStatus s) {
  switch (s) {
    case AdmissibilityStatus::Admissible: return "Admissible";
    case AdmissibilityStatus::NotAdmissible: return "NotAdmissible";
    case AdmissibilityStatus::VerifiedOnEnumerated: return "VerifiedOnEnumerated";
  }
  return "?";
}

}  // namespace wachlab::fpn
