#include "wachlab/errors.hpp"
#include "wachlab/padic/membership.hpp"
#include "wachlab/wach/wach.hpp"

namespace wachlab::wach {

using namespace padic;

namespace {

Verdict aggregate(const std::vector<VerifyItem>& items) {
  Verdict out = Verdict::Pass;
  for (const auto& it : items) {
    if (it.verdict == Verdict::Fail) return Verdict::Fail;
    if (it.verdict == Verdict::Undecided) out = Verdict::Undecided;
  }
  return out;
}

std::string precision_note(const ResidualPrecision& r) {
  return "residual valuation (p^" + std::to_string(r.p_digits) + ", X^" + std::to_string(r.x_order) + ")";
}

}  // namespace

VerifyResult verify_wach(const WachModule& w, const fpn::FilPhiNModule& d) {
  std::vector<VerifyItem> items;
  if (w.rank() != d.dim()) {
    items.push_back({"rank", Verdict::Fail,
                     "Wach rank " + std::to_string(w.rank()) + " differs from dim " + std::to_string(d.dim())});
    return {items, Verdict::Fail};
  }
  if (w.params().p() != d.p()) {
    items.push_back({"prime", Verdict::Fail, "different primes"});
    return {items, Verdict::Fail};
  }
  const WachReport rep = check_relations(w);
  for (const auto& r : rep.relations)
    items.push_back({"relation_" + std::string(r.name == "phi-tau" ? "phi_tau" : r.name == "gamma-phi" ? "gamma_phi" : "gamma_tau"), r.holds ? Verdict::Pass : Verdict::Fail, precision_note(r.residual)});
  items.push_back({"tau_trivial_mod_x", rep.tau_trivial_mod_x ? Verdict::Pass : Verdict::Fail, ""});
  items.push_back({"gamma_trivial_mod_x", rep.gamma_trivial_mod_x ? Verdict::Pass : Verdict::Fail, ""});

  const long tn = fpn::t_n(d);
  const Positivity& pos = rep.positivity;
  if (pos.verdict == Verdict::Pass) {
    const bool ok = *pos.s == tn;
    items.push_back({"positivity", ok ? Verdict::Pass : Verdict::Fail,
                     "s = " + std::to_string(*pos.s) + ", t_N(D) = " + std::to_string(tn)});
  } else if (pos.verdict == Verdict::Fail) {
    items.push_back({"positivity", Verdict::Fail, pos.detail});
  } else if (tn < w.params().prec()) {
    items.push_back({"positivity", Verdict::Fail,
                     pos.detail + " but t_N(D) = " + std::to_string(tn) + " < Np"});
  } else {
    items.push_back({"positivity", Verdict::Undecided, pos.detail + "; t_N(D) = " + std::to_string(tn)});
  }

  bool reducible = false;
  try {
    const Monodromy m = monodromy(w);
    const bool nil = m.nilpotence_mod_x.has_value();
    items.push_back({"monodromy_nilpotent", nil ? Verdict::Pass : Verdict::Fail,
                     "attained precision p^" + std::to_string(m.p_digits) + ", X^" + std::to_string(m.x_order)});
    reducible = nil;
  } catch (const NotUnipotent& e) {
    items.push_back({"monodromy_nilpotent", Verdict::Fail, e.what()});
  } catch (const PrecisionError& e) {
    items.push_back({"monodromy_nilpotent", Verdict::Undecided, e.what()});
  }
  if (reducible) {
    const ExpCheck ex = exp_check(w);
    items.push_back({"tau_exp_xn", ex.holds ? Verdict::Pass : Verdict::Fail,
                     ex.detail + " at p^" + std::to_string(ex.p_digits)});
    try {
      const fpn::FilPhiNModule reduced = reduce_mod_X(w);
      const bool iso = isomorphic(reduced, d).has_value();
      items.push_back({"reduction_isomorphic", iso ? Verdict::Pass : Verdict::Fail,
                       "t_H(N/XN) = " + std::to_string(fpn::t_h(reduced)) + ", t_N(N/XN) = " +
                           std::to_string(fpn::t_n(reduced))});
    } catch (const PrecisionError& e) {
      items.push_back({"reduction_isomorphic", Verdict::Undecided, e.what()});
    } catch (const UnsupportedEigenstructure& e) {
      items.push_back({"reduction_isomorphic", Verdict::Undecided, e.what()});
    } catch (const InvariantViolation& e) {
      items.push_back({"reduction_isomorphic", Verdict::Fail, e.what()});
    }
  }
  items.push_back({"lattice_comparison", Verdict::NotChecked, "X^r D+ inside N is decided only by wach-envelope"});
  items.push_back({"uniqueness", Verdict::NotChecked, "uniqueness of N is not certified"});
  return {items, aggregate(items)};
}

}  // namespace wachlab::wach
