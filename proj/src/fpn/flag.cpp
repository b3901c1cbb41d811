#include "wachlab/fpn/flag.hpp"

#include <algorithm>

#include "wachlab/errors.hpp"
#include "wachlab/rational/subspace.hpp"

namespace wachlab::fpn {

using namespace rational;

Flag::Flag(int dim, std::vector<Step> steps) : dim_(dim) {
  if (dim < 0) throw ParameterError("negative flag dimension");
  std::stable_sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) { return a.level < b.level; });
  for (std::size_t a = 1; a < steps.size(); ++a)
    if (steps[a].level == steps[a - 1].level)
      throw InvariantViolation("flag levels distinct", "level " + std::to_string(steps[a].level) + " listed twice");

  // A proper first step means everything below it is the whole space.
  if (!steps.empty() && steps.front().span.rows() == dim && rank(steps.front().span) < dim)
    steps.insert(steps.begin(), Step{steps.front().level - 1, full_space(dim)});

  std::vector<Step> norm;
  bool seen_zero = false;
  for (auto& s : steps) {
    if (s.span.rows() != dim)
      throw InvariantViolation("flag dimension", "span at level " + std::to_string(s.level) + " has " +
                                                     std::to_string(s.span.rows()) + " rows, expected " +
                                                     std::to_string(dim));
    if (rank(s.span) != s.span.cols())
      throw InvariantViolation("flag basis full rank",
                               "basis at level " + std::to_string(s.level) + " is linearly dependent");
    QMatrix span = canonical_span(s.span);
    if ((seen_zero && span.cols() > 0) || (!norm.empty() && !is_subspace(span, norm.back().span)))
      throw InvariantViolation("filtration decreasing",
                               "Fil^" + std::to_string(s.level) + " is not contained in the step below it");
    if (span.cols() == 0) {
      seen_zero = true;
      continue;
    }
    if (!norm.empty() && norm.back().span == span) norm.pop_back();
    norm.push_back({s.level, std::move(span)});
  }
  steps_ = std::move(norm);
}

Flag Flag::concentrated(int dim, int level) {
  if (dim == 0) return Flag(0, {});
  return Flag(dim, {Step{level, full_space(dim)}});
}

std::vector<int> Flag::levels() const {
  std::vector<int> out;
  for (const auto& s : steps_) out.push_back(s.level);
  return out;
}

QMatrix Flag::at(int m) const {
  for (const auto& s : steps_)
    if (m <= s.level) return s.span;
  return zero_space(dim_);
}

int Flag::graded_dim(int m) const { return dimension(at(m)) - dimension(at(m + 1)); }

long Flag::t_h() const {
  long t = 0;
  for (std::size_t a = 0; a < steps_.size(); ++a) {
    const int next = a + 1 < steps_.size() ? steps_[a + 1].span.cols() : 0;
    t += static_cast<long>(steps_[a].level) * (steps_[a].span.cols() - next);
  }
  return t;
}

Flag induced(const Flag& fil, const QMatrix& sub) {
  std::vector<Flag::Step> steps;
  for (const auto& s : fil.steps()) steps.push_back({s.level, preimage(sub, s.span)});
  std::vector<Flag::Step> kept;
  for (auto& s : steps)
    if (s.span.cols() > 0) kept.push_back(std::move(s));
  return Flag(sub.cols(), std::move(kept));
}

long t_h_on(const Flag& fil, const QMatrix& sub) {
  long t = 0;
  const auto& steps = fil.steps();
  std::vector<int> dims;
  for (const auto& s : steps) dims.push_back(dimension(intersection(s.span, sub)));
  for (std::size_t a = 0; a < steps.size(); ++a) {
    const int next = a + 1 < steps.size() ? dims[a + 1] : 0;
    t += static_cast<long>(steps[a].level) * (dims[a] - next);
  }
  return t;
}

}  // namespace wachlab::fpn
