#include "wachlab/padic/membership.hpp"

#include <algorithm>

#include "wachlab/errors.hpp"

namespace wachlab::padic {

namespace {

bool is_zero_vector(const SeriesVector& v) {
  return std::all_of(v.begin(), v.end(), [](const TruncSeries& s) { return s.is_zero(); });
}

SeriesMatrix as_matrix(const std::vector<SeriesVector>& gens, int rows, const RingParams& params) {
  return SeriesMatrix::from_columns(params, rows, gens);
}

}  // namespace

std::vector<Residue> flatten_unknowns(const SeriesVector& v) {
  if (v.empty()) return {};
  const int order = v.front().params().order();
  const int cols = static_cast<int>(v.size());
  std::vector<Residue> x(static_cast<std::size_t>(order * cols));
  for (int m = 0; m < order; ++m)
    for (int j = 0; j < cols; ++j) x[static_cast<std::size_t>(m * cols + j)] = v[static_cast<std::size_t>(j)][m];
  return x;
}

SeriesVector unflatten_unknowns(const RingParams& params, int cols, const std::vector<Residue>& x) {
  SeriesVector v(static_cast<std::size_t>(cols), TruncSeries(params));
  for (int m = 0; m < params.order(); ++m)
    for (int j = 0; j < cols; ++j) v[static_cast<std::size_t>(j)].data()[m] = x[static_cast<std::size_t>(m * cols + j)];
  return v;
}

std::vector<Residue> flatten_equations(const SeriesVector& v) {
  std::vector<Residue> out;
  for (const auto& s : v) out.insert(out.end(), s.coeffs().begin(), s.coeffs().end());
  return out;
}

ModMatrix linearize(const SeriesMatrix& m) {
  const int order = m.params().order();
  ModMatrix a(m.rows() * order, m.cols() * order);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const Residue* e = m.entry_data(i, j);
      for (int deg = 0; deg < order; ++deg)
        for (int k = deg; k < order; ++k) a(i * order + k, deg * m.cols() + j) = e[k - deg];
    }
  return a;
}

ModMatrix linearize_images(const RingParams& params, int rows, const std::vector<SeriesVector>& images) {
  const int order = params.order();
  ModMatrix a(rows * order, static_cast<int>(images.size()));
  for (std::size_t u = 0; u < images.size(); ++u) {
    if (static_cast<int>(images[u].size()) != rows) throw ParameterError("image length mismatch");
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < order; ++k) a(i * order + k, static_cast<int>(u)) = images[u][static_cast<std::size_t>(i)][k];
  }
  return a;
}

MembershipResult solve_membership(const SeriesMatrix& cols, const SeriesVector& target) {
  if (static_cast<int>(target.size()) != cols.rows())
    throw ParameterError("solve_membership: target length differs from row count");
  const RingParams& params = cols.params();
  for (const auto& s : target)
    if (!(s.params() == params)) throw ParameterError("solve_membership: target lives over a different ring");
  if (cols.cols() == 0) {
    for (int i = 0; i < cols.rows(); ++i) {
      const auto& s = target[static_cast<std::size_t>(i)];
      if (auto deg = x_valuation(s)) return NotInSpan{i, *deg, s};
    }
    return SeriesVector{};
  }
  const ModMatrix a = linearize(cols);
  const std::vector<Residue> b = flatten_equations(target);
  const SmithForm snf = smith_form(a, params);
  if (auto x = solve(a, snf, b, params)) return unflatten_unknowns(params, cols.cols(), *x);

  const SeriesVector attempt =
      unflatten_unknowns(params, cols.cols(), best_effort_solution(snf, b, params, a.cols()));
  const SeriesVector image = cols * attempt;
  for (int i = 0; i < cols.rows(); ++i) {
    const TruncSeries residual = target[static_cast<std::size_t>(i)] - image[static_cast<std::size_t>(i)];
    if (auto deg = x_valuation(residual)) return NotInSpan{i, *deg, residual};
  }
  throw InvariantViolation("solve_membership", "best-effort solution is exact but solve reported no solution");
}

bool in_span(const std::vector<SeriesVector>& gens, const SeriesVector& target, int rows,
             const RingParams& params) {
  if (gens.empty()) return is_zero_vector(target);
  return std::holds_alternative<SeriesVector>(solve_membership(as_matrix(gens, rows, params), target));
}

std::vector<SeriesVector> preimage(const SeriesMatrix& a, const std::vector<SeriesVector>& b) {
  const RingParams& params = a.params();
  const int order = params.order();
  const int nv = a.cols();
  const int nw = static_cast<int>(b.size());
  const int cols = nv + nw;
  std::vector<SeriesVector> images(static_cast<std::size_t>(cols * order));
  for (int m = 0; m < order; ++m) {
    for (int j = 0; j < nv; ++j) {
      SeriesVector col = a.column(j);
      for (auto& s : col) s = s.shifted_up(m);
      images[static_cast<std::size_t>(m * cols + j)] = std::move(col);
    }
    for (int l = 0; l < nw; ++l) {
      SeriesVector col = b[static_cast<std::size_t>(l)];
      for (auto& s : col) s = -s.shifted_up(m);
      images[static_cast<std::size_t>(m * cols + nv + l)] = std::move(col);
    }
  }
  const ModMatrix lin = linearize_images(params, a.rows(), images);
  const SmithForm snf = smith_form(lin, params);
  std::vector<SeriesVector> out;
  for (const auto& g : kernel(snf, lin.cols(), params)) {
    SeriesVector v = unflatten_unknowns(params, cols, g);
    v.resize(static_cast<std::size_t>(nv), TruncSeries(params));
    if (!is_zero_vector(v)) out.push_back(std::move(v));
  }
  return out;
}

std::vector<SeriesVector> minimal_generators(const std::vector<SeriesVector>& gens, int rows,
                                             const RingParams& params) {
  std::vector<SeriesVector> chosen;
  for (const auto& g : gens) {
    if (is_zero_vector(g)) continue;
    if (!in_span(chosen, g, rows, params)) chosen.push_back(g);
  }
  for (std::size_t i = chosen.size(); i-- > 0;) {
    std::vector<SeriesVector> others;
    for (std::size_t k = 0; k < chosen.size(); ++k)
      if (k != i) others.push_back(chosen[k]);
    if (in_span(others, chosen[i], rows, params)) chosen.erase(chosen.begin() + static_cast<long>(i));
  }
  return chosen;
}

bool independent_up_to_truncation(const std::vector<SeriesVector>& gens, int rows, const RingParams& params) {
  if (gens.empty()) return true;
  const SeriesMatrix m = as_matrix(gens, rows, params);
  const ModMatrix lin = linearize(m);
  const SmithForm snf = smith_form(lin, params);
  for (const auto& k : kernel(snf, lin.cols(), params)) {
    const SeriesVector c = unflatten_unknowns(params, m.cols(), k);
    for (int j = 0; j < m.cols(); ++j)
      for (const auto& entry : gens[static_cast<std::size_t>(j)])
        if (!(c[static_cast<std::size_t>(j)] * entry).is_zero()) return false;
  }
  return true;
}

}  // namespace wachlab::padic
