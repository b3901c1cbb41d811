#include "wachlab/kernels/kernels.hpp"

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wachlab::kernels::omp {

namespace {
// Below this many multiply-adds the fork/join costs more than it saves.
constexpr long kParallelWork = 1L << 14;
}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void series_mul(const Residue* a, const Residue* b, Residue* out, int order, Residue mod) {
  const long work = static_cast<long>(order) * order / 2;
#pragma omp parallel for schedule(static) if (work > kParallelWork)
  for (int k = 0; k < order; ++k) {
    unsigned __int128 acc = 0;
    for (int i = 0; i <= k; ++i) acc += static_cast<unsigned __int128>(a[i] * b[k - i]);
    out[k] = static_cast<Residue>(acc % mod);
  }
}

void matrix_mul(const Residue* a, const Residue* b, Residue* c, int n, int k, int m, int order,
                Residue mod) {
  const long work = static_cast<long>(n) * m * k * order * order / 2;
  const int entries = n * m;
#pragma omp parallel if (work > kParallelWork)
  {
    std::vector<unsigned __int128> acc(static_cast<std::size_t>(order));
#pragma omp for schedule(static)
    for (int idx = 0; idx < entries; ++idx) {
      const int i = idx / m;
      const int j = idx % m;
      std::fill(acc.begin(), acc.end(), 0);
      for (int l = 0; l < k; ++l) {
        const Residue* x = a + (static_cast<std::size_t>(i) * k + l) * order;
        const Residue* y = b + (static_cast<std::size_t>(l) * m + j) * order;
        for (int d = 0; d < order; ++d) {
          if (x[d] == 0) continue;
          for (int e = 0; d + e < order; ++e) acc[d + e] += x[d] * y[e];
        }
      }
      Residue* o = c + (static_cast<std::size_t>(i) * m + j) * order;
      for (int d = 0; d < order; ++d) o[d] = static_cast<Residue>(acc[d] % mod);
    }
  }
}

void compose(const Residue* a, const Residue* inner, Residue* out, int order, Residue mod) {
  // Powers of `inner` are computed once; each output coefficient is then an
  // independent dot product, which is what gets distributed.
  std::vector<Residue> powers(static_cast<std::size_t>(order) * order, 0);
  powers[0] = 1 % mod;
  for (int k = 1; k < order; ++k) {
    serial::series_mul(powers.data() + static_cast<std::size_t>(k - 1) * order, inner,
                       powers.data() + static_cast<std::size_t>(k) * order, order, mod);
  }
  const long work = static_cast<long>(order) * order;
#pragma omp parallel for schedule(static) if (work > kParallelWork)
  for (int d = 0; d < order; ++d) {
    unsigned __int128 acc = 0;
    // inner^k lies in (X^k), so only k <= d contribute to coefficient d.
    for (int k = 0; k <= d; ++k) acc += a[k] * powers[static_cast<std::size_t>(k) * order + d];
    out[d] = static_cast<Residue>(acc % mod);
  }
}

void eliminate(Residue* rows, int nrows, int cols, int pivot_row, const Residue* factors,
               int col_begin, Residue mod) {
  const Residue* piv = rows + static_cast<std::size_t>(pivot_row) * cols;
  const long work = static_cast<long>(nrows) * (cols - col_begin);
#pragma omp parallel for schedule(static) if (work > kParallelWork)
  for (int r = 0; r < nrows; ++r) {
    if (r == pivot_row || factors[r] == 0) continue;
    Residue* row = rows + static_cast<std::size_t>(r) * cols;
    const Residue f = factors[r];
    for (int c = col_begin; c < cols; ++c) {
      if (piv[c] == 0) continue;
      row[c] = submod(row[c], mulmod(f, piv[c], mod), mod);
    }
  }
}

}  // namespace wachlab::kernels::omp
