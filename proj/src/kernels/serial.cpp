#include "wachlab/kernels/kernels.hpp"

#include <vector>

namespace wachlab::kernels::serial {

void series_mul(const Residue* a, const Residue* b, Residue* out, int order, Residue mod) {
  for (int k = 0; k < order; ++k) {
    unsigned __int128 acc = 0;
    for (int i = 0; i <= k; ++i) acc += static_cast<unsigned __int128>(a[i] * b[k - i]);
    out[k] = static_cast<Residue>(acc % mod);
  }
}

void matrix_mul(const Residue* a, const Residue* b, Residue* c, int n, int k, int m, int order,
                Residue mod) {
  std::vector<unsigned __int128> acc(static_cast<std::size_t>(order));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int l = 0; l < k; ++l) {
        const Residue* x = a + (static_cast<std::size_t>(i) * k + l) * order;
        const Residue* y = b + (static_cast<std::size_t>(l) * m + j) * order;
        for (int d = 0; d < order; ++d) {
          if (x[d] == 0) continue;
          for (int e = 0; d + e < order; ++e) acc[d + e] += x[d] * y[e];
        }
      }
      Residue* out = c + (static_cast<std::size_t>(i) * m + j) * order;
      for (int d = 0; d < order; ++d) out[d] = static_cast<Residue>(acc[d] % mod);
    }
  }
}

void compose(const Residue* a, const Residue* inner, Residue* out, int order, Residue mod) {
  // Horner: ((a_{M-1} g + a_{M-2}) g + ...) g + a_0.
  std::vector<Residue> acc(order, 0), tmp(order, 0);
  for (int k = order - 1; k >= 0; --k) {
    series_mul(acc.data(), inner, tmp.data(), order, mod);
    tmp[0] = addmod(tmp[0], a[k], mod);
    acc.swap(tmp);
  }
  for (int k = 0; k < order; ++k) out[k] = acc[k];
}

void eliminate(Residue* rows, int nrows, int cols, int pivot_row, const Residue* factors,
               int col_begin, Residue mod) {
  const Residue* piv = rows + static_cast<std::size_t>(pivot_row) * cols;
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

}  // namespace wachlab::kernels::serial
