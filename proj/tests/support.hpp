#pragma once

#include <random>
#include <vector>

#include "wachlab/padic/series_matrix.hpp"

namespace testsupport {

using wachlab::padic::Residue;
using wachlab::padic::RingParams;
using wachlab::padic::SeriesMatrix;
using wachlab::padic::SeriesVector;
using wachlab::padic::TruncSeries;

inline TruncSeries random_series(std::mt19937_64& rng, const RingParams& params) {
  std::uniform_int_distribution<Residue> d(0, params.modulus() - 1);
  std::vector<Residue> c(static_cast<std::size_t>(params.order()));
  for (auto& x : c) x = d(rng);
  return TruncSeries(params, std::move(c));
}

inline TruncSeries random_unit(std::mt19937_64& rng, const RingParams& params) {
  TruncSeries s = random_series(rng, params);
  if (s[0] % static_cast<Residue>(params.p()) == 0) s.data()[0] = (s[0] + 1) % params.modulus();
  return s;
}

inline SeriesMatrix random_matrix(std::mt19937_64& rng, const RingParams& params, int rows, int cols) {
  SeriesMatrix m(params, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.set(r, c, random_series(rng, params));
  return m;
}

}  // namespace testsupport
