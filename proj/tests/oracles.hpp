#pragma once

#include <random>

#include "tcg/ztlinalg.hpp"

// Independent reference implementations and generators used across the test
// suite. Everything here is deliberately naive; the point is that it shares
// no code with the library under test.

namespace oracle {

using tcg::Int;
using tcg::IntMatrix;
using tcg::IntVec;
using tcg::Rat;

using Rng = std::mt19937_64;

inline IntMatrix random_matrix(Rng& rng, std::size_t m, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = d(rng);
  return a;
}

inline IntVec random_vec(Rng& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntVec v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Random product of elementary integer operations: always unimodular.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    switch (kind(rng)) {
      case 0:
        u.addmul_row(i, j, Int(coef(rng)));
        break;
      case 1:
        u.swap_rows(i, j);
        break;
      default:
        u.negate_row(i);
    }
  }
  return u;
}

// Rank over Q by plain Gaussian elimination on rationals.
inline std::size_t rank_q(const IntMatrix& a) {
  std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<Rat>> w(m, std::vector<Rat>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i][j] = Rat(a(i, j));
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n && rank < m; ++j) {
    std::size_t p = rank;
    while (p < m && w[p][j] == 0) ++p;
    if (p == m) continue;
    std::swap(w[rank], w[p]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || w[i][j] == 0) continue;
      Rat f = w[i][j] / w[rank][j];
      for (std::size_t l = j; l < n; ++l) w[i][l] -= f * w[rank][l];
    }
    ++rank;
  }
  return rank;
}

inline bool is_unimodular(const IntMatrix& u) {
  if (u.rows() != u.cols()) return false;
  Int d = u.det();
  return d == 1 || d == -1;
}

// Checks the full column-Hermite contract: zero columns leftmost, positive
// pivots on strictly increasing rows, entries right of each pivot reduced
// into [0, pivot), zeros below every pivot.
inline bool is_col_hnf(const IntMatrix& h) {
  std::size_t m = h.rows(), n = h.cols();
  bool seen_nonzero = false;
  long long last_pivot_row = -1;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t i = m;
    while (i > 0 && h(i - 1, j) == 0) --i;
    if (i == 0) {
      if (seen_nonzero) return false;  // zero column after a nonzero one
      continue;
    }
    seen_nonzero = true;
    std::size_t prow = i - 1;
    if ((long long)prow <= last_pivot_row) return false;
    last_pivot_row = (long long)prow;
    const Int& p = h(prow, j);
    if (p <= 0) return false;
    for (std::size_t jj = j + 1; jj < n; ++jj)
      if (h(prow, jj) < 0 || h(prow, jj) >= p) return false;
  }
  return true;
}

}  // namespace oracle
