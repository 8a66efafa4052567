#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tcg/ztlinalg.hpp"

namespace tcg {

using Rat = boost::multiprecision::cpp_rational;

struct AffineMap {
  long long slope = 1;  // nonzero
  long long offset = 0;
};

// Euler totients phi(0..n); entry 0 is unused and set to 0.
std::vector<long long> totient_sieve(std::size_t n);

// Exact partial sum of phi(i)/i^d over 0 < i < n with gcd(i, m) = 1.
// Denominators grow like lcm(1..n)^d, so the exact form is practical only
// for n up to a few thousand; use s_series_bounds beyond that.
Rat s_series(int d, long long m, long long n);

// Certified enclosure [lo, hi] of the same sum via 2^-40 fixed point.
std::pair<double, double> s_series_bounds(int d, long long m, long long n);

// Sum over lambda in [-N,N]^l of gcd(theta_1(lambda_1), ..., theta_d(lambda_d))
// where d = thetas.size() <= l; the all-zero tuple contributes 0 and the
// l - d free coordinates contribute the factor (2N+1)^(l-d), computed
// directly. Uniform slopes with zero offsets reduce to a totient sum; other
// maps are enumerated on the d-dimensional grid.
Int gcd_sum(const std::vector<AffineMap>& thetas, std::size_t l, long long n);

struct RatioRow {
  long long n = 0;
  double value = 0;
  double model = 0;
  double ratio = 0;
};

struct RatioDiagnostics {
  std::vector<RatioRow> rows;
  double spread = 1;  // max ratio / min ratio
};

// Ratios of measured values against the model N^l * d_d(N), where d_d(N) is
// N for d = 1, ln N for d = 2, and 1 for d >= 3.
RatioDiagnostics ratio_diagnostics(const std::vector<std::pair<long long, Int>>& values,
                                   std::size_t l, std::size_t d);

std::string ratio_csv(const RatioDiagnostics& diag);

}  // namespace tcg
