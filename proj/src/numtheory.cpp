#include "tcg/numtheory.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

namespace tcg {

std::vector<long long> totient_sieve(std::size_t n) {
  require(n >= 1, "totient_sieve: N must be positive");
  std::vector<long long> phi(n + 1, 0);
  std::vector<std::size_t> primes;
  phi[1] = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (phi[i] == 0) {
      phi[i] = static_cast<long long>(i) - 1;
      primes.push_back(i);
    }
    for (std::size_t p : primes) {
      if (i * p > n) break;
      if (i % p == 0) {
        phi[i * p] = phi[i] * static_cast<long long>(p);
        break;
      }
      phi[i * p] = phi[i] * static_cast<long long>(p - 1);
    }
  }
  return phi;
}

Rat s_series(int d, long long m, long long n) {
  require(d >= 1, "s_series: exponent must be positive");
  require(m >= 1, "s_series: m must be positive");
  require(n >= 1, "s_series: n must be positive");
  if (n <= 1) return 0;
  const std::vector<long long> phi = totient_sieve(static_cast<std::size_t>(n - 1));
  Rat total = 0;
  for (long long i = 1; i < n; ++i) {
    if (std::gcd(i, m) != 1) continue;
    Int den = 1;
    for (int t = 0; t < d; ++t) den *= i;
    total += Rat(Int(phi[static_cast<std::size_t>(i)]), den);
  }
  return total;
}

std::pair<double, double> s_series_bounds(int d, long long m, long long n) {
  require(d >= 1, "s_series_bounds: exponent must be positive");
  require(m >= 1, "s_series_bounds: m must be positive");
  require(n >= 1, "s_series_bounds: n must be positive");
  require(n <= 100000000, "s_series_bounds: n beyond sieve range");
  if (n <= 1) return {0.0, 0.0};
  const std::vector<long long> phi = totient_sieve(static_cast<std::size_t>(n - 1));
  constexpr int shift = 40;
  unsigned long long lo = 0, hi = 0;
  for (long long i = 1; i < n; ++i) {
    if (std::gcd(i, m) != 1) continue;
    unsigned __int128 den = 1;
    for (int t = 0; t < d; ++t) den *= static_cast<unsigned __int128>(i);
    const unsigned __int128 num = static_cast<unsigned __int128>(phi[static_cast<std::size_t>(i)])
                                  << shift;
    const auto q = static_cast<unsigned long long>(num / den);
    lo += q;
    hi += q + 1;
  }
  const double scale = std::ldexp(1.0, -shift);
  return {static_cast<double>(lo) * scale * (1 - 1e-12),
          (static_cast<double>(hi) + 1) * scale * (1 + 1e-12)};
}

Int gcd_sum(const std::vector<AffineMap>& thetas, std::size_t l, long long n) {
  const std::size_t d = thetas.size();
  require(d >= 1, "gcd_sum: need at least one affine map");
  require(l >= d, "gcd_sum: l must cover the given maps");
  require(n >= 0, "gcd_sum: N must be nonnegative");
  for (const AffineMap& th : thetas) require(th.slope != 0, "gcd_sum: slopes must be nonzero");

  Int free_factor = 1;
  for (std::size_t i = d; i < l; ++i) free_factor *= 2 * n + 1;

  bool uniform = true;
  for (const AffineMap& th : thetas)
    uniform = uniform && th.offset == 0 && std::llabs(th.slope) == std::llabs(thetas[0].slope);
  if (uniform) {
    // gcd(s*l_1, ..., s*l_d) = |s| gcd(l); counting multiples of each m in
    // the box turns the box sum of gcd into a totient sum over quotients
    const long long s = std::llabs(thetas[0].slope);
    Int total = 0;
    if (n >= 1) {
      const std::vector<long long> phi = totient_sieve(static_cast<std::size_t>(n));
      for (long long m = 1; m <= n; ++m) {
        const Int box = 2 * (n / m) + 1;
        Int cells = 1;
        for (std::size_t i = 0; i < d; ++i) cells *= box;
        total += phi[static_cast<std::size_t>(m)] * (cells - 1);
      }
    }
    return s * total * free_factor;
  }

  double cells = 1;
  for (std::size_t i = 0; i < d; ++i) cells *= static_cast<double>(2 * n + 1);
  require(cells <= 5e8, "gcd_sum: grid too large for affine enumeration");
  long long vmax = 1;
  for (const AffineMap& th : thetas)
    vmax = std::max(vmax, std::llabs(th.slope) * n + std::llabs(th.offset));
  require(cells * static_cast<double>(vmax) < 4e18, "gcd_sum: accumulator would overflow");

  // per-coordinate absolute values, then a d-nested odometer over the grid
  std::vector<std::vector<unsigned long long>> vals(d);
  for (std::size_t i = 0; i < d; ++i) {
    vals[i].resize(static_cast<std::size_t>(2 * n + 1));
    for (long long t = -n; t <= n; ++t)
      vals[i][static_cast<std::size_t>(t + n)] =
          static_cast<unsigned long long>(std::llabs(thetas[i].slope * t + thetas[i].offset));
  }
  unsigned long long total = 0;
  std::vector<std::size_t> idx(d, 0);
  const std::size_t side = static_cast<std::size_t>(2 * n + 1);
  for (;;) {
    unsigned long long g = 0;
    for (std::size_t i = 0; i < d; ++i) g = std::gcd(g, vals[i][idx[i]]);
    total += g;
    std::size_t pos = 0;
    while (pos < d && ++idx[pos] == side) idx[pos++] = 0;
    if (pos == d) break;
  }
  return Int(total) * free_factor;
}

RatioDiagnostics ratio_diagnostics(const std::vector<std::pair<long long, Int>>& values,
                                   std::size_t l, std::size_t d) {
  require(values.size() >= 3, "ratio_diagnostics: need at least three grid points");
  require(d >= 1 && l >= d, "ratio_diagnostics: invalid model");
  RatioDiagnostics out;
  double lo = 0, hi = 0;
  for (const auto& [n, value] : values) {
    require(n >= 2, "ratio_diagnostics: grid points must be at least 2");
    RatioRow row;
    row.n = n;
    row.value = value.convert_to<double>();
    row.model = std::pow(static_cast<double>(n), static_cast<double>(l));
    if (d == 1)
      row.model *= static_cast<double>(n);
    else if (d == 2)
      row.model *= std::log(static_cast<double>(n));
    row.ratio = row.value / row.model;
    require(row.ratio > 0, "ratio_diagnostics: nonpositive ratio");
    if (out.rows.empty()) {
      lo = hi = row.ratio;
    } else {
      lo = std::min(lo, row.ratio);
      hi = std::max(hi, row.ratio);
    }
    out.rows.push_back(row);
  }
  out.spread = hi / lo;
  return out;
}

std::string ratio_csv(const RatioDiagnostics& diag) {
  std::string out = "N,value,model,ratio\n";
  char buf[128];
  for (const RatioRow& row : diag.rows) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n", row.n, row.value, row.model,
                  row.ratio);
    out += buf;
  }
  return out;
}

}  // namespace tcg
