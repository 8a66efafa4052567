#include "tcg/counting.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace tcg {

namespace {

long long checked_ll(const Int& x) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  require(x >= lo && x <= hi, "counting: canonical coordinate exceeds packing range");
  return x.convert_to<long long>();
}

// g_a is determined by a_star, so (a_star, b_star) already separates forms.
std::string form_key(const CanonicalForm& f) {
  std::string key((f.a_star.size() + 1) * sizeof(long long), '\0');
  char* out = key.data();
  for (const Int& x : f.a_star) {
    const long long v = checked_ll(x);
    std::memcpy(out, &v, sizeof v);
    out += sizeof v;
  }
  const long long v = checked_ll(f.b_star);
  std::memcpy(out, &v, sizeof v);
  return key;
}

std::string vec_key(const IntVec& a) {
  std::string key(a.size() * sizeof(long long), '\0');
  char* out = key.data();
  for (const Int& x : a) {
    const long long v = checked_ll(x);
    std::memcpy(out, &v, sizeof v);
    out += sizeof v;
  }
  return key;
}

struct Dsu {
  std::vector<std::size_t> parent;
  std::vector<std::size_t> size;

  explicit Dsu(std::size_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    return true;
  }
};

}  // namespace

GrowthTable growth_table(const TwistedContext& ctx, Ball& ball, int n_max) {
  require(n_max >= 1, "growth_table: n_max must be positive");
  require(ball.group().k == ctx.group().k, "growth_table: ball and context disagree on the group");
  ball.grow(n_max);
  std::unordered_set<std::string> seen;
  seen.reserve(ball.count_within(n_max) / 4 + 16);
  GrowthTable out;
  out.rows.reserve(static_cast<std::size_t>(n_max));
  std::size_t idx = 0;
  for (int n = 0; n <= n_max; ++n) {
    const std::size_t upto = ball.count_within(n);
    for (; idx < upto; ++idx) seen.insert(form_key(ctx.canonical_form(ball.element(idx))));
    if (n >= 1) out.rows.push_back({n, seen.size(), upto});
  }
  return out;
}

GrowthTable growth_table(const GroupSpec& spec, const Automorphism& psi, const GenSet& gens,
                         int n_max) {
  TwistedContext ctx(spec, psi);
  Ball ball(spec, gens);
  return growth_table(ctx, ball, n_max);
}

std::size_t count_classes(const GroupSpec& spec, const Automorphism& psi, const GenSet& gens,
                          int n) {
  require(n >= 0, "count_classes: radius must be nonnegative");
  TwistedContext ctx(spec, psi);
  Ball ball(spec, gens);
  ball.grow(n);
  const std::size_t upto = ball.count_within(n);
  std::unordered_set<std::string> seen;
  seen.reserve(upto / 4 + 16);
  for (std::size_t idx = 0; idx < upto; ++idx)
    seen.insert(form_key(ctx.canonical_form(ball.element(idx))));
  return seen.size();
}

OrbitPartition brute_orbit_oracle(const GroupSpec& spec, const Automorphism& psi,
                                  const GenSet& gens, int n, int witness_radius) {
  require(n >= 0, "brute_orbit_oracle: radius must be nonnegative");
  require(witness_radius >= n, "brute_orbit_oracle: witness radius must cover the ball");
  validate(spec, psi);
  const std::size_t k = spec.k;

  Ball ball(spec, gens);
  ball.grow(n);
  const std::size_t limit = ball.count_within(n);
  Dsu dsu(limit);

  // One witness per abelianization suffices: for eps = 1 the central part of
  // w cancels out of tc(w, g) = w g psi(w)^{-1}, and for eps = -1 changing it
  // by 2m shifts the result by the central (0, 4m), which the probe loop
  // below replays against every target still inside the ball.
  std::int64_t cmax = 0;
  for (std::size_t idx = 0; idx < limit; ++idx)
    cmax = std::max(cmax, std::abs(ball.packed(idx)[k]));

  std::vector<std::int64_t> wa(k), roww(k), pa(k), wpa(k), buf(k + 1);
  IntVec v_int(k);
  auto apply_witness = [&](const std::vector<std::int64_t>& v) {
    for (std::size_t q = 0; q < k; ++q) v_int[q] = v[q];
    const Element w{v_int, spec.parity(v_int)};
    const Element pwinv = inverse(spec, apply(spec, psi, w));
    for (std::size_t q = 0; q < k; ++q) {
      wa[q] = v[q];
      pa[q] = checked_ll(pwinv.a[q]);
    }
    const std::int64_t wc = checked_ll(w.c);
    const std::int64_t pc = checked_ll(pwinv.c);
    for (std::size_t j = 0; j < k; ++j) {
      std::int64_t rw = 0, cp = 0;
      for (std::size_t q = 0; q < k; ++q) {
        const std::int64_t om = checked_ll(spec.omega(q, j));
        rw += wa[q] * om;
        cp += checked_ll(spec.omega(j, q)) * pa[q];
      }
      roww[j] = rw;
      wpa[j] = cp;
    }
    bool merged = false;
    for (std::size_t idx = 0; idx < limit; ++idx) {
      const std::int64_t* g = ball.packed(idx);
      std::int64_t dot1 = 0, dot2 = 0;
      for (std::size_t q = 0; q < k; ++q) {
        const std::int64_t ta = wa[q] + g[q];
        dot1 += roww[q] * g[q];
        dot2 += wpa[q] * ta;
        buf[q] = ta + pa[q];
      }
      buf[k] = wc + g[k] + pc + dot1 + dot2;
      if (psi.eps == 1) {
        const std::size_t j = ball.find_packed(buf.data());
        if (j != Ball::npos && j < limit) merged |= dsu.unite(idx, j);
      } else {
        // smallest center >= -cmax congruent to the computed one mod 4
        const std::int64_t span = buf[k] + cmax;
        const std::int64_t steps = span >= 0 ? span / 4 : -((-span + 3) / 4);
        for (buf[k] -= 4 * steps; buf[k] <= cmax; buf[k] += 4) {
          const std::size_t j = ball.find_packed(buf.data());
          if (j != Ball::npos && j < limit) merged |= dsu.unite(idx, j);
        }
      }
    }
    return merged;
  };

  // abelianizations of one l1 shell, last coordinate carrying both signs
  std::vector<std::int64_t> v(k);
  auto sweep_shell = [&](int level) {
    bool merged = false;
    auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
      if (pos + 1 == k) {
        v[pos] = remaining;
        merged |= apply_witness(v);
        if (remaining != 0) {
          v[pos] = -remaining;
          merged |= apply_witness(v);
        }
        return;
      }
      for (int t = -remaining; t <= remaining; ++t) {
        v[pos] = t;
        self(self, pos + 1, remaining - std::abs(t));
      }
    };
    rec(rec, 0, level);
    return merged;
  };

  for (int level = 0; level <= witness_radius; ++level) sweep_shell(level);
  int r = witness_radius;
  const int cap = witness_radius + 2 * n + 6;
  for (int stable = 0; stable < 2;) {
    require(r < cap, "brute_orbit_oracle: witness search failed to stabilize");
    ++r;
    if (sweep_shell(r))
      stable = 0;
    else
      ++stable;
  }

  OrbitPartition out;
  out.elements.reserve(limit);
  out.part_of.resize(limit);
  std::unordered_map<std::size_t, std::size_t> ids;
  for (std::size_t idx = 0; idx < limit; ++idx) {
    out.elements.push_back(ball.element(idx));
    const auto [it, fresh] = ids.emplace(dsu.find(idx), ids.size());
    (void)fresh;
    out.part_of[idx] = it->second;
  }
  out.part_count = ids.size();
  return out;
}

std::size_t abelian_class_count(const IntMatrix& m_bar, Ball& ball, int n) {
  const std::size_t k = ball.group().k;
  require(m_bar.rows() == k && m_bar.cols() == k, "abelian_class_count: dimension mismatch");
  require(n >= 0, "abelian_class_count: radius must be nonnegative");
  IntMatrix id_minus(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) id_minus(i, j) = Int(i == j ? 1 : 0) - m_bar(i, j);
  const Lattice image = image_lattice(id_minus);
  ball.grow(n);
  const std::size_t upto = ball.count_within(n);
  std::unordered_set<std::string> seen;
  IntVec a(k);
  for (std::size_t idx = 0; idx < upto; ++idx) {
    const std::int64_t* row = ball.packed(idx);
    for (std::size_t q = 0; q < k; ++q) a[q] = row[q];
    seen.insert(vec_key(image.reduce(a)));
  }
  return seen.size();
}

FitResult fit_growth(const GrowthTable& table, const std::vector<FitCandidate>& candidates) {
  require(table.rows.size() >= 6, "fit_growth: need at least six rows");
  require(!candidates.empty(), "fit_growth: need at least one candidate model");
  const std::size_t from = table.rows.size() / 2;
  std::vector<double> xs, ys, zs;  // log n, log classes, log log n
  bool constant = true;
  for (std::size_t i = from; i < table.rows.size(); ++i) {
    const GrowthRow& row = table.rows[i];
    require(row.classes > 0, "fit_growth: class counts must be positive");
    require(row.n >= 2, "fit_growth: fit window must start at n >= 2");
    constant = constant && row.classes == table.rows[from].classes;
    xs.push_back(std::log(static_cast<double>(row.n)));
    ys.push_back(std::log(static_cast<double>(row.classes)));
    zs.push_back(std::log(std::log(static_cast<double>(row.n))));
  }
  if (constant) return {0.0, false, 0.0};

  FitResult best;
  bool first = true;
  for (const FitCandidate& cand : candidates) {
    require(cand.exponent >= 0, "fit_growth: candidate exponents must be nonnegative");
    double mean = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      mean += ys[i] - cand.exponent * xs[i] - (cand.log_factor ? zs[i] : 0.0);
    mean /= static_cast<double>(xs.size());
    double ssr = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double d = ys[i] - cand.exponent * xs[i] - (cand.log_factor ? zs[i] : 0.0) - mean;
      ssr += d * d;
    }
    if (first || ssr < best.residual) {
      best = {cand.exponent, cand.log_factor, ssr};
      first = false;
    }
  }
  return best;
}

std::string growth_table_csv(const GrowthTable& table) {
  std::string out = "n,classes,ball\n";
  for (const GrowthRow& row : table.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.classes);
    out += ',';
    out += std::to_string(row.ball);
    out += '\n';
  }
  return out;
}

}  // namespace tcg
