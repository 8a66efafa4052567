#include "tcg/nilgroup.hpp"

#include <cstring>
#include <limits>

namespace tcg {

void GroupSpec::validate() const {
  require(k >= 2, "GroupSpec: k must be at least 2");
  require(omega.rows() == k && omega.cols() == k, "GroupSpec: omega must be k×k");
  require(parity_quadratic.rows() == k && parity_quadratic.cols() == k,
          "GroupSpec: parity_quadratic must be k×k");
  require(parity_linear.size() == k, "GroupSpec: parity_linear must have length k");
  require(!omega.is_zero(), "GroupSpec: omega must be nonzero (G non-abelian)");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      require(omega(i, j) == -omega(j, i), "GroupSpec: omega must be skew-symmetric");
      Int s = parity_quadratic(i, j) + parity_quadratic(j, i) - omega(i, j);
      require(fmod(s, Int(2)) == 0,
              "GroupSpec: parity_quadratic must satisfy Q + Qᵀ ≡ omega (mod 2)");
    }
    require(parity_linear[i] == 0 || parity_linear[i] == 1,
            "GroupSpec: parity_linear entries must be 0 or 1");
  }
}

Int GroupSpec::omega_pair(const IntVec& x, const IntVec& y) const {
  return dot_vec(x, omega.mul(y));
}

Int GroupSpec::parity(const IntVec& x) const {
  return fmod(dot_vec(x, parity_quadratic.mul(x)) + dot_vec(parity_linear, x), Int(2));
}

bool GroupSpec::in_g(const Element& g) const {
  require(g.a.size() == k, "in_g: dimension mismatch");
  return fmod(g.c - parity(g.a), Int(2)) == 0;
}

Element GroupSpec::identity() const { return Element{IntVec(k, Int(0)), Int(0)}; }

Element multiply(const GroupSpec& s, const Element& g, const Element& h) {
  require(g.a.size() == s.k && h.a.size() == s.k, "multiply: dimension mismatch");
  return Element{add_vec(g.a, h.a), g.c + h.c + s.omega_pair(g.a, h.a)};
}

Element inverse(const GroupSpec& s, const Element& g) {
  require(g.a.size() == s.k, "inverse: dimension mismatch");
  return Element{neg_vec(g.a), -g.c};  // ω(a, a) = 0, so no correction term
}

Element commutator(const GroupSpec& s, const Element& g, const Element& h) {
  return Element{IntVec(s.k, Int(0)), 2 * s.omega_pair(g.a, h.a)};
}

GenSet make_genset(const GroupSpec& s, std::vector<Element> members) {
  GenSet out;
  for (auto& m : members) {
    require(s.in_g(m), "make_genset: generator not in G");
    bool dup = false;
    for (const auto& have : out.members) dup = dup || have == m;
    if (!dup) out.members.push_back(std::move(m));
  }
  require(!out.members.empty(), "make_genset: empty generating set");
  std::size_t given = out.members.size();
  for (std::size_t i = 0; i < given; ++i) {
    Element inv = inverse(s, out.members[i]);
    bool have_inv = false;
    for (const auto& have : out.members) have_inv = have_inv || have == inv;
    if (!have_inv) out.members.push_back(std::move(inv));
  }
  return out;
}

GenSet default_genset(const GroupSpec& s) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < s.k; ++i) {
    IntVec e(s.k, Int(0));
    e[i] = 1;
    Int c = s.parity(e);
    gens.push_back(Element{std::move(e), std::move(c)});
  }
  gens.push_back(Element{IntVec(s.k, Int(0)), Int(2)});
  return make_genset(s, std::move(gens));
}

std::pair<GroupSpec, GenSet> standard_heisenberg(std::size_t m) {
  require(m >= 1, "standard_heisenberg: m must be at least 1");
  std::size_t k = 2 * m;
  GroupSpec s;
  s.k = k;
  s.omega = IntMatrix(k, k);
  s.parity_quadratic = IntMatrix(k, k);
  s.parity_linear = IntVec(k, Int(0));
  for (std::size_t b = 0; b < m; ++b) {
    s.omega(2 * b, 2 * b + 1) = 1;
    s.omega(2 * b + 1, 2 * b) = -1;
    s.parity_quadratic(2 * b, 2 * b + 1) = 1;
  }
  s.validate();
  GenSet gens = default_genset(s);
  return {std::move(s), std::move(gens)};
}

namespace {

std::uint64_t hash_row(const std::int64_t* row, std::size_t stride) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < stride; ++i) {
    h ^= static_cast<std::uint64_t>(row[i]);
    h *= 1099511628211ull;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

std::int64_t to_i64(const Int& x, const char* what) {
  require(x >= std::numeric_limits<std::int64_t>::min() &&
              x <= std::numeric_limits<std::int64_t>::max(),
          std::string(what) + ": coordinate exceeds packed range");
  return static_cast<std::int64_t>(x);
}

}  // namespace

Ball::Ball(GroupSpec spec, GenSet gens) : spec_(std::move(spec)), gens_(std::move(gens)) {
  spec_.validate();
  require(!gens_.members.empty(), "Ball: empty generating set");
  stride_ = spec_.k + 1;
  for (const auto& g : gens_.members) {
    require(spec_.in_g(g), "Ball: generator not in G");
    std::vector<std::int64_t> a(spec_.k), wa(spec_.k);
    for (std::size_t i = 0; i < spec_.k; ++i) a[i] = to_i64(g.a[i], "Ball");
    IntVec w = spec_.omega.mul(g.a);
    for (std::size_t i = 0; i < spec_.k; ++i) wa[i] = to_i64(w[i], "Ball");
    gen_a_.push_back(std::move(a));
    gen_wa_.push_back(std::move(wa));
    gen_c_.push_back(to_i64(g.c, "Ball"));
  }
  rehash(1024);
  std::vector<std::int64_t> id(stride_, 0);
  insert_row(id.data(), 0);
  radius_ = 0;
  level_counts_ = {1};
}

void Ball::check_bounds(int radius) const {
  Int a_max = 0, c_max = 0, w_max = 0;
  for (const auto& g : gens_.members) {
    for (const Int& x : g.a) {
      Int v = abs(x);
      if (v > a_max) a_max = v;
    }
    Int v = abs(g.c);
    if (v > c_max) c_max = v;
  }
  for (std::size_t i = 0; i < spec_.k; ++i)
    for (std::size_t j = 0; j < spec_.k; ++j) {
      Int v = abs(spec_.omega(i, j));
      if (v > w_max) w_max = v;
    }
  Int n(radius);
  // Products of ≤ n generators: |a|∞ ≤ n·a_max and the center picks up at
  // most c_max + |ω(partial, gen)| ≤ c_max + k²·w·a_max²·n per step.
  Int bound_a = n * a_max;
  Int bound_c = n * c_max + n * n * Int(spec_.k) * Int(spec_.k) * w_max * a_max * a_max;
  Int lim = Int(1) << 61;
  require(bound_a < lim && bound_c < lim, "Ball: radius would overflow packed coordinates");
}

void Ball::rehash(std::size_t capacity) {
  std::size_t cap = 16;
  while (cap < capacity) cap <<= 1;
  table_.assign(cap, 0);
  mask_ = cap - 1;
  for (std::size_t idx = 0; idx < norms_.size(); ++idx) {
    std::uint64_t h = hash_row(packed(idx), stride_);
    std::size_t slot = h & mask_;
    while (table_[slot] != 0) slot = (slot + 1) & mask_;
    table_[slot] = idx + 1;
  }
}

std::size_t Ball::insert_row(const std::int64_t* row, int nrm) {
  std::size_t idx = norms_.size();
  coords_.insert(coords_.end(), row, row + stride_);
  norms_.push_back(static_cast<std::int16_t>(nrm));
  if ((idx + 2) * 2 > table_.size()) rehash(table_.size() * 2);
  std::uint64_t h = hash_row(row, stride_);
  std::size_t slot = h & mask_;
  while (table_[slot] != 0) slot = (slot + 1) & mask_;
  table_[slot] = idx + 1;
  return idx;
}

std::size_t Ball::find_packed(const std::int64_t* row) const {
  std::uint64_t h = hash_row(row, stride_);
  std::size_t slot = h & mask_;
  while (table_[slot] != 0) {
    std::size_t idx = table_[slot] - 1;
    if (std::memcmp(coords_.data() + idx * stride_, row, stride_ * sizeof(std::int64_t)) == 0)
      return idx;
    slot = (slot + 1) & mask_;
  }
  return npos;
}

std::size_t Ball::find(const Element& g) const {
  if (g.a.size() != spec_.k) return npos;
  std::vector<std::int64_t> row(stride_);
  constexpr std::int64_t lo = std::numeric_limits<std::int64_t>::min();
  constexpr std::int64_t hi = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < spec_.k; ++i) {
    if (g.a[i] < lo || g.a[i] > hi) return npos;
    row[i] = static_cast<std::int64_t>(g.a[i]);
  }
  if (g.c < lo || g.c > hi) return npos;
  row[spec_.k] = static_cast<std::int64_t>(g.c);
  return find_packed(row.data());
}

Element Ball::element(std::size_t idx) const {
  const std::int64_t* row = packed(idx);
  Element g;
  g.a.assign(row, row + spec_.k);
  g.c = row[spec_.k];
  return g;
}

std::size_t Ball::count_within(int r) const {
  if (r < 0) return 0;
  if (r >= radius_) return size();
  return level_counts_[static_cast<std::size_t>(r)];
}

void Ball::grow(int radius) {
  require(radius >= 0, "Ball: negative radius");
  if (radius <= radius_) return;
  require(radius < 30000, "Ball: radius out of range");
  check_bounds(radius);
  std::vector<std::int64_t> row(stride_);
  for (int r = radius_ + 1; r <= radius; ++r) {
    std::size_t start = r >= 2 ? level_counts_[static_cast<std::size_t>(r) - 2] : 0;
    std::size_t end = level_counts_[static_cast<std::size_t>(r) - 1];
    for (std::size_t idx = start; idx < end; ++idx) {
      for (std::size_t gi = 0; gi < gen_c_.size(); ++gi) {
        // Row pointer recomputed inside: insert_row may reallocate coords_.
        const std::int64_t* e = packed(idx);
        std::int64_t cw = 0;
        for (std::size_t i = 0; i < spec_.k; ++i) {
          row[i] = e[i] + gen_a_[gi][i];
          cw += e[i] * gen_wa_[gi][i];
        }
        row[spec_.k] = e[spec_.k] + gen_c_[gi] + cw;
        if (find_packed(row.data()) == npos) insert_row(row.data(), r);
      }
    }
    level_counts_.push_back(size());
  }
  radius_ = radius;
}

std::optional<int> word_norm(const GroupSpec& s, const GenSet& gens, const Element& g, int cap) {
  require(s.in_g(g), "word_norm: element not in G");
  Ball b(s, gens);
  for (int r = 0; r <= cap; ++r) {
    b.grow(r);
    std::size_t idx = b.find(g);
    if (idx != Ball::npos) return b.norm(idx);
  }
  return std::nullopt;
}

}  // namespace tcg
