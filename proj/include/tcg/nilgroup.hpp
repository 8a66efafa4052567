#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tcg/ztlinalg.hpp"

// Arithmetic in the ambient group H_ω on (a, c) pairs — multiplication
// (a,c)(a',c') = (a+a', c+c'+ω(a,a')) — and in the index-2 subgroup G cut
// out by the parity condition c ≡ q(a) (mod 2), where q is the quadratic
// refinement of ω mod 2 given by (Q, ℓ). Center coordinates are in H_ω
// units throughout, so G₂ corresponds to the even integers.

namespace tcg {

struct Element {
  IntVec a;
  Int c;
  friend bool operator==(const Element&, const Element&) = default;
};

struct GroupSpec {
  std::size_t k = 0;
  IntMatrix omega;             // k×k, skew-symmetric, nonzero
  IntMatrix parity_quadratic;  // Q with Q + Qᵀ ≡ Ω (mod 2)
  IntVec parity_linear;        // ℓ, entries 0/1

  void validate() const;
  Int omega_pair(const IntVec& x, const IntVec& y) const;  // xᵀ Ω y
  Int parity(const IntVec& x) const;                       // q(x) ∈ {0,1}
  bool in_g(const Element& g) const;
  Element identity() const;
};

Element multiply(const GroupSpec& s, const Element& g, const Element& h);
Element inverse(const GroupSpec& s, const Element& g);
Element commutator(const GroupSpec& s, const Element& g, const Element& h);

// Generating set, closed under inversion, all members in G.
struct GenSet {
  std::vector<Element> members;
};
GenSet make_genset(const GroupSpec& s, std::vector<Element> members);
// Lifts (eᵢ, q(eᵢ)) of the abelianized basis plus the central (0, 2).
GenSet default_genset(const GroupSpec& s);

// The classical H_{2m+1}(ℤ) with its standard generators.
std::pair<GroupSpec, GenSet> standard_heisenberg(std::size_t m);

// Word-metric ball in G, enumerated breadth-first and extensible in the
// radius. Elements are stored packed as int64 rows (k abelian coordinates,
// then the center); an exact bound computed before every extension
// guarantees the packed arithmetic cannot overflow.
class Ball {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Ball(GroupSpec spec, GenSet gens);

  void grow(int radius);  // no-op when already at least this large
  int radius() const { return radius_; }

  std::size_t size() const { return norms_.size(); }
  std::size_t count_within(int r) const;  // #{elements of norm ≤ r}
  int norm(std::size_t idx) const { return norms_[idx]; }
  const std::int64_t* packed(std::size_t idx) const { return coords_.data() + idx * stride_; }
  Element element(std::size_t idx) const;

  std::size_t find_packed(const std::int64_t* row) const;  // npos if absent
  std::size_t find(const Element& g) const;

  const GroupSpec& group() const { return spec_; }
  const GenSet& gens() const { return gens_; }

 private:
  std::size_t insert_row(const std::int64_t* row, int nrm);
  void rehash(std::size_t capacity);
  void check_bounds(int radius) const;

  GroupSpec spec_;
  GenSet gens_;
  std::size_t stride_;
  int radius_ = -1;
  std::vector<std::int64_t> coords_;        // size() * stride_
  std::vector<std::int16_t> norms_;
  std::vector<std::size_t> level_counts_;   // level_counts_[r] = count_within(r)
  std::vector<std::uint64_t> table_;        // open addressing, value = index+1
  std::size_t mask_ = 0;
  // generators in packed form: a, c, and Ω·a for the ω pairing
  std::vector<std::vector<std::int64_t>> gen_a_, gen_wa_;
  std::vector<std::int64_t> gen_c_;
};

// Exact word norm when ≤ cap, otherwise nullopt; rejects g ∉ G.
std::optional<int> word_norm(const GroupSpec& s, const GenSet& gens, const Element& g, int cap);

}  // namespace tcg
