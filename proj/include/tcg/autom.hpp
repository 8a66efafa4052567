#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tcg/nilgroup.hpp"
#include "tcg/ztlinalg.hpp"

// Automorphisms of G in the split form ψ(a, c) = (M·a, ε·c + ψ′·a) and the
// rank invariants that drive the growth classification. ψ′ is stored in
// H_ω center units like everything else.

namespace tcg {

struct Automorphism {
  IntMatrix m;
  int eps = 1;
  IntVec psi_prime;
};

Automorphism identity_automorphism(const GroupSpec& s);

// Empty when valid; otherwise one message per violated condition.
std::vector<std::string> validation_errors(const GroupSpec& s, const Automorphism& psi);
void validate(const GroupSpec& s, const Automorphism& psi);

Element apply(const GroupSpec& s, const Automorphism& psi, const Element& g);
Automorphism compose(const GroupSpec& s, const Automorphism& f, const Automorphism& g);
Automorphism invert(const GroupSpec& s, const Automorphism& psi);

enum class GrowthFactor { one, log, linear, quadratic };
std::string growth_factor_name(GrowthFactor f);

struct InvariantReport {
  std::size_t d_c = 0, r_c = 0;    // G/G₂ and rank(M − I)
  std::size_t d_z = 0, r_z = 0;    // the quotient by the center direction
  std::size_t d_zc = 0, r_zc = 0;  // Z(G)/G₂ = radical of Ω
  std::size_t frak_d = 0;          // (d_c − r_c) − (d_zc − r_zc)
  bool degenerate = false;
  std::size_t growth_exponent = 0;
  GrowthFactor growth_factor = GrowthFactor::one;
};

InvariantReport invariants(const GroupSpec& s, const Automorphism& psi);
bool is_degenerate(const GroupSpec& s, const Automorphism& psi);
std::pair<std::size_t, GrowthFactor> classify(const GroupSpec& s, const Automorphism& psi);

// The (exponent, log?) model the observed class counts should fit: the
// linear and quadratic factors fold into the exponent, log stays symbolic.
std::pair<std::size_t, bool> fit_model(const InvariantReport& rep);

// Twisted conjugacy growth exponent in ℤ^d under an endomorphism.
std::size_t abelian_growth(std::size_t d, const IntMatrix& m_bar);

}  // namespace tcg
