#pragma once

#include <utility>
#include <vector>

#include "tcg/autom.hpp"
#include "tcg/nilgroup.hpp"
#include "tcg/ztlinalg.hpp"

// Hyperbolic bases for the commutator form and the canonical automorphism
// with n^e·log(n) twisted conjugacy growth built on top of them.

namespace tcg {

using RatVec = std::vector<Rat>;

// Basis of the nondegenerate quotient G/Z(G) ⊗ ℚ in hyperbolic pairs,
// written in the coordinates of `complement`, whose columns extend a basis
// of the radical of Ω to a basis of ℤ^k. Pairings are normalized to
// ω(p_i, q_j) = δ_ij and ω(p_i, p_j) = ω(q_i, q_j) = 0. The integer span L
// of all pairs satisfies L ⊇ ℤ^{d_z} ⊇ scaling·L, and scaling is the least
// positive integer making scaling·L integral.
struct SymplecticBasis {
  std::vector<std::pair<RatVec, RatVec>> pairs;
  Int scaling = 1;
  IntMatrix complement;  // k × d_z
};

SymplecticBasis symplectic_basis(const GroupSpec& s);

// Automorphism whose twisted conjugacy growth carries a log factor: the
// identity when the quotient by the center is a single hyperbolic plane,
// otherwise a unipotent shear on the first two hyperbolic pairs and a
// fixed-point-free symplectic map on the remaining ones, transported to
// standard coordinates so that Z(G)/G₂ is fixed pointwise. The result has
// eps = +1, vanishing central defect on the radical, and classifies as
// (d_c − r_c, log) with d_c − r_c = 2 + d_zc.
Automorphism build_log_automorphism(const GroupSpec& s);

}  // namespace tcg
