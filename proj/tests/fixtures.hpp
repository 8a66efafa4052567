#pragma once

#include "tcg/autom.hpp"
#include "tcg/nilgroup.hpp"

// The (group, automorphism) matrix exercised throughout the suite: H₃, H₅,
// and a k=3 spec whose third coordinate is central.

namespace fixtures {

using namespace tcg;

inline GroupSpec k3_central() {
  GroupSpec s;
  s.k = 3;
  s.omega = IntMatrix::from_rows({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
  s.parity_quadratic = IntMatrix::from_rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
  s.parity_linear = IntVec(3, Int(0));
  s.validate();
  return s;
}

inline Automorphism aut(std::initializer_list<std::initializer_list<long long>> m, int eps,
                        std::initializer_list<long long> psi) {
  return Automorphism{IntMatrix::from_rows(m), eps, make_vec(psi)};
}

// ψ′ entries are forced mod 2 by q(M·eᵢ) − q(eᵢ); the shear and the
// M−I-invertible matrix need the odd entry to stay inside Aut(G).
inline Automorphism h3_shear() { return aut({{1, 1}, {0, 1}}, 1, {0, 1}); }
inline Automorphism h3_flip() { return aut({{1, 0}, {0, -1}}, -1, {0, 0}); }
inline Automorphism h3_anosov() { return aut({{2, 1}, {1, 1}}, 1, {0, 1}); }
inline Automorphism h3_flip_shifted() { return aut({{1, 0}, {0, -1}}, -1, {2, 0}); }

inline Automorphism k3_shear() { return aut({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, 1, {0, 1, 0}); }
inline Automorphism k3_flip() { return aut({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}, -1, {0, 0, 0}); }
inline Automorphism k3_anosov() { return aut({{2, 1, 0}, {1, 1, 0}, {0, 0, -1}}, 1, {0, 1, 0}); }
inline Automorphism k3_central_shift() {
  return aut({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 1, {0, 0, 2});
}

inline Automorphism h5_shear() {
  return aut({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, 1, {0, 1, 0, 0});
}
inline Automorphism h5_flip() {
  return aut({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}, -1, {0, 0, 0, 0});
}
inline Automorphism h5_anosov() {
  return aut({{2, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 1}}, 1, {0, 1, 0, 1});
}

}  // namespace fixtures
