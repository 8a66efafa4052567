#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tcg/autom.hpp"
#include "tcg/nilgroup.hpp"
#include "tcg/ztlinalg.hpp"

namespace tcg {

// Canonical representative of a twisted conjugacy class: the class of g is
// determined by the reduced abelianisation a_star together with the residue
// b_star of the central coordinate.  g_a is the modulus that applies at
// a_star (0 means the central coordinate is an exact invariant).
struct CanonicalForm {
  IntVec a_star;
  Int b_star;
  Int g_a;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

// Affine description of the central shifts reachable inside one fibre over
// a + J: theta[i](lambda) = offset[i] + slope[i] * lambda, one map per
// direction v[i] of the non-isolated part of J.  slope[i] > 0, and d_index
// bounds the defect of the sandwich from below.
struct ThetaSystem {
  std::vector<IntVec> v;       // ordered basis of J; the first maps.size()
                               // vectors span the non-isolated part
  std::vector<IntVec> k;       // k[i] realizes the i-th functional
  std::vector<Int> slope;      // slope[i] = delta_i
  std::vector<Int> offset;     // offset[i] = 2 omega(k[i], a) - psi'(k[i])
  Int d_index = 1;
};

// The module of affine maps J -> Z of the form v |-> 2 omega(k, v) - psi'(k)
// with k ranging over ker(psi_c - id).  Row t holds the map induced by the
// t-th kernel basis vector: first the linear coefficients in the J basis,
// then the constant term.
struct KernelDualModule {
  IntMatrix rows;
  std::size_t rank = 0;
};

// Precomputes everything needed to answer repeated twisted conjugacy
// queries against a fixed (group, automorphism) pair.
class TwistedContext {
 public:
  TwistedContext(GroupSpec spec, Automorphism psi);
  TwistedContext(GroupSpec spec, Automorphism psi, TransversalityTriple triple);

  const GroupSpec& group() const { return spec_; }
  const Automorphism& aut() const { return psi_; }
  const InvariantReport& report() const { return report_; }
  const TransversalityTriple& triple() const { return triple_; }
  const Lattice& kernel() const { return kernel_; }

  Element twisted_conjugate(const Element& w, const Element& g) const;
  Int center_shift_gcd(const IntVec& a) const;
  std::pair<bool, std::optional<Element>> decide(const Element& g, const Element& h) const;
  CanonicalForm canonical_form(const Element& g) const;
  ThetaSystem theta_system(const IntVec& a) const;
  KernelDualModule kernel_dual_module() const;

 private:
  void init();
  // The central coordinate of w g psi(w)^{-1} minus (g.c + (1 - eps) w.c),
  // as a function of v = w.a alone.
  Int central_drift(const IntVec& v, const IntVec& a) const;
  IntVec shift_row(const IntVec& a) const;  // 2 omega(k_t, a) - psi'(k_t)

  GroupSpec spec_;
  Automorphism psi_;
  InvariantReport report_;
  IntMatrix id_minus_m_;
  std::optional<LinearSystem> conj_solver_;  // (I - M) v = rhs
  Lattice kernel_;                           // ker(M - I), saturated
  std::vector<IntVec> kernel_cols_;
  TransversalityTriple triple_;              // built from image(M - I)
  std::optional<LinearSystem> sum_solver_;   // [I basis | J basis] x = rhs
  // machine copies reduced mod 4, for the eps = -1 residue scan
  std::vector<long long> m4_m_, m4_omega_, m4_q_, m4_l_, m4_psi_;
  std::vector<std::vector<long long>> m4_kernel_;
};

Element twisted_conjugate(const GroupSpec& spec, const Automorphism& psi, const Element& w,
                          const Element& g);
Int center_shift_gcd(const GroupSpec& spec, const Automorphism& psi, const IntVec& a);
std::pair<bool, std::optional<Element>> is_twisted_conjugate(const GroupSpec& spec,
                                                             const Automorphism& psi,
                                                             const Element& g, const Element& h);
CanonicalForm canonical_form(const GroupSpec& spec, const Automorphism& psi,
                             const TransversalityTriple& triple, const Element& g);
ThetaSystem theta_system(const GroupSpec& spec, const Automorphism& psi,
                         const TransversalityTriple& triple, const IntVec& a);
KernelDualModule kernel_dual_module(const GroupSpec& spec, const Automorphism& psi,
                                    const TransversalityTriple& triple);

}  // namespace tcg
