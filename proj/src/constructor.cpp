#include "tcg/constructor.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace tcg {

namespace {

// Congruence reduction of a nondegenerate skew form: UᵀWU = ⊕ [[0,dᵢ],[−dᵢ,0]]
// with dᵢ > 0 (no divisibility chain). Classic pivot descent: the smallest
// nonzero entry of the trailing block becomes the pivot, cross entries are
// reduced modulo it, and any nonzero remainder restarts the block with a
// strictly smaller pivot, so the loop terminates.
IntMatrix skew_block_diagonalize(IntMatrix w, std::vector<Int>& divisors) {
  const std::size_t d = w.rows();
  require(d % 2 == 0, "skew_block_diagonalize: nondegenerate skew forms have even rank");
  IntMatrix u = IntMatrix::identity(d);
  auto swap_both = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    w.swap_cols(a, b);
    w.swap_rows(a, b);
    u.swap_cols(a, b);
  };
  auto addmul_both = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    w.addmul_col(dst, src, q);
    w.addmul_row(dst, src, q);
    u.addmul_col(dst, src, q);
  };
  divisors.clear();
  for (std::size_t t = 0; t < d; t += 2) {
    for (;;) {
      std::size_t bi = 0, bj = 0;
      Int best = 0;
      for (std::size_t i = t; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
          Int v = abs(w(i, j));
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            bi = i;
            bj = j;
          }
        }
      require(best != 0, "skew_block_diagonalize: form is degenerate");
      swap_both(t, bi);
      swap_both(t + 1, bj);
      if (w(t, t + 1) < 0) {
        w.negate_col(t + 1);
        w.negate_row(t + 1);
        u.negate_col(t + 1);
      }
      const Int p = w(t, t + 1);
      bool clean = true;
      for (std::size_t j = t + 2; j < d; ++j) {
        // Column j shifts by q·w(t,t+1) against row t and by −q·w(t,t+1)
        // against row t+1; the two updates do not interact.
        addmul_both(j, t + 1, -fdiv(w(t, j), p));
        addmul_both(j, t, fdiv(w(t + 1, j), p));
        if (w(t, j) != 0 || w(t + 1, j) != 0) clean = false;
      }
      if (clean) {
        divisors.push_back(p);
        break;
      }
    }
  }
  return u;
}

struct QuotientData {
  Lattice radical;       // Z(G)/G₂, saturated kernel of Ω
  IntMatrix complement;  // k × d_z, extends the radical basis to a basis of ℤ^k
  IntMatrix w;           // induced skew form on the complement
};

QuotientData quotient_form(const GroupSpec& s) {
  QuotientData qd;
  qd.radical = kernel_basis(s.omega);
  const std::size_t d_zc = qd.radical.rank();
  if (d_zc == 0) {
    qd.complement = IntMatrix::identity(s.k);
  } else {
    SnfResult sn = snf(qd.radical.basis());
    qd.complement = inverse_unimodular(sn.u).cols_range(d_zc, s.k);
  }
  qd.w = qd.complement.transposed() * s.omega * qd.complement;
  return qd;
}

}  // namespace

SymplecticBasis symplectic_basis(const GroupSpec& s) {
  s.validate();
  QuotientData qd = quotient_form(s);
  const std::size_t d = qd.w.rows();
  std::vector<Int> div;
  IntMatrix u = skew_block_diagonalize(qd.w, div);
  SymplecticBasis out;
  out.complement = qd.complement;
  // Columns of a unimodular matrix are primitive, so q_i = (col)/d_i has a
  // coordinate with exact denominator d_i and lcm(d_i) is the least scaling.
  for (const Int& dv : div) out.scaling = lcm(out.scaling, dv);
  for (std::size_t i = 0; i + 1 < d; i += 2) {
    IntVec p = u.col(i), q = u.col(i + 1);
    RatVec pr(d), qr(d);
    for (std::size_t r = 0; r < d; ++r) {
      pr[r] = Rat(p[r]);
      qr[r] = Rat(q[r], div[i / 2]);
    }
    out.pairs.emplace_back(std::move(pr), std::move(qr));
  }
  return out;
}

Automorphism build_log_automorphism(const GroupSpec& s) {
  s.validate();
  QuotientData qd = quotient_form(s);
  const std::size_t k = s.k;
  const std::size_t d_zc = qd.radical.rank(), d_z = k - d_zc;

  Automorphism out;
  if (d_z == 2) {
    // A single hyperbolic plane: the identity already carries the log factor.
    out = identity_automorphism(s);
  } else {
    std::vector<Int> div;
    IntMatrix u = skew_block_diagonalize(qd.w, div);
    Int m = 1;
    for (const Int& dv : div) m = lcm(m, dv);
    // Action in the scaled pair basis (p_i, d_i·q_i): shear [[1,m],[0,1]] on
    // the first two pairs, [[1−2m+2m², 2m²],[2m², 1+2m+2m²]] (determinant 1,
    // no eigenvalue 1) on the rest. Conjugating a block by diag(1, d_i)
    // multiplies the corners by d_i^{±1}; d_i | m keeps everything integral.
    IntMatrix t = IntMatrix::identity(d_z);
    for (std::size_t i = 0; i < d_z / 2; ++i) {
      const Int& dv = div[i];
      const std::size_t a = 2 * i, b = 2 * i + 1;
      if (i < 2) {
        t(a, b) = m * dv;
      } else {
        const Int m2 = 2 * m * m;
        t(a, a) = 1 - 2 * m + m2;
        t(a, b) = m2 * dv;
        t(b, a) = m2 / dv;
        t(b, b) = 1 + 2 * m + m2;
      }
    }
    IntMatrix a_q = u * t * inverse_unimodular(u);
    IntMatrix basis = d_zc == 0 ? qd.complement
                                : IntMatrix::hcat(qd.radical.basis(), qd.complement);
    IntMatrix block(k, k);
    for (std::size_t i = 0; i < d_zc; ++i) block(i, i) = 1;
    for (std::size_t i = 0; i < d_z; ++i)
      for (std::size_t j = 0; j < d_z; ++j) block(d_zc + i, d_zc + j) = a_q(i, j);
    out.m = basis * block * inverse_unimodular(basis);
    out.eps = 1;
    // δ(a) = q(M·a) − q(a) mod 2 is linear because M preserves ω exactly;
    // matching it on the adapted basis, with zeros on the fixed radical,
    // matches it everywhere.
    IntVec vals(k);
    for (std::size_t j = 0; j < d_z; ++j) {
      IntVec aj = qd.complement.col(j);
      vals[d_zc + j] = fmod(s.parity(out.m.mul(aj)) - s.parity(aj), Int(2));
    }
    auto pp = solve_z(basis.transposed(), vals);
    require(pp.has_value(), "build_log_automorphism: parity lift failed");
    out.psi_prime = *pp;
  }

  validate(s, out);
  InvariantReport rep = invariants(s, out);
  require(rep.frak_d == 2 && rep.r_zc == 0 && rep.degenerate &&
              rep.growth_exponent == 2 + rep.d_zc && rep.growth_factor == GrowthFactor::log,
          "build_log_automorphism: postcondition failed");
  return out;
}

}  // namespace tcg
