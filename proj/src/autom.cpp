#include "tcg/autom.hpp"

#include <sstream>

namespace tcg {

Automorphism identity_automorphism(const GroupSpec& s) {
  return Automorphism{IntMatrix::identity(s.k), 1, IntVec(s.k, Int(0))};
}

std::vector<std::string> validation_errors(const GroupSpec& s, const Automorphism& psi) {
  std::vector<std::string> errs;
  if (psi.m.rows() != s.k || psi.m.cols() != s.k) {
    errs.push_back("M must be k×k");
    return errs;
  }
  if (psi.psi_prime.size() != s.k) {
    errs.push_back("psi_prime must have length k");
    return errs;
  }
  if (psi.eps != 1 && psi.eps != -1) {
    errs.push_back("eps must be +1 or -1");
    return errs;
  }
  Int d = psi.m.det();
  if (d != 1 && d != -1) errs.push_back("M must be unimodular, det = " + d.str());
  IntMatrix lhs = psi.m.transposed() * s.omega * psi.m;
  IntMatrix rhs = s.omega;
  if (psi.eps == -1)
    for (std::size_t i = 0; i < s.k; ++i)
      for (std::size_t j = 0; j < s.k; ++j) rhs(i, j) = -rhs(i, j);
  if (!(lhs == rhs)) errs.push_back("MᵀΩM = eps·Ω violated");
  // Parity: images of the standard lifts must land in G. The defect
  // a ↦ ψ′·a − (q(Ma) − q(a)) is linear mod 2 once the ω-constraint holds,
  // so checking basis vectors suffices.
  for (std::size_t i = 0; i < s.k; ++i) {
    IntVec e(s.k, Int(0));
    e[i] = 1;
    Int defect = psi.psi_prime[i] - (s.parity(psi.m.col(i)) - s.parity(e));
    if (fmod(defect, Int(2)) != 0) {
      std::ostringstream os;
      os << "parity broken on basis vector " << i
         << ": psi_prime entry must be ≡ q(M·e) − q(e) (mod 2)";
      errs.push_back(os.str());
    }
  }
  return errs;
}

void validate(const GroupSpec& s, const Automorphism& psi) {
  auto errs = validation_errors(s, psi);
  if (errs.empty()) return;
  std::string msg = "invalid automorphism:";
  for (const auto& e : errs) msg += "\n  - " + e;
  fail(msg);
}

Element apply(const GroupSpec& s, const Automorphism& psi, const Element& g) {
  require(g.a.size() == s.k, "apply: dimension mismatch");
  return Element{psi.m.mul(g.a), Int(psi.eps) * g.c + dot_vec(psi.psi_prime, g.a)};
}

Automorphism compose(const GroupSpec& s, const Automorphism& f, const Automorphism& g) {
  (void)s;
  Automorphism out;
  out.m = f.m * g.m;
  out.eps = f.eps * g.eps;
  // (f∘g)(a,c) picks up f.eps·(ψ′_g·a) + ψ′_f·(M_g a).
  out.psi_prime = add_vec(scale_vec(Int(f.eps), g.psi_prime), g.m.transposed().mul(f.psi_prime));
  return out;
}

Automorphism invert(const GroupSpec& s, const Automorphism& psi) {
  (void)s;
  Automorphism out;
  out.m = inverse_unimodular(psi.m);
  out.eps = psi.eps;
  out.psi_prime = scale_vec(Int(-psi.eps), out.m.transposed().mul(psi.psi_prime));
  return out;
}

namespace {

// (M − I) as a matrix, shared by several ranks below.
IntMatrix m_minus_id(const Automorphism& psi) {
  IntMatrix d = psi.m;
  for (std::size_t i = 0; i < d.rows(); ++i) d(i, i) -= 1;
  return d;
}

// Fixed vectors of M inside the radical of Ω, as ambient-coordinate columns.
IntMatrix central_fixed_vectors(const GroupSpec& s, const Automorphism& psi,
                                const Lattice& radical) {
  std::size_t r = radical.rank();
  if (r == 0) return IntMatrix(s.k, 0);
  // M preserves the radical; express (M−I)·B in the radical basis and take
  // the kernel there.
  IntMatrix mb = m_minus_id(psi) * radical.basis();
  IntMatrix x(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    auto c = radical.coefficients(mb.col(j));
    require(c.has_value(), "invariants: radical not M-invariant");
    x.set_col(j, *c);
  }
  Lattice ker = kernel_basis(x);
  return radical.basis() * ker.basis();
}

}  // namespace

InvariantReport invariants(const GroupSpec& s, const Automorphism& psi) {
  validate(s, psi);
  InvariantReport rep;
  rep.d_c = s.k;
  IntMatrix mi = m_minus_id(psi);
  rep.r_c = rank_z(mi);

  Lattice radical = kernel_basis(s.omega);  // Z(G)/G₂, saturated
  rep.d_zc = radical.rank();
  rep.d_z = s.k - rep.d_zc;

  if (rep.d_zc > 0) {
    IntMatrix mb = mi * radical.basis();
    IntMatrix x(rep.d_zc, rep.d_zc);
    for (std::size_t j = 0; j < rep.d_zc; ++j) {
      auto c = radical.coefficients(mb.col(j));
      require(c.has_value(), "invariants: radical not M-invariant");
      x.set_col(j, *c);
    }
    rep.r_zc = rank_z(x);
  }

  // ψ_z on the quotient by the radical, via a complement basis C:
  // M·C = B·α + C·β with [B|C] unimodular, so β is the induced matrix.
  if (rep.d_z > 0) {
    IntMatrix comp;
    if (rep.d_zc == 0) {
      comp = IntMatrix::identity(s.k);
    } else {
      SnfResult sn = snf(radical.basis());
      comp = inverse_unimodular(sn.u).cols_range(rep.d_zc, s.k);
    }
    IntMatrix basis = IntMatrix::hcat(radical.basis(), comp);
    IntMatrix binv = inverse_unimodular(basis);
    IntMatrix coords = binv * (psi.m * comp);  // stacked (α; β)
    IntMatrix beta(rep.d_z, rep.d_z);
    for (std::size_t i = 0; i < rep.d_z; ++i)
      for (std::size_t j = 0; j < rep.d_z; ++j) beta(i, j) = coords(rep.d_zc + i, j);
    for (std::size_t i = 0; i < rep.d_z; ++i) beta(i, i) -= 1;
    rep.r_z = rank_z(beta);
  }

  rep.frak_d = (rep.d_c - rep.r_c) - (rep.d_zc - rep.r_zc);

  rep.degenerate = psi.eps == 1;
  if (rep.degenerate) {
    IntMatrix fixed = central_fixed_vectors(s, psi, radical);
    for (std::size_t j = 0; j < fixed.cols(); ++j)
      if (dot_vec(psi.psi_prime, fixed.col(j)) != 0) rep.degenerate = false;
  }

  rep.growth_exponent = rep.d_c - rep.r_c;
  if (!rep.degenerate) {
    rep.growth_factor = GrowthFactor::one;
  } else if (rep.frak_d >= 3) {
    rep.growth_factor = GrowthFactor::one;
  } else if (rep.frak_d == 2) {
    rep.growth_factor = GrowthFactor::log;
  } else if (rep.frak_d == 1) {
    rep.growth_factor = GrowthFactor::linear;
  } else {
    rep.growth_factor = GrowthFactor::quadratic;
  }
  return rep;
}

bool is_degenerate(const GroupSpec& s, const Automorphism& psi) {
  return invariants(s, psi).degenerate;
}

std::pair<std::size_t, GrowthFactor> classify(const GroupSpec& s, const Automorphism& psi) {
  InvariantReport rep = invariants(s, psi);
  return {rep.growth_exponent, rep.growth_factor};
}

std::pair<std::size_t, bool> fit_model(const InvariantReport& rep) {
  switch (rep.growth_factor) {
    case GrowthFactor::log:
      return {rep.growth_exponent, true};
    case GrowthFactor::linear:
      return {rep.growth_exponent + 1, false};
    case GrowthFactor::quadratic:
      return {rep.growth_exponent + 2, false};
    case GrowthFactor::one:
      break;
  }
  return {rep.growth_exponent, false};
}

std::size_t abelian_growth(std::size_t d, const IntMatrix& m_bar) {
  require(m_bar.rows() == d && m_bar.cols() == d, "abelian_growth: matrix must be d×d");
  IntMatrix i_minus = m_bar;
  for (std::size_t t = 0; t < d; ++t) i_minus(t, t) -= 1;
  return d - rank_z(i_minus);
}

std::string growth_factor_name(GrowthFactor f) {
  switch (f) {
    case GrowthFactor::one: return "1";
    case GrowthFactor::log: return "log(n)";
    case GrowthFactor::linear: return "n";
    default: return "n^2";
  }
}

}  // namespace tcg
