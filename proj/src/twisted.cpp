#include "tcg/twisted.hpp"

#include <algorithm>
#include <utility>

namespace tcg {

namespace {

// x reduced into [0, 4) as a machine integer.
long long mod4(const Int& x) { return fmod(x, Int(4)).convert_to<long long>(); }

IntMatrix identity_minus(const IntMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Int(i == j ? 1 : 0) - m(i, j);
  return r;
}

}  // namespace

TwistedContext::TwistedContext(GroupSpec spec, Automorphism psi)
    : spec_(std::move(spec)), psi_(std::move(psi)) {
  report_ = invariants(spec_, psi_);
  id_minus_m_ = identity_minus(psi_.m);
  triple_ = transversality_triple(image_lattice(id_minus_m_), spec_.k);
  init();
}

TwistedContext::TwistedContext(GroupSpec spec, Automorphism psi, TransversalityTriple triple)
    : spec_(std::move(spec)), psi_(std::move(psi)) {
  report_ = invariants(spec_, psi_);
  id_minus_m_ = identity_minus(psi_.m);
  require(triple.i == image_lattice(id_minus_m_),
          "twisted: triple must be built from the image of psi_c - id");
  triple_ = std::move(triple);
  init();
}

void TwistedContext::init() {
  conj_solver_.emplace(id_minus_m_);
  kernel_ = conj_solver_->kernel();
  kernel_cols_.clear();
  for (std::size_t t = 0; t < kernel_.rank(); ++t) kernel_cols_.push_back(kernel_.basis().col(t));
  sum_solver_.emplace(IntMatrix::hcat(triple_.i.basis(), triple_.j.basis()));

  // Machine copies mod 4 feed the eps = -1 residue enumeration.
  const std::size_t k = spec_.k;
  m4_m_.assign(k * k, 0);
  m4_omega_.assign(k * k, 0);
  m4_q_.assign(k * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      m4_m_[i * k + j] = mod4(psi_.m(i, j));
      m4_omega_[i * k + j] = mod4(spec_.omega(i, j));
      m4_q_[i * k + j] = mod4(spec_.parity_quadratic(i, j));
    }
  m4_l_.assign(k, 0);
  m4_psi_.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    m4_l_[i] = mod4(spec_.parity_linear[i]);
    m4_psi_[i] = mod4(psi_.psi_prime[i]);
  }
  m4_kernel_.clear();
  for (const IntVec& kb : kernel_cols_) {
    std::vector<long long> row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = mod4(kb[i]);
    m4_kernel_.push_back(std::move(row));
  }
}

Int TwistedContext::central_drift(const IntVec& v, const IntVec& a) const {
  IntVec mv = psi_.m.mul(v);
  return spec_.omega_pair(v, a) - spec_.omega_pair(v, mv) - spec_.omega_pair(a, mv) -
         dot_vec(psi_.psi_prime, v);
}

IntVec TwistedContext::shift_row(const IntVec& a) const {
  IntVec lam(kernel_cols_.size());
  for (std::size_t t = 0; t < kernel_cols_.size(); ++t)
    lam[t] = 2 * spec_.omega_pair(kernel_cols_[t], a) - dot_vec(psi_.psi_prime, kernel_cols_[t]);
  return lam;
}

Element TwistedContext::twisted_conjugate(const Element& w, const Element& g) const {
  require(spec_.in_g(w) && spec_.in_g(g), "twisted_conjugate: arguments must lie in G");
  return multiply(spec_, multiply(spec_, w, g), inverse(spec_, apply(spec_, psi_, w)));
}

Int TwistedContext::center_shift_gcd(const IntVec& a) const {
  require(psi_.eps == 1, "center_shift_gcd: eps = -1 has a different shift structure");
  require(a.size() == spec_.k, "center_shift_gcd: dimension mismatch");
  Int g = 0;
  for (const Int& lam : shift_row(a)) g = gcd(g, lam);
  return g;
}

std::pair<bool, std::optional<Element>> TwistedContext::decide(const Element& g,
                                                               const Element& h) const {
  require(spec_.in_g(g) && spec_.in_g(h), "decide: arguments must lie in G");
  auto v0 = conj_solver_->solve(sub_vec(h.a, g.a));
  if (!v0) return {false, std::nullopt};

  if (psi_.eps == 1) {
    // Conjugate to the target abelianization, then bridge the remaining
    // center difference with kernel shifts (a gcd condition).
    Element w0{*v0, spec_.parity(*v0)};
    Element g1 = twisted_conjugate(w0, g);
    Int delta = h.c - g1.c;
    Element w = w0;
    if (delta != 0) {
      IntVec lam = shift_row(h.a);
      IntMatrix row(1, lam.size());
      for (std::size_t t = 0; t < lam.size(); ++t) row(0, t) = lam[t];
      auto y = solve_z(row, IntVec{delta});
      if (!y) return {false, std::nullopt};
      IntVec u(spec_.k, Int(0));
      for (std::size_t t = 0; t < lam.size(); ++t)
        if ((*y)[t] != 0)
          for (std::size_t q = 0; q < spec_.k; ++q) u[q] += (*y)[t] * kernel_cols_[t][q];
      w = multiply(spec_, Element{u, spec_.parity(u)}, w0);
    }
    require(twisted_conjugate(w, g) == h, "decide: witness failed verification");
    return {true, w};
  }

  // eps = -1: the reachable centers over a fixed conjugator coset are
  // 4-periodic in every kernel coefficient, so scanning residues is exact.
  const std::size_t r = kernel_cols_.size();
  require(r <= 12, "decide: kernel rank too large for the residue enumeration");
  std::vector<int> digit(r, 0);
  while (true) {
    IntVec v = *v0;
    for (std::size_t t = 0; t < r; ++t)
      if (digit[t] != 0)
        for (std::size_t q = 0; q < spec_.k; ++q) v[q] += digit[t] * kernel_cols_[t][q];
    Int f = central_drift(v, g.a);
    if (fmod(h.c - g.c - f - 2 * spec_.parity(v), Int(4)) == 0) {
      Element w{v, (h.c - g.c - f) / 2};
      require(twisted_conjugate(w, g) == h, "decide: witness failed verification");
      return {true, w};
    }
    std::size_t p = 0;
    while (p < r && digit[p] == 3) digit[p++] = 0;
    if (p == r) break;
    ++digit[p];
  }
  return {false, std::nullopt};
}

CanonicalForm TwistedContext::canonical_form(const Element& g) const {
  require(spec_.in_g(g), "canonical_form: argument must lie in G");
  // Reduce the abelianization to its unique reps + J representative mod I.
  IntVec rep = triple_.sum.reduce(g.a);
  auto xy = sum_solver_->solve(sub_vec(g.a, rep));
  require(xy.has_value(), "canonical_form: coset split failed");
  IntVec a_star = std::move(rep);
  const IntMatrix& jb = triple_.j.basis();
  const std::size_t ir = triple_.i.rank();
  for (std::size_t t = 0; t < triple_.j.rank(); ++t) {
    const Int& co = (*xy)[ir + t];
    if (co != 0)
      for (std::size_t q = 0; q < spec_.k; ++q) a_star[q] += co * jb(q, t);
  }
  auto v = conj_solver_->solve(sub_vec(a_star, g.a));
  require(v.has_value(), "canonical_form: representative unreachable");

  if (psi_.eps == 1) {
    Int b1 = g.c + central_drift(*v, g.a);
    Int ga = 0;
    for (const Int& lam : shift_row(a_star)) ga = gcd(ga, lam);
    Int bs = ga > 0 ? fmod(b1, ga) : b1;
    return CanonicalForm{std::move(a_star), std::move(bs), std::move(ga)};
  }

  // eps = -1: minimum over the reachable center residues mod 4, computed in
  // machine integers (everything is 4-periodic in the kernel coefficients).
  const std::size_t k = spec_.k;
  const std::size_t r = kernel_cols_.size();
  require(r <= 12, "canonical_form: kernel rank too large for the residue enumeration");
  std::vector<long long> am(k), v0m(k), vm(k), mv(k), wa(k), wmv(k);
  for (std::size_t q = 0; q < k; ++q) {
    am[q] = mod4(g.a[q]);
    v0m[q] = mod4((*v)[q]);
  }
  for (std::size_t q = 0; q < k; ++q) {
    long long s = 0;
    for (std::size_t j = 0; j < k; ++j) s += m4_omega_[q * k + j] * am[j];
    wa[q] = s;
  }
  const long long bc = mod4(g.c);
  long long best = 4;
  std::vector<int> digit(r, 0);
  while (true) {
    for (std::size_t q = 0; q < k; ++q) {
      long long s = v0m[q];
      for (std::size_t t = 0; t < r; ++t) s += digit[t] * m4_kernel_[t][q];
      vm[q] = s & 3;
    }
    for (std::size_t q = 0; q < k; ++q) {
      long long s = 0;
      for (std::size_t j = 0; j < k; ++j) s += m4_m_[q * k + j] * vm[j];
      mv[q] = s & 3;
    }
    for (std::size_t q = 0; q < k; ++q) {
      long long s = 0;
      for (std::size_t j = 0; j < k; ++j) s += m4_omega_[q * k + j] * mv[j];
      wmv[q] = s;
    }
    long long f = 0, qv = 0;
    for (std::size_t q = 0; q < k; ++q) {
      f += vm[q] * wa[q] - vm[q] * wmv[q] - am[q] * wmv[q] - m4_psi_[q] * vm[q];
      long long s = 0;
      for (std::size_t j = 0; j < k; ++j) s += m4_q_[q * k + j] * vm[j];
      qv += vm[q] * s + m4_l_[q] * vm[q];
    }
    qv &= 1;
    long long res = ((bc + f + 2 * qv) % 4 + 4) % 4;
    best = std::min(best, res);
    std::size_t p = 0;
    while (p < r && digit[p] == 3) digit[p++] = 0;
    if (p == r) break;
    ++digit[p];
  }
  return CanonicalForm{std::move(a_star), Int(best), Int(4)};
}

ThetaSystem TwistedContext::theta_system(const IntVec& a) const {
  require(report_.degenerate, "theta_system: requires a degenerate automorphism");
  require(a.size() == spec_.k, "theta_system: dimension mismatch");
  const std::size_t t = triple_.j.rank();
  const std::size_t fd = report_.frak_d;
  const std::size_t r = kernel_cols_.size();
  const IntMatrix& jb = triple_.j.basis();

  // Pairings of the kernel against the J basis, one row per kernel vector.
  IntMatrix w(r, t);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < t; ++j) w(i, j) = spec_.omega_pair(kernel_cols_[i], jb.col(j));

  // J0 = common kernel of those pairings (isolated in J), J1 a complement.
  Lattice j0 = kernel_basis(w);
  require(j0.rank() == t - fd, "theta_system: isolated part has unexpected rank");
  IntMatrix comp(t, 0);
  if (fd == t) {
    comp = IntMatrix::identity(t);
  } else if (fd > 0) {
    SnfResult s = snf(j0.basis());
    for (std::size_t i = 0; i < j0.rank(); ++i)
      require(s.d(i, i) == 1, "theta_system: isolated part is not saturated");
    comp = inverse_unimodular(s.u).cols_range(j0.rank(), t);
  }
  IntMatrix p = fd == t ? comp : IntMatrix::hcat(comp, j0.basis());

  // Kernel functionals doubled and written in the dual basis of J1.
  IntMatrix theta_cols(fd, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < fd; ++i) {
      Int s = 0;
      for (std::size_t q = 0; q < t; ++q) s += w(j, q) * p(q, i);
      theta_cols(i, j) = 2 * s;
    }
  Lattice two_k = Lattice::from_generators(fd, theta_cols);
  require(two_k.rank() == fd, "theta_system: kernel functionals drop rank");

  ThetaSystem out;
  out.v.reserve(t);
  for (std::size_t i = 0; i < t; ++i) out.v.push_back(jb.mul(p.col(i)));
  if (fd == 0) return out;

  Int dabs = two_k.basis().det();
  dabs = abs(dabs);
  IntMatrix deltas(fd, fd);
  for (std::size_t i = 0; i < fd; ++i) {
    // Minimal positive multiple of the i-th dual vector lying in 2K.
    IntVec target(fd, Int(0));
    target[i] = dabs;
    auto y = two_k.coefficients(target);
    require(y.has_value(), "theta_system: index multiple escaped the lattice");
    Int delta = 1;
    for (const Int& yj : *y) {
      Int gg = gcd(dabs, yj);
      Int term = dabs / gg;
      delta = lcm(delta, term);
    }
    deltas(i, i) = delta;
    target[i] = delta;
    auto coeff = solve_z(theta_cols, target);
    require(coeff.has_value(), "theta_system: dual vector not realized by the kernel");
    IntVec ki(spec_.k, Int(0));
    for (std::size_t j = 0; j < r; ++j)
      if ((*coeff)[j] != 0)
        for (std::size_t q = 0; q < spec_.k; ++q) ki[q] += (*coeff)[j] * kernel_cols_[j][q];
    // The realized functional is delta on v_i and zero on every other v_j.
    for (std::size_t j = 0; j < t; ++j) {
      Int pair = 2 * spec_.omega_pair(ki, out.v[j]);
      require(pair == (j == i ? delta : Int(0)), "theta_system: dual realization check failed");
    }
    out.k.push_back(std::move(ki));
    out.slope.push_back(delta);
    out.offset.push_back(2 * spec_.omega_pair(out.k.back(), a) -
                         dot_vec(psi_.psi_prime, out.k.back()));
  }
  auto index = lattice_index(Lattice::from_generators(fd, deltas), two_k);
  require(index.has_value(), "theta_system: index of the diagonal sublattice is infinite");
  out.d_index = *index;
  return out;
}

KernelDualModule TwistedContext::kernel_dual_module() const {
  require(report_.degenerate, "kernel_dual_module: requires a degenerate automorphism");
  const std::size_t t = triple_.j.rank();
  const std::size_t r = kernel_cols_.size();
  const IntMatrix& jb = triple_.j.basis();
  IntMatrix rows(r, t + 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < t; ++j)
      rows(i, j) = 2 * spec_.omega_pair(kernel_cols_[i], jb.col(j));
    rows(i, t) = -dot_vec(psi_.psi_prime, kernel_cols_[i]);
  }
  Lattice span = Lattice::from_generators(t + 1, rows.transposed());
  KernelDualModule out;
  out.rank = span.rank();
  out.rows = span.basis().transposed();
  return out;
}

Element twisted_conjugate(const GroupSpec& spec, const Automorphism& psi, const Element& w,
                          const Element& g) {
  validate(spec, psi);
  require(spec.in_g(w) && spec.in_g(g), "twisted_conjugate: arguments must lie in G");
  return multiply(spec, multiply(spec, w, g), inverse(spec, apply(spec, psi, w)));
}

Int center_shift_gcd(const GroupSpec& spec, const Automorphism& psi, const IntVec& a) {
  return TwistedContext(spec, psi).center_shift_gcd(a);
}

std::pair<bool, std::optional<Element>> is_twisted_conjugate(const GroupSpec& spec,
                                                             const Automorphism& psi,
                                                             const Element& g, const Element& h) {
  return TwistedContext(spec, psi).decide(g, h);
}

CanonicalForm canonical_form(const GroupSpec& spec, const Automorphism& psi,
                             const TransversalityTriple& triple, const Element& g) {
  return TwistedContext(spec, psi, triple).canonical_form(g);
}

ThetaSystem theta_system(const GroupSpec& spec, const Automorphism& psi,
                         const TransversalityTriple& triple, const IntVec& a) {
  return TwistedContext(spec, psi, triple).theta_system(a);
}

KernelDualModule kernel_dual_module(const GroupSpec& spec, const Automorphism& psi,
                                    const TransversalityTriple& triple) {
  return TwistedContext(spec, psi, triple).kernel_dual_module();
}

}  // namespace tcg
