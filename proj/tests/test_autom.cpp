#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tcg/autom.hpp"

using namespace tcg;
using namespace fixtures;

namespace {

Element el(std::initializer_list<long long> a, long long c) {
  return Element{make_vec(a), Int(c)};
}

Element random_in_g(oracle::Rng& rng, const GroupSpec& s) {
  std::uniform_int_distribution<int> d(-5, 5);
  Element g;
  g.a.resize(s.k);
  for (auto& x : g.a) x = d(rng);
  g.c = s.parity(g.a) + 2 * Int(d(rng));
  return g;
}

// (total polynomial degree, log flag) of n^e · factor — the coarse growth
// order, comparable lexicographically.
std::pair<std::size_t, int> total_form(std::pair<std::size_t, GrowthFactor> cls) {
  switch (cls.second) {
    case GrowthFactor::log: return {cls.first, 1};
    case GrowthFactor::linear: return {cls.first + 1, 0};
    case GrowthFactor::quadratic: return {cls.first + 2, 0};
    default: return {cls.first, 0};
  }
}

// Transport (spec, psi) through a unimodular change of basis a ↦ P⁻¹a.
void change_basis(const IntMatrix& p, GroupSpec& s, Automorphism& psi) {
  IntMatrix pt = p.transposed(), pinv = inverse_unimodular(p);
  s.omega = pt * s.omega * p;
  s.parity_quadratic = pt * s.parity_quadratic * p;
  IntVec l = pt.mul(s.parity_linear);
  for (auto& x : l) x = fmod(x, Int(2));
  s.parity_linear = l;
  psi.m = pinv * psi.m * p;
  psi.psi_prime = pt.mul(psi.psi_prime);
}

}  // namespace

TEST_CASE("validate: fixed accept and reject cases") {
  auto [h3, g3] = standard_heisenberg(1);
  CHECK_NOTHROW(validate(h3, identity_automorphism(h3)));
  CHECK_NOTHROW(validate(h3, h3_flip()));
  CHECK_NOTHROW(validate(h3, h3_shear()));
  CHECK_NOTHROW(validate(h3, h3_anosov()));
  CHECK_NOTHROW(validate(h3, h3_flip_shifted()));

  // eps = −1 with M = identity forces Ω = −Ω
  Automorphism bad = identity_automorphism(h3);
  bad.eps = -1;
  CHECK(validation_errors(h3, bad).size() == 1);

  bad = aut({{2, 0}, {0, 1}}, 1, {0, 0});  // |det| ≠ 1 and ω-constraint broken
  CHECK(validation_errors(h3, bad).size() >= 2);

  // the shear without its parity-fixing ψ′ entry
  bad = aut({{1, 1}, {0, 1}}, 1, {0, 0});
  auto errs = validation_errors(h3, bad);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].find("parity") != std::string::npos);

  GroupSpec k3 = k3_central();
  CHECK_NOTHROW(validate(k3, k3_shear()));
  CHECK_NOTHROW(validate(k3, k3_flip()));
  CHECK_NOTHROW(validate(k3, k3_anosov()));
  CHECK_NOTHROW(validate(k3, k3_central_shift()));
  // odd central ψ′ entry breaks parity on e₃
  bad = aut({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 1, {0, 0, 1});
  CHECK(!validation_errors(k3, bad).empty());

  auto [h5, g5] = standard_heisenberg(2);
  CHECK_NOTHROW(validate(h5, h5_shear()));
  CHECK_NOTHROW(validate(h5, h5_flip()));
  CHECK_NOTHROW(validate(h5, h5_anosov()));
}

TEST_CASE("apply: fixed cases and homomorphism law") {
  auto [h3, g3] = standard_heisenberg(1);
  Element g = el({1, 1}, 1);
  CHECK(apply(h3, identity_automorphism(h3), g) == g);
  CHECK(apply(h3, h3_flip(), g) == el({1, -1}, -1));

  oracle::Rng rng(41);
  for (const auto& psi : {identity_automorphism(h3), h3_shear(), h3_flip(), h3_anosov()}) {
    for (int it = 0; it < 200; ++it) {
      Element x = random_in_g(rng, h3), y = random_in_g(rng, h3);
      CHECK(apply(h3, psi, multiply(h3, x, y)) ==
            multiply(h3, apply(h3, psi, x), apply(h3, psi, y)));
      CHECK(h3.in_g(apply(h3, psi, x)));
    }
  }
}

TEST_CASE("compose and invert") {
  auto [h3, g3] = standard_heisenberg(1);
  oracle::Rng rng(42);
  std::vector<Automorphism> pool = {identity_automorphism(h3), h3_shear(), h3_flip(),
                                    h3_anosov(), h3_flip_shifted()};
  for (const auto& f : pool) {
    for (const auto& g : pool) {
      Automorphism fg = compose(h3, f, g);
      CHECK_NOTHROW(validate(h3, fg));
      for (int it = 0; it < 20; ++it) {
        Element x = random_in_g(rng, h3);
        CHECK(apply(h3, fg, x) == apply(h3, f, apply(h3, g, x)));
      }
    }
    Automorphism inv = invert(h3, f);
    Automorphism round = compose(h3, f, inv);
    CHECK(round.m == IntMatrix::identity(2));
    CHECK(round.eps == 1);
    CHECK(is_zero_vec(round.psi_prime));
    // invariants of ψ∘ψ⁻¹ match the identity's
    InvariantReport a = invariants(h3, round), b = invariants(h3, identity_automorphism(h3));
    CHECK(a.frak_d == b.frak_d);
    CHECK(a.growth_exponent == b.growth_exponent);
    CHECK(a.growth_factor == b.growth_factor);
  }
}

TEST_CASE("invariants: fixed cases") {
  auto [h3, g3] = standard_heisenberg(1);
  InvariantReport r = invariants(h3, identity_automorphism(h3));
  CHECK(r.d_c == 2);
  CHECK(r.r_c == 0);
  CHECK(r.d_zc == 0);
  CHECK(r.d_z == 2);
  CHECK(r.frak_d == 2);
  CHECK(r.degenerate);

  r = invariants(h3, h3_shear());
  CHECK(r.r_c == 1);
  CHECK(r.frak_d == 1);

  GroupSpec k3 = k3_central();
  r = invariants(k3, identity_automorphism(k3));
  CHECK(r.d_zc == 1);
  CHECK(r.d_z == 2);
  CHECK(r.frak_d == 2);
  CHECK(r.r_z == 0);

  r = invariants(k3, k3_anosov());
  CHECK(r.r_c == 3);
  CHECK(r.r_zc == 1);
  CHECK(r.frak_d == 0);
  CHECK(r.degenerate);  // radical kernel is trivial, so the ψ′ clause is vacuous
}

TEST_CASE("is_degenerate: fixed cases") {
  auto [h3, g3] = standard_heisenberg(1);
  CHECK(is_degenerate(h3, identity_automorphism(h3)));
  CHECK(!is_degenerate(h3, h3_flip()));

  GroupSpec k3 = k3_central();
  CHECK(is_degenerate(k3, identity_automorphism(k3)));
  CHECK(!is_degenerate(k3, k3_central_shift()));  // ψ′ nonzero on the central kernel
  CHECK(is_degenerate(k3, k3_shear()));
}

TEST_CASE("classify: the acceptance matrix") {
  auto [h3, g3] = standard_heisenberg(1);
  auto [h5, g5] = standard_heisenberg(2);
  GroupSpec k3 = k3_central();

  CHECK(classify(h3, identity_automorphism(h3)) ==
        std::pair<std::size_t, GrowthFactor>{2, GrowthFactor::log});
  CHECK(classify(h3, h3_shear()) == std::pair<std::size_t, GrowthFactor>{1, GrowthFactor::linear});
  CHECK(classify(h3, h3_flip()) == std::pair<std::size_t, GrowthFactor>{1, GrowthFactor::one});
  CHECK(classify(h3, h3_anosov()) ==
        std::pair<std::size_t, GrowthFactor>{0, GrowthFactor::quadratic});
  CHECK(classify(h3, h3_flip_shifted()) ==
        std::pair<std::size_t, GrowthFactor>{1, GrowthFactor::one});

  CHECK(classify(k3, identity_automorphism(k3)) ==
        std::pair<std::size_t, GrowthFactor>{3, GrowthFactor::log});
  CHECK(classify(k3, k3_shear()) == std::pair<std::size_t, GrowthFactor>{2, GrowthFactor::linear});
  CHECK(classify(k3, k3_flip()) == std::pair<std::size_t, GrowthFactor>{2, GrowthFactor::one});
  CHECK(classify(k3, k3_anosov()) ==
        std::pair<std::size_t, GrowthFactor>{0, GrowthFactor::quadratic});
  CHECK(classify(k3, k3_central_shift()) ==
        std::pair<std::size_t, GrowthFactor>{3, GrowthFactor::one});

  CHECK(classify(h5, identity_automorphism(h5)) ==
        std::pair<std::size_t, GrowthFactor>{4, GrowthFactor::one});
  CHECK(classify(h5, h5_shear()) == std::pair<std::size_t, GrowthFactor>{3, GrowthFactor::one});
  CHECK(classify(h5, h5_flip()) == std::pair<std::size_t, GrowthFactor>{2, GrowthFactor::one});
  CHECK(classify(h5, h5_anosov()) ==
        std::pair<std::size_t, GrowthFactor>{0, GrowthFactor::quadratic});
}

TEST_CASE("twisted growth never exceeds untwisted growth") {
  auto [h3, g3] = standard_heisenberg(1);
  auto [h5, g5] = standard_heisenberg(2);
  GroupSpec k3 = k3_central();

  auto check_spec = [&](const GroupSpec& s, const std::vector<Automorphism>& psis) {
    auto untwisted = total_form(classify(s, identity_automorphism(s)));
    for (const auto& psi : psis) {
      auto tf = total_form(classify(s, psi));
      CHECK(tf <= untwisted);
      CHECK(invariants(s, psi).frak_d <= 100000);  // ≥ 0 by unsigned underflow guard
    }
  };
  check_spec(h3, {identity_automorphism(h3), h3_shear(), h3_flip(), h3_anosov(),
                  h3_flip_shifted()});
  check_spec(k3, {identity_automorphism(k3), k3_shear(), k3_flip(), k3_anosov(),
                  k3_central_shift()});
  check_spec(h5, {identity_automorphism(h5), h5_shear(), h5_flip(), h5_anosov()});
}

TEST_CASE("invariants survive unimodular changes of basis") {
  auto [h3, g3] = standard_heisenberg(1);
  GroupSpec k3 = k3_central();
  oracle::Rng rng(43);

  auto run = [&](const GroupSpec& s0, const Automorphism& psi0) {
    InvariantReport want = invariants(s0, psi0);
    for (int it = 0; it < 50; ++it) {
      GroupSpec s = s0;
      Automorphism psi = psi0;
      IntMatrix p = oracle::random_unimodular(rng, s.k, 14);
      change_basis(p, s, psi);
      CHECK_NOTHROW(s.validate());
      CHECK_NOTHROW(validate(s, psi));
      InvariantReport got = invariants(s, psi);
      CHECK(got.d_c == want.d_c);
      CHECK(got.r_c == want.r_c);
      CHECK(got.d_z == want.d_z);
      CHECK(got.r_z == want.r_z);
      CHECK(got.d_zc == want.d_zc);
      CHECK(got.r_zc == want.r_zc);
      CHECK(got.frak_d == want.frak_d);
      CHECK(got.degenerate == want.degenerate);
      CHECK(got.growth_exponent == want.growth_exponent);
      CHECK(got.growth_factor == want.growth_factor);
    }
  };
  run(h3, identity_automorphism(h3));
  run(h3, h3_shear());
  run(h3, h3_flip());
  run(k3, identity_automorphism(k3));
  run(k3, k3_shear());
  run(k3, k3_central_shift());
}

TEST_CASE("abelian_growth") {
  CHECK(abelian_growth(2, IntMatrix::identity(2)) == 2);
  CHECK(abelian_growth(2, IntMatrix::from_rows({{0, 1}, {1, 0}})) == 1);
  CHECK(abelian_growth(1, IntMatrix::from_rows({{2}})) == 0);
}
