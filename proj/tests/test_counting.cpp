#include <cmath>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "tcg/counting.hpp"
#include "tcg/twisted.hpp"

using namespace tcg;

namespace {

std::string key(const CanonicalForm& f) {
  std::ostringstream os;
  for (const Int& x : f.a_star) os << x << ',';
  os << f.b_star;
  return os.str();
}

}  // namespace

TEST_CASE("counting: fixed counts at small radii") {
  auto [h3, s3] = standard_heisenberg(1);
  Automorphism id = identity_automorphism(h3);
  CHECK(count_classes(h3, id, s3, 0) == 1);
  CHECK(count_classes(h3, id, s3, 1) == 7);

  GrowthTable t = growth_table(h3, id, s3, 1);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].n == 1);
  CHECK(t.rows[0].classes == 7);
  CHECK(t.rows[0].ball == 7);

  // regression anchors, cross-validated elsewhere by the brute-force oracle
  CHECK(count_classes(h3, fixtures::h3_shear(), s3, 4) == 27);
  CHECK(count_classes(h3, fixtures::h3_flip(), s3, 4) == 23);
  CHECK(count_classes(h3, fixtures::h3_anosov(), s3, 4) == 20);
}

TEST_CASE("counting: growth table matches per-radius recounts and shares the ball") {
  auto [h3, s3] = standard_heisenberg(1);
  Automorphism id = identity_automorphism(h3);
  GrowthTable t = growth_table(h3, id, s3, 8);
  REQUIRE(t.rows.size() == 8);

  Ball ball(h3, s3);
  ball.grow(8);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].n == static_cast<int>(i) + 1);
    CHECK(t.rows[i].ball == ball.count_within(t.rows[i].n));
    CHECK(t.rows[i].classes <= t.rows[i].ball);
    if (i > 0) CHECK(t.rows[i].classes >= t.rows[i - 1].classes);
  }
  for (int n : {3, 5, 8})
    CHECK(t.rows[static_cast<std::size_t>(n) - 1].classes == count_classes(h3, id, s3, n));

  // one ball instance serves several automorphisms
  Ball shared(h3, s3);
  TwistedContext ci(h3, id), cs(h3, fixtures::h3_shear());
  GrowthTable a = growth_table(ci, shared, 6);
  GrowthTable b = growth_table(cs, shared, 6);
  CHECK(a.rows.back().classes == count_classes(h3, id, s3, 6));
  CHECK(b.rows.back().classes == count_classes(h3, fixtures::h3_shear(), s3, 6));
}

TEST_CASE("counting: oracle partition equals the canonical-form partition") {
  auto [h3, s3] = standard_heisenberg(1);
  GroupSpec k3 = fixtures::k3_central();
  GenSet sk = default_genset(k3);

  std::vector<std::tuple<GroupSpec, GenSet, Automorphism, int>> cases{
      {h3, s3, identity_automorphism(h3), 4}, {h3, s3, fixtures::h3_shear(), 4},
      {h3, s3, fixtures::h3_flip(), 4},       {h3, s3, fixtures::h3_anosov(), 4},
      {h3, s3, fixtures::h3_flip_shifted(), 4}, {k3, sk, identity_automorphism(k3), 3},
      {k3, sk, fixtures::k3_central_shift(), 3}, {k3, sk, fixtures::k3_flip(), 3}};
  for (const auto& [spec, gens, psi, n] : cases) {
    CAPTURE(n);
    // witnesses up to 2n+2: travel between opposite ends of the ball can cost
    // an abelian displacement of 2n before stabilization has anything to add
    OrbitPartition part = brute_orbit_oracle(spec, psi, gens, n, 2 * n + 2);
    CHECK(part.part_count == count_classes(spec, psi, gens, n));
    REQUIRE(part.elements.size() == part.part_of.size());

    // part ids and canonical forms induce the same equivalence on the ball
    TwistedContext ctx(spec, psi);
    std::vector<std::string> part_form(part.part_count);
    std::unordered_map<std::string, std::size_t> form_part;
    for (std::size_t i = 0; i < part.elements.size(); ++i) {
      const std::string k = key(ctx.canonical_form(part.elements[i]));
      const std::size_t p = part.part_of[i];
      if (part_form[p].empty()) part_form[p] = k;
      CHECK(part_form[p] == k);
      auto [it, fresh] = form_part.emplace(k, p);
      CHECK(it->second == p);
    }
    CHECK(form_part.size() == part.part_count);

    // every merge is certified by the decision procedure
    std::vector<std::size_t> first(part.part_count, Ball::npos);
    for (std::size_t i = 0; i < part.elements.size(); ++i) {
      const std::size_t p = part.part_of[i];
      if (first[p] == Ball::npos) {
        first[p] = i;
        continue;
      }
      CHECK(is_twisted_conjugate(spec, psi, part.elements[first[p]], part.elements[i]).first);
    }
  }
}

TEST_CASE("counting: oracle keeps provably distinct elements apart") {
  auto [h3, s3] = standard_heisenberg(1);
  OrbitPartition part = brute_orbit_oracle(h3, fixtures::h3_flip(), s3, 2, 6);
  std::size_t plus = Ball::npos, minus = Ball::npos;
  const Element gp{make_vec({1, 0}), 0}, gm{make_vec({-1, 0}), 0};
  for (std::size_t i = 0; i < part.elements.size(); ++i) {
    if (part.elements[i] == gp) plus = i;
    if (part.elements[i] == gm) minus = i;
  }
  REQUIRE(plus != Ball::npos);
  REQUIRE(minus != Ball::npos);
  CHECK(part.part_of[plus] != part.part_of[minus]);

  CHECK_THROWS(brute_orbit_oracle(h3, fixtures::h3_flip(), s3, 4, 2));
  CHECK_THROWS(count_classes(h3, fixtures::h3_flip(), s3, -1));
}

TEST_CASE("counting: abelian quotient counts never exceed the twisted counts") {
  auto [h3, s3] = standard_heisenberg(1);
  GroupSpec k3 = fixtures::k3_central();
  GenSet sk = default_genset(k3);
  auto [h5, s5] = standard_heisenberg(2);

  std::vector<std::tuple<GroupSpec, GenSet, Automorphism, int>> cases{
      {h3, s3, identity_automorphism(h3), 6}, {h3, s3, fixtures::h3_shear(), 6},
      {h3, s3, fixtures::h3_flip(), 6},       {h3, s3, fixtures::h3_anosov(), 6},
      {k3, sk, identity_automorphism(k3), 4}, {k3, sk, fixtures::k3_anosov(), 4},
      {k3, sk, fixtures::k3_central_shift(), 4}, {h5, s5, fixtures::h5_shear(), 4}};
  for (const auto& [spec, gens, psi, n_max] : cases) {
    Ball ball(spec, gens);
    for (int n = 2; n <= n_max; n += 2)
      CHECK(count_classes(spec, psi, gens, n) >= abelian_class_count(psi.m, ball, n));
  }
}

// Conjugating the generating set by h replaces the counted region by a
// translate: exact equality can fail by boundary terms (it does for the
// shear), but counts stay between the radius-(n-|u|) and radius-(n+|u|)
// counts for u = h^{-1} psi(h).
TEST_CASE("counting: conjugated generating sets shift counts by at most a radius offset") {
  auto [h3, s3] = standard_heisenberg(1);
  const Element h{make_vec({0, 1}), 0};
  std::vector<Element> conj;
  for (const Element& s : s3.members)
    conj.push_back(multiply(h3, multiply(h3, h, s), inverse(h3, h)));
  GenSet s3c = make_genset(h3, conj);

  std::vector<Automorphism> psis{identity_automorphism(h3), fixtures::h3_shear(),
                                 fixtures::h3_flip(), fixtures::h3_anosov()};
  for (const Automorphism& psi : psis) {
    const Element u = multiply(h3, inverse(h3, h), apply(h3, psi, h));
    auto delta = word_norm(h3, s3, u, 8);
    REQUIRE(delta.has_value());
    REQUIRE(*delta <= 4);
    for (int n = *delta + 1; n <= 6; ++n) {
      const std::size_t shifted = count_classes(h3, psi, s3c, n);
      CHECK(count_classes(h3, psi, s3, n - *delta) <= shifted);
      CHECK(shifted <= count_classes(h3, psi, s3, n + *delta));
    }
    if (*delta == 0)
      for (int n = 1; n <= 6; ++n)
        CHECK(count_classes(h3, psi, s3c, n) == count_classes(h3, psi, s3, n));
  }
}

TEST_CASE("counting: orientation-reversing automorphisms grow linearly") {
  auto [h3, s3] = standard_heisenberg(1);
  for (const Automorphism& psi : {fixtures::h3_flip(), fixtures::h3_flip_shifted()}) {
    GrowthTable t = growth_table(h3, psi, s3, 20);
    double lo = 1e300, hi = 0;
    for (const GrowthRow& row : t.rows)
      if (row.n >= 8) {
        const double r = static_cast<double>(row.classes) / row.n;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    CHECK(hi / lo <= 4.0);
  }
}

TEST_CASE("counting: fit recovers synthetic growth laws") {
  std::vector<FitCandidate> cands;
  for (int e = 0; e <= 4; ++e)
    for (bool lf : {false, true}) cands.push_back({static_cast<double>(e), lf});

  GrowthTable quad;
  for (int n = 1; n <= 12; ++n)
    quad.rows.push_back({n, static_cast<std::size_t>(n) * n, static_cast<std::size_t>(n) * n});
  FitResult f = fit_growth(quad, cands);
  CHECK(f.exponent_estimate == 2.0);
  CHECK_FALSE(f.log_factor);
  CHECK(f.residual < 1e-12);

  GrowthTable quadlog;
  for (int n = 1; n <= 30; ++n) {
    const auto c = static_cast<std::size_t>(std::llround(n * n * std::log(n + 1.0)));
    quadlog.rows.push_back({n, c, c});
  }
  f = fit_growth(quadlog, cands);
  CHECK(f.exponent_estimate == 2.0);
  CHECK(f.log_factor);

  GrowthTable flat;
  for (int n = 1; n <= 8; ++n) flat.rows.push_back({n, 5, static_cast<std::size_t>(n)});
  f = fit_growth(flat, cands);
  CHECK(f.exponent_estimate == 0.0);
  CHECK_FALSE(f.log_factor);
  CHECK(f.residual == 0.0);

  GrowthTable tiny;
  for (int n = 1; n <= 5; ++n) tiny.rows.push_back({n, 1, 1});
  CHECK_THROWS(fit_growth(tiny, cands));
  GrowthTable zero;
  for (int n = 1; n <= 8; ++n) zero.rows.push_back({n, 0, 1});
  CHECK_THROWS(fit_growth(zero, cands));
  CHECK_THROWS(fit_growth(quad, {}));
  CHECK_THROWS(fit_growth(quad, {{-1.0, false}}));
}

TEST_CASE("counting: csv rendering") {
  GrowthTable t;
  t.rows.push_back({1, 7, 7});
  t.rows.push_back({2, 17, 33});
  CHECK(growth_table_csv(t) == "n,classes,ball\n1,7,7\n2,17,33\n");
}
