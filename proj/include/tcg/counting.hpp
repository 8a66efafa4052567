#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tcg/autom.hpp"
#include "tcg/nilgroup.hpp"
#include "tcg/twisted.hpp"

namespace tcg {

struct GrowthRow {
  int n = 0;
  std::size_t classes = 0;
  std::size_t ball = 0;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
};

struct FitCandidate {
  double exponent = 0;
  bool log_factor = false;
};

// Winner of the model comparison c(n) ~ C * n^e * (ln n)^[log_factor].
struct FitResult {
  double exponent_estimate = 0;
  bool log_factor = false;
  double residual = 0;
};

// Ball partition produced by exhibited conjugations only: two elements share
// a part id iff a chain of verified witnesses connects them.
struct OrbitPartition {
  std::vector<Element> elements;     // ball(n) in breadth-first order
  std::vector<std::size_t> part_of;  // part id per element, contiguous from 0
  std::size_t part_count = 0;
};

// Number of distinct twisted conjugacy classes meeting the radius-n ball.
std::size_t count_classes(const GroupSpec& spec, const Automorphism& psi, const GenSet& gens,
                          int n);

// Class counts for every radius 1..n_max over one shared ball enumeration.
GrowthTable growth_table(const TwistedContext& ctx, Ball& ball, int n_max);
GrowthTable growth_table(const GroupSpec& spec, const Automorphism& psi, const GenSet& gens,
                         int n_max);

// Independent of the algebraic decision procedure: merges two ball elements
// only on an exhibited conjugation by a witness from a larger ball, widening
// the witness radius until the partition survives two increments unchanged.
OrbitPartition brute_orbit_oracle(const GroupSpec& spec, const Automorphism& psi,
                                  const GenSet& gens, int n, int witness_radius);

// Distinct cosets of image(m_bar - id) met by the abelianized ball — the
// class count of the abelian quotient at the same radius.
std::size_t abelian_class_count(const IntMatrix& m_bar, Ball& ball, int n);

FitResult fit_growth(const GrowthTable& table, const std::vector<FitCandidate>& candidates);

std::string growth_table_csv(const GrowthTable& table);

}  // namespace tcg
