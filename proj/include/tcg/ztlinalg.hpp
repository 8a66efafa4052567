#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

// Exact linear algebra over Z: Hermite and Smith normal forms, kernels,
// images, saturation, transversals and lattice indices. Everything is
// arbitrary precision; lattices are stored in a canonical column Hermite
// basis so that lattice equality is entry-wise comparison of bases.

namespace tcg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;

[[noreturn]] void fail(const std::string& msg);
void require(bool cond, const std::string& msg);

// Floored division/remainder; cpp_int's built-in operators truncate toward zero.
Int fdiv(const Int& a, const Int& b);
Int fmod(const Int& a, const Int& b);

struct Xgcd {
  Int g, s, t;  // g = s*a + t*b, g >= 0
};
Xgcd xgcd(Int a, Int b);

IntVec make_vec(std::initializer_list<long long> xs);
bool is_zero_vec(const IntVec& v);
IntVec add_vec(const IntVec& a, const IntVec& b);
IntVec sub_vec(const IntVec& a, const IntVec& b);
IntVec neg_vec(const IntVec& v);
IntVec scale_vec(const Int& s, const IntVec& v);
Int dot_vec(const IntVec& a, const IntVec& b);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix from_cols(std::size_t rows, const std::vector<IntVec>& cols);
  static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  bool is_zero() const;
  bool col_is_zero(std::size_t j) const;
  IntMatrix transposed() const;
  IntVec col(std::size_t j) const;
  void set_col(std::size_t j, const IntVec& v);
  IntMatrix cols_range(std::size_t from, std::size_t to) const;  // columns [from, to)

  IntVec mul(const IntVec& v) const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  Int det() const;  // fraction-free (Bareiss); square matrices only

  void swap_cols(std::size_t a, std::size_t b);
  void swap_rows(std::size_t a, std::size_t b);
  void negate_col(std::size_t j);
  void negate_row(std::size_t i);
  void addmul_col(std::size_t dst, std::size_t src, const Int& q);  // col dst += q * col src
  void addmul_row(std::size_t dst, std::size_t src, const Int& q);
  // (col a, col b) <- (s*col a + t*col b, u*col a + v*col b)
  void transform_cols(std::size_t a, std::size_t b, const Int& s, const Int& t, const Int& u,
                      const Int& v);
  void transform_rows(std::size_t a, std::size_t b, const Int& s, const Int& t, const Int& u,
                      const Int& v);

  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> e_;
};

// Column Hermite normal form H = A * U with U unimodular. Zero columns of H
// come first; each pivot (bottom-most nonzero entry of its column) is
// positive, pivot rows strictly increase left to right, and in every pivot
// row the entries right of the pivot are reduced into [0, pivot).
struct HnfResult {
  IntMatrix h, u;
};
HnfResult hnf(const IntMatrix& a);

// Smith normal form D = U * A * V, diagonal non-negative, d1 | d2 | ...
struct SnfResult {
  IntMatrix d, u, v;
};
SnfResult snf(const IntMatrix& a);

std::size_t rank_z(const IntMatrix& a);

IntMatrix inverse_unimodular(const IntMatrix& u);

// A sublattice of Z^ambient, basis columns in canonical Hermite form.
class Lattice {
 public:
  Lattice() = default;                    // zero lattice in ambient dimension 0
  explicit Lattice(std::size_t ambient);  // zero lattice
  static Lattice from_generators(std::size_t ambient, const IntMatrix& gens);
  static Lattice full(std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_rows() const { return pivots_; }

  bool contains(const IntVec& v) const;
  // Hermite residue of v modulo the lattice (pivot coordinates reduced into
  // [0, pivot)); v is in the lattice iff the residue is zero.
  IntVec reduce(IntVec v) const;
  // Coefficients x with basis * x = v, if v lies in the lattice.
  std::optional<IntVec> coefficients(const IntVec& v) const;

  friend bool operator==(const Lattice& a, const Lattice& b) = default;

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Lattice kernel_basis(const IntMatrix& a);   // all integer solutions of A x = 0 (saturated)
Lattice image_lattice(const IntMatrix& a);  // lattice spanned by the columns of A
Lattice saturation(const Lattice& l);       // smallest saturated overlattice of equal rank

// Hermite-reduced particular solution of A x = b over Z, if one exists.
std::optional<IntVec> solve_z(const IntMatrix& a, const IntVec& b);

// A x = b solver with the Hermite decomposition done once up front, for
// repeated right-hand sides against a fixed matrix.
class LinearSystem {
 public:
  explicit LinearSystem(IntMatrix a);
  const Lattice& kernel() const { return kernel_; }
  std::optional<IntVec> solve(const IntVec& b) const;  // Hermite-reduced
 private:
  IntMatrix a_, h_, u_;
  std::vector<std::pair<std::size_t, std::size_t>> pivots_;  // (column, row)
  Lattice kernel_;
};

// J complements the saturation of I, so I + J has finite index in Z^ambient
// and I intersect J = 0; reps holds one Hermite residue per coset of I + J,
// the zero vector first.
struct TransversalityTriple {
  Lattice i, j;
  std::vector<IntVec> reps;
  Lattice sum;  // I + J, used for coset reduction

  // v = (element of I) + (element of J) + rep; returns (rep, J-part).
  std::pair<IntVec, IntVec> split(const IntVec& v) const;
};
TransversalityTriple transversality_triple(const Lattice& i, std::size_t ambient_dim);

// [l2 : l1] for l1 a sublattice of l2; nullopt means infinite index
// (rank drop). Throws if l1 is not contained in l2.
std::optional<Int> lattice_index(const Lattice& l1, const Lattice& l2);

}  // namespace tcg
