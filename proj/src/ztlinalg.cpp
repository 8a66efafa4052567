#include "tcg/ztlinalg.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace tcg {

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void require(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

Int fdiv(const Int& a, const Int& b) {
  require(b != 0, "fdiv: division by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int fmod(const Int& a, const Int& b) { return a - fdiv(a, b) * b; }

Xgcd xgcd(Int a, Int b) {
  // Extended Euclid, iterative; returns g >= 0 with g = s*a + t*b.
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = std::move(b);
    b = std::move(r);
    Int s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Int t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  return {a, s0, t0};
}

IntVec make_vec(std::initializer_list<long long> xs) {
  IntVec v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

bool is_zero_vec(const IntVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

IntVec add_vec(const IntVec& a, const IntVec& b) {
  require(a.size() == b.size(), "add_vec: size mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec sub_vec(const IntVec& a, const IntVec& b) {
  require(a.size() == b.size(), "sub_vec: size mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec neg_vec(const IntVec& v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

IntVec scale_vec(const Int& s, const IntVec& v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Int dot_vec(const IntVec& a, const IntVec& b) {
  require(a.size() == b.size(), "dot_vec: size mismatch");
  Int r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), e_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t nr = rows.size();
  std::size_t nc = nr ? rows.begin()->size() : 0;
  IntMatrix m(nr, nc);
  std::size_t i = 0;
  for (const auto& row : rows) {
    require(row.size() == nc, "from_rows: ragged rows");
    std::size_t j = 0;
    for (long long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_cols(std::size_t rows, const std::vector<IntVec>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].size() == rows, "from_cols: bad column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::hcat(const IntMatrix& a, const IntMatrix& b) {
  require(a.rows() == b.rows(), "hcat: row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

bool IntMatrix::is_zero() const {
  for (const Int& x : e_)
    if (x != 0) return false;
  return true;
}

bool IntMatrix::col_is_zero(std::size_t j) const {
  for (std::size_t i = 0; i < rows_; ++i)
    if ((*this)(i, j) != 0) return false;
  return true;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

IntVec IntMatrix::col(std::size_t j) const {
  IntVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void IntMatrix::set_col(std::size_t j, const IntVec& v) {
  require(v.size() == rows_, "set_col: bad length");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::cols_range(std::size_t from, std::size_t to) const {
  require(from <= to && to <= cols_, "cols_range: bad range");
  IntMatrix m(rows_, to - from);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = from; j < to; ++j) m(i, j - from) = (*this)(i, j);
  return m;
}

IntVec IntMatrix::mul(const IntVec& v) const {
  require(v.size() == cols_, "mul: size mismatch");
  IntVec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    r[i] = std::move(acc);
  }
  return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require(a.cols() == b.rows(), "operator*: shape mismatch");
  IntMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Int& x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += x * b(l, j);
    }
  return m;
}

Int IntMatrix::det() const {
  require(rows_ == cols_, "det: matrix not square");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Int sign = 1, prev = 1;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    if (a(t, t) == 0) {
      std::size_t s = t + 1;
      while (s < n && a(s, t) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(t, s);
      sign = -sign;
    }
    for (std::size_t i = t + 1; i < n; ++i)
      for (std::size_t j = t + 1; j < n; ++j) {
        Int num = a(t, t) * a(i, j) - a(i, t) * a(t, j);
        a(i, j) = num / prev;  // exact by Bareiss
      }
    prev = a(t, t);
  }
  return sign * a(n - 1, n - 1);
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::addmul_col(std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += q * (*this)(i, src);
}

void IntMatrix::addmul_row(std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += q * (*this)(src, j);
}

void IntMatrix::transform_cols(std::size_t a, std::size_t b, const Int& s, const Int& t,
                               const Int& u, const Int& v) {
  for (std::size_t i = 0; i < rows_; ++i) {
    Int x = (*this)(i, a), y = (*this)(i, b);
    (*this)(i, a) = s * x + t * y;
    (*this)(i, b) = u * x + v * y;
  }
}

void IntMatrix::transform_rows(std::size_t a, std::size_t b, const Int& s, const Int& t,
                               const Int& u, const Int& v) {
  for (std::size_t j = 0; j < cols_; ++j) {
    Int x = (*this)(a, j), y = (*this)(b, j);
    (*this)(a, j) = s * x + t * y;
    (*this)(b, j) = u * x + v * y;
  }
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << "]";
  return os.str();
}

HnfResult hnf(const IntMatrix& a) {
  std::size_t m = a.rows(), n = a.cols();
  HnfResult r{a, IntMatrix::identity(n)};
  if (n == 0) return r;
  IntMatrix& h = r.h;
  IntMatrix& u = r.u;
  std::size_t cur = n - 1;
  bool done = false;
  // Rows bottom-up; the pivot for each row is gathered into column `cur`,
  // so pivot rows strictly increase left to right and zero columns end up
  // leftmost.
  for (std::size_t ii = m; ii-- > 0 && !done;) {
    for (std::size_t j = 0; j < cur; ++j) {
      if (h(ii, j) == 0) continue;
      if (h(ii, cur) == 0) {
        h.swap_cols(j, cur);
        u.swap_cols(j, cur);
        continue;
      }
      Xgcd e = xgcd(h(ii, cur), h(ii, j));
      Int p = h(ii, cur) / e.g, q = h(ii, j) / e.g;
      // col cur <- s*cur + t*j (gcd at row ii), col j <- -q*cur + p*j (zero); det +1
      h.transform_cols(cur, j, e.s, e.t, -q, p);
      u.transform_cols(cur, j, e.s, e.t, -q, p);
    }
    if (h(ii, cur) == 0) continue;
    if (h(ii, cur) < 0) {
      h.negate_col(cur);
      u.negate_col(cur);
    }
    for (std::size_t j = cur + 1; j < n; ++j) {
      Int q = fdiv(h(ii, j), h(ii, cur));
      h.addmul_col(j, cur, -q);
      u.addmul_col(j, cur, -q);
    }
    if (cur == 0)
      done = true;
    else
      --cur;
  }
  return r;
}

namespace {

// (column, pivot row) pairs of a column-HNF matrix, left to right.
std::vector<std::pair<std::size_t, std::size_t>> hnf_pivots(const IntMatrix& h) {
  std::vector<std::pair<std::size_t, std::size_t>> p;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    std::size_t i = h.rows();
    while (i > 0 && h(i - 1, j) == 0) --i;
    if (i > 0) p.emplace_back(j, i - 1);
  }
  return p;
}

}  // namespace

SnfResult snf(const IntMatrix& a) {
  std::size_t m = a.rows(), n = a.cols();
  SnfResult r{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& d = r.d;
  IntMatrix& u = r.u;
  IntMatrix& v = r.v;
  std::size_t lim = std::min(m, n);

  auto clear_at = [&](std::size_t t) {
    // Alternate row and column eliminations until row t and column t are
    // clear outside (t,t); |d(t,t)| strictly drops at every non-dividing
    // step, so this terminates.
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        if (d(i, t) % d(t, t) == 0) {
          Int q = d(i, t) / d(t, t);
          d.addmul_row(i, t, -q);
          u.addmul_row(i, t, -q);
        } else {
          Xgcd e = xgcd(d(t, t), d(i, t));
          Int p = d(t, t) / e.g, q = d(i, t) / e.g;
          d.transform_rows(t, i, e.s, e.t, -q, p);
          u.transform_rows(t, i, e.s, e.t, -q, p);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        if (d(t, j) % d(t, t) == 0) {
          Int q = d(t, j) / d(t, t);
          d.addmul_col(j, t, -q);
          v.addmul_col(j, t, -q);
        } else {
          Xgcd e = xgcd(d(t, t), d(t, j));
          Int p = d(t, t) / e.g, q = d(t, j) / e.g;
          d.transform_cols(t, j, e.s, e.t, -q, p);
          v.transform_cols(t, j, e.s, e.t, -q, p);
          dirty = true;
        }
      }
      if (!dirty) {
        bool col_ok = true;
        for (std::size_t i = t + 1; i < m; ++i)
          if (d(i, t) != 0) col_ok = false;
        if (col_ok) return;
      }
    }
  };

  auto diagonalize = [&]() {
    for (std::size_t t = 0; t < lim; ++t) {
      // Pivot: smallest nonzero |entry| in the trailing block, lowest
      // position on ties.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          if (pi == m || abs(d(i, j)) < abs(d(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) return;  // trailing block zero
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);
      clear_at(t);
      if (d(t, t) < 0) {
        d.negate_row(t);
        u.negate_row(t);
      }
    }
  };

  diagonalize();
  // Enforce the divisibility chain: a violation (d_t, d_{t+1}) is replaced
  // by (gcd, lcm) via one column add and re-clearing, which strictly
  // decreases d_t.
  for (;;) {
    bool fixed = true;
    for (std::size_t t = 0; t + 1 < lim; ++t) {
      if (d(t, t) == 0 || d(t + 1, t + 1) % d(t, t) == 0) continue;
      d.addmul_col(t, t + 1, 1);
      v.addmul_col(t, t + 1, 1);
      clear_at(t);
      if (d(t, t) < 0) {
        d.negate_row(t);
        u.negate_row(t);
      }
      fixed = false;
      break;
    }
    if (fixed) break;
  }
  return r;
}

std::size_t rank_z(const IntMatrix& a) { return hnf_pivots(hnf(a).h).size(); }

IntMatrix inverse_unimodular(const IntMatrix& u) {
  require(u.rows() == u.cols(), "inverse_unimodular: not square");
  std::size_t n = u.rows();
  // Gauss-Jordan over Q, then check integrality.
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(u(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t p = t;
    while (p < n && a[p][t] == 0) ++p;
    require(p < n, "inverse_unimodular: singular matrix");
    std::swap(a[t], a[p]);
    Rat inv = Rat(1) / a[t][t];
    for (std::size_t j = 0; j < 2 * n; ++j) a[t][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == t || a[i][t] == 0) continue;
      Rat f = a[i][t];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[t][j];
    }
  }
  IntMatrix res(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& x = a[i][n + j];
      require(denominator(x) == 1, "inverse_unimodular: inverse not integral");
      res(i, j) = numerator(x);
    }
  return res;
}

Lattice::Lattice(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}

Lattice Lattice::from_generators(std::size_t ambient, const IntMatrix& gens) {
  require(gens.rows() == ambient, "from_generators: ambient mismatch");
  IntMatrix h = hnf(gens).h;
  auto piv = hnf_pivots(h);
  Lattice l(ambient);
  l.basis_ = h.cols_range(h.cols() - piv.size(), h.cols());
  for (auto& pr : piv) l.pivots_.push_back(pr.second);
  return l;
}

Lattice Lattice::full(std::size_t ambient) {
  return from_generators(ambient, IntMatrix::identity(ambient));
}

bool Lattice::contains(const IntVec& v) const { return is_zero_vec(reduce(v)); }

IntVec Lattice::reduce(IntVec v) const {
  require(v.size() == ambient_, "reduce: dimension mismatch");
  for (std::size_t jj = basis_.cols(); jj-- > 0;) {
    Int q = fdiv(v[pivots_[jj]], basis_(pivots_[jj], jj));
    if (q == 0) continue;
    for (std::size_t i = 0; i < ambient_; ++i) v[i] -= q * basis_(i, jj);
  }
  return v;
}

std::optional<IntVec> Lattice::coefficients(const IntVec& v) const {
  require(v.size() == ambient_, "coefficients: dimension mismatch");
  IntVec w = v;
  IntVec c(basis_.cols());
  for (std::size_t jj = basis_.cols(); jj-- > 0;) {
    const Int& piv = basis_(pivots_[jj], jj);
    if (w[pivots_[jj]] % piv != 0) return std::nullopt;
    Int q = w[pivots_[jj]] / piv;
    c[jj] = q;
    if (q == 0) continue;
    for (std::size_t i = 0; i < ambient_; ++i) w[i] -= q * basis_(i, jj);
  }
  if (!is_zero_vec(w)) return std::nullopt;
  return c;
}

Lattice kernel_basis(const IntMatrix& a) {
  HnfResult r = hnf(a);
  std::size_t nz = a.cols() - hnf_pivots(r.h).size();
  return Lattice::from_generators(a.cols(), r.u.cols_range(0, nz));
}

Lattice image_lattice(const IntMatrix& a) { return Lattice::from_generators(a.rows(), a); }

Lattice saturation(const Lattice& l) {
  // Double orthogonal complement: x is in the saturation iff it satisfies
  // every integer linear form vanishing on the lattice.
  Lattice ortho = kernel_basis(l.basis().transposed());
  return kernel_basis(ortho.basis().transposed());
}

LinearSystem::LinearSystem(IntMatrix a) : a_(std::move(a)) {
  HnfResult r = hnf(a_);
  h_ = std::move(r.h);
  u_ = std::move(r.u);
  pivots_ = hnf_pivots(h_);
  std::size_t nz = a_.cols() - pivots_.size();
  kernel_ = Lattice::from_generators(a_.cols(), u_.cols_range(0, nz));
}

std::optional<IntVec> LinearSystem::solve(const IntVec& b) const {
  require(b.size() == a_.rows(), "solve: dimension mismatch");
  IntVec rem = b;
  IntVec y(a_.cols());
  for (std::size_t t = pivots_.size(); t-- > 0;) {
    auto [j, i] = pivots_[t];
    const Int& p = h_(i, j);
    if (rem[i] % p != 0) return std::nullopt;
    Int q = rem[i] / p;
    y[j] = q;
    if (q != 0)
      for (std::size_t ii = 0; ii < a_.rows(); ++ii) rem[ii] -= q * h_(ii, j);
  }
  if (!is_zero_vec(rem)) return std::nullopt;
  IntVec x = u_.mul(y);
  // Canonicalize modulo the kernel so equal systems yield equal solutions.
  if (kernel_.rank() > 0) x = kernel_.reduce(std::move(x));
  return x;
}

std::optional<IntVec> solve_z(const IntMatrix& a, const IntVec& b) {
  return LinearSystem(a).solve(b);
}

std::pair<IntVec, IntVec> TransversalityTriple::split(const IntVec& v) const {
  IntVec rep = sum.reduce(v);
  IntMatrix both = IntMatrix::hcat(i.basis(), j.basis());
  auto xy = solve_z(both, sub_vec(v, rep));
  require(xy.has_value(), "split: residue inconsistent with I + J");
  IntVec jpart(v.size(), Int(0));
  for (std::size_t t = 0; t < j.rank(); ++t) {
    const Int& c = (*xy)[i.rank() + t];
    for (std::size_t q = 0; q < v.size(); ++q) jpart[q] += c * j.basis()(q, t);
  }
  return {rep, jpart};
}

TransversalityTriple transversality_triple(const Lattice& i, std::size_t ambient_dim) {
  require(i.ambient_dim() == ambient_dim, "transversality_triple: ambient mismatch");
  Lattice sat = saturation(i);
  std::size_t r = sat.rank();
  // A saturated lattice is spanned by the first r columns of U^{-1} where
  // U * basis * V = diag(1,...,1); the remaining columns complement it.
  IntMatrix uinv = IntMatrix::identity(ambient_dim);
  if (r > 0) {
    SnfResult s = snf(sat.basis());
    for (std::size_t t = 0; t < r; ++t)
      require(s.d(t, t) == 1, "transversality_triple: saturation not saturated");
    uinv = inverse_unimodular(s.u);
  }
  TransversalityTriple out{i, Lattice::from_generators(
                                  ambient_dim, uinv.cols_range(r, ambient_dim)),
                           {}, Lattice(ambient_dim)};
  out.sum = Lattice::from_generators(
      ambient_dim, IntMatrix::hcat(i.basis(), out.j.basis()));
  require(out.sum.rank() == ambient_dim, "transversality_triple: I + J not finite index");
  Int count = 1;
  for (std::size_t t = 0; t < ambient_dim; ++t) count *= out.sum.basis()(t, t);
  require(count <= 100000, "transversality_triple: index too large to enumerate");
  // Every coset has a unique representative with t-th coordinate in
  // [0, pivot_t); enumerate them mixed-radix so the zero vector is first.
  IntVec cur(ambient_dim, Int(0));
  for (;;) {
    out.reps.push_back(cur);
    std::size_t t = 0;
    while (t < ambient_dim) {
      ++cur[t];
      if (cur[t] < out.sum.basis()(t, t)) break;
      cur[t] = 0;
      ++t;
    }
    if (t == ambient_dim) break;
  }
  return out;
}

std::optional<Int> lattice_index(const Lattice& l1, const Lattice& l2) {
  require(l1.ambient_dim() == l2.ambient_dim(), "lattice_index: ambient mismatch");
  std::size_t r1 = l1.rank(), r2 = l2.rank();
  IntMatrix coeff(r2, r1);
  for (std::size_t j = 0; j < r1; ++j) {
    auto c = l2.coefficients(l1.basis().col(j));
    require(c.has_value(), "lattice_index: first lattice not contained in second");
    coeff.set_col(j, *c);
  }
  if (r1 < r2) return std::nullopt;
  Int d = coeff.det();
  return d < 0 ? -d : d;
}

}  // namespace tcg
