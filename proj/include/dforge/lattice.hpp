#pragma once

// Integral lattices of signature (1, n): Gram arithmetic, 2-reflections, the
// reflection group generated by the simple roots, nef and effective tests, and
// the lattice data of the three worked examples.

#include <dforge/errors.hpp>
#include <dforge/rational.hpp>
#include <dforge/series.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dforge::lattice {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init)
  {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n)
  {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const
  {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b)
  {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b)
  {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b)
  {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

/// Bareiss fraction-free determinant.
inline Integer determinant(IntMatrix m)
{
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

using LatticeVector = std::vector<Rational>;

inline bool is_integral(const LatticeVector& v)
{
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return dforge::is_integral(r); });
}

inline LatticeVector operator+(LatticeVector a, const LatticeVector& b)
{
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline LatticeVector operator-(LatticeVector a, const LatticeVector& b)
{
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline LatticeVector operator*(const Rational& t, LatticeVector a)
{
  for (auto& x : a) x *= t;
  return a;
}
inline LatticeVector operator-(LatticeVector a)
{
  for (auto& x : a) x = -x;
  return a;
}

inline LatticeVector vec(std::initializer_list<long> xs)
{
  LatticeVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline LatticeVector act(const IntMatrix& m, const LatticeVector& x)
{
  LatticeVector y(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) y[i] += Rational(m(i, j)) * x[j];
  return y;
}

inline LatticeVector act(const RatMatrix& m, const LatticeVector& x)
{
  LatticeVector y(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(IntMatrix gram) : gram_(std::move(gram))
  {
    if (gram_.rows() != gram_.cols()) throw std::invalid_argument("Gram matrix must be square");
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("Gram matrix must be symmetric");
  }

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }

  bool even() const
  {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_(i, i) % 2 != 0) return false;
    return true;
  }

  Integer det() const { return determinant(gram_); }

  /// Inertia by symmetric Gaussian elimination over Q.
  Signature signature() const
  {
    const std::size_t n = rank();
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(gram_(i, j));
    Signature sig;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t piv = n;
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && a(i, i) != 0) {
          piv = i;
          break;
        }
      if (piv == n) {
        // no nonzero diagonal: combine two indices with a nonzero off-diagonal entry
        std::size_t pi = n, pj = n;
        for (std::size_t i = 0; i < n && pi == n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (!done[i] && !done[j] && i != j && a(i, j) != 0) {
              pi = i;
              pj = j;
              break;
            }
        if (pi == n) break;
        // e_i <- e_i + e_j makes the (i, i) entry 2 a(i, j) != 0
        for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
        for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
        piv = pi;
      }
      done[piv] = true;
      const Rational d = a(piv, piv);
      (d > 0 ? sig.positive : sig.negative)++;
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i] || a(i, piv) == 0) continue;
        const Rational f = a(i, piv) / d;
        for (std::size_t k = 0; k < n; ++k) a(i, k) -= f * a(piv, k);
        for (std::size_t k = 0; k < n; ++k) a(k, i) -= f * a(k, piv);
      }
    }
    sig.zero = static_cast<int>(n) - sig.positive - sig.negative;
    return sig;
  }

  bool hyperbolic() const
  {
    const Signature s = signature();
    return s.positive == 1 && s.zero == 0;
  }

  Rational inner(const LatticeVector& x, const LatticeVector& y) const
  {
    check_dim(x);
    check_dim(y);
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j)
        if (y[j] != 0 && gram_(i, j) != 0) s += x[i] * Rational(gram_(i, j)) * y[j];
    }
    return s;
  }

  Rational norm(const LatticeVector& x) const { return inner(x, x); }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  void check_dim(const LatticeVector& x) const
  {
    if (x.size() != rank()) throw std::invalid_argument("vector dimension does not match lattice rank");
  }

  IntMatrix gram_;
};

inline Lattice make_lattice(IntMatrix gram) { return Lattice(std::move(gram)); }

/// K(t): the form multiplied by t; t * gram must stay integral.
inline Lattice rescale(const Lattice& l, const Rational& t)
{
  if (t <= 0) throw std::invalid_argument("rescale factor must be positive");
  IntMatrix g(l.rank(), l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) {
      const Rational v = t * Rational(l.gram()(i, j));
      if (!dforge::is_integral(v)) throw std::invalid_argument("rescaled Gram matrix is not integral");
      g(i, j) = v.get_num();
    }
  return Lattice(g);
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b)
{
  const std::size_t n = a.rank() + b.rank();
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) g(a.rank() + i, a.rank() + j) = b.gram()(i, j);
  return Lattice(g);
}

/// U(k) = [[0, k], [k, 0]].
inline Lattice hyperbolic_U(long k) { return Lattice(IntMatrix{{0, k}, {k, 0}}); }

/// Standard E_8 with all diagonal entries -2 (negative definite).
inline Lattice e8_negative()
{
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  // Bourbaki labelling: 1-3, 3-4, 4-5, 5-6, 6-7, 7-8, 2-4
  const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (auto [i, j] : edges) g(i, j) = g(j, i) = 1;
  return Lattice(g);
}

/// s_delta(x) = x + (x . delta) delta for a (-2)-vector delta.
inline LatticeVector reflect(const Lattice& l, const LatticeVector& delta, const LatticeVector& x)
{
  if (l.norm(delta) != -2) throw std::invalid_argument("reflection vector must have norm -2");
  return x + l.inner(x, delta) * delta;
}

/// Matrix of s_delta on the lattice basis (columns are images of basis vectors).
inline IntMatrix reflection_matrix(const Lattice& l, const LatticeVector& delta)
{
  if (!is_integral(delta)) throw std::invalid_argument("reflection vector must be integral");
  const std::size_t n = l.rank();
  IntMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    LatticeVector e(n, Rational(0));
    e[j] = 1;
    const LatticeVector img = reflect(l, delta, e);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = img[i].get_num();
  }
  return m;
}

struct WeylElement {
  IntMatrix matrix;
  std::vector<int> word;  // generator indices, leftmost applied last
  int det = 1;
};

enum class ChamberCase { elliptic, parabolic };

/// Lattice data of one worked example.
///
/// For examples 1 and 2 the lattice basis is a set of simple roots and
/// `to_frame` writes it in the frame (f2, f3, f-2) of the ambient lattice M0.
/// Exponents of q, r, p (with e(t) = exp(2 pi i t)) are the S-pairings with
/// f-2, f3 and f2 respectively; the q, r, p expansions use half of these.
struct ExampleData {
  int id = 0;
  Lattice S;
  std::vector<LatticeVector> simple_roots;  // example 3: a finite sample of the root set
  LatticeVector rho;
  LatticeVector h0;  // strictly interior nef reference point
  ChamberCase chamber = ChamberCase::elliptic;

  IntMatrix frame_gram;   // M0 in (f2, f3, f-2)
  RatMatrix to_frame;     // S basis -> frame coordinates
  Rational pairing_scale; // S-pairing = pairing_scale * M0-pairing
  std::vector<std::string> basis_names;

  bool has_frame() const { return to_frame.rows() > 0; }

  /// Exponents (q, r, p) of exp(2 pi i (x . z)) in the S-pairing.
  Exponents lattice_exponents(const LatticeVector& x) const
  {
    if (!has_frame()) throw std::logic_error("example has no coordinate frame");
    const LatticeVector y = act(to_frame, x);
    auto pair_with = [&](std::size_t basis_index) -> Rational {
      Rational s = 0;
      for (std::size_t i = 0; i < 3; ++i) s += y[i] * Rational(frame_gram(i, basis_index));
      return s * pairing_scale;
    };
    return {pair_with(2), pair_with(1), pair_with(0)};
  }

  /// Inverse of lattice_exponents.
  LatticeVector from_lattice_exponents(const Exponents& e) const
  {
    // frame pairings (f2, f3, f-2) -> frame coordinates -> S coordinates
    LatticeVector pairings{e[kP] / pairing_scale, e[kR] / pairing_scale, e[kQ] / pairing_scale};
    LatticeVector y = act(inverse(rational(frame_gram)), pairings);
    return act(inverse(to_frame), y);
  }

  static RatMatrix rational(const IntMatrix& m)
  {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
  }

  static RatMatrix inverse(RatMatrix a)
  {
    const std::size_t n = a.rows();
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && a(piv, c) == 0) ++piv;
      if (piv == n) throw std::domain_error("singular matrix");
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(c, j), a(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
      const Rational d = a(c, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(c, j) /= d;
        inv(c, j) /= d;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c || a(i, c) == 0) continue;
        const Rational f = a(i, c);
        for (std::size_t j = 0; j < n; ++j) {
          a(i, j) -= f * a(c, j);
          inv(i, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }
};

/// Example 3 root set: delta^2 = -2 and delta . c = 1 (c is the first basis vector).
inline bool example3_root_test(const ExampleData& ex, const LatticeVector& delta)
{
  if (ex.id != 3) throw std::invalid_argument("example3_root_test needs example 3 data");
  return is_integral(delta) && ex.S.norm(delta) == -2 && ex.S.inner(delta, ex.rho) == 1;
}

namespace detail {

/// Integer vectors v with v^T G v <= bound for a positive definite Gram G
/// (Fincke-Pohst; floating point bounds widened and every hit checked exactly).
inline std::vector<std::vector<long>> short_vectors(const IntMatrix& g, long bound)
{
  const std::size_t n = g.rows();
  std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
  // q(i,i) = Cholesky-like diagonal, q(i,j) = mu_ij (Fincke-Pohst form)
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g(i, j).get_d();
  for (std::size_t i = 0; i < n; ++i) {
    q[i][i] = a[i][i];
    for (std::size_t j = i + 1; j < n; ++j) q[i][j] = a[i][j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  std::vector<std::vector<long>> out;
  std::vector<long> x(n, 0);
  const double eps = 1e-6;
  std::function<void(int, double)> rec = [&](int i, double remaining) {
    double center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= q[i][j] * static_cast<double>(x[j]);
    const double radius = std::sqrt(std::max(0.0, remaining / q[i][i])) + eps;
    const long lo = static_cast<long>(std::ceil(center - radius));
    const long hi = static_cast<long>(std::floor(center + radius));
    for (long v = lo; v <= hi; ++v) {
      x[i] = v;
      const double used = q[i][i] * (v - center) * (v - center);
      if (used > remaining + eps) continue;
      if (i == 0) {
        Integer s = 0;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) s += g(r, c) * x[r] * x[c];
        if (s <= bound) out.push_back(x);
      } else {
        rec(i - 1, remaining - used);
      }
    }
    x[i] = 0;
  };
  rec(static_cast<int>(n) - 1, static_cast<double>(bound));
  return out;
}

}  // namespace detail

/// Roots e + k c + v of example 3, for E_8(2)-components v with -v^2/2 <= max_height.
inline std::vector<LatticeVector> example3_roots(const ExampleData& ex, long max_height)
{
  // -v^2/2 on E_8(2) is the positive E_8 form
  IntMatrix pos(8, 8);
  const Lattice e8 = e8_negative();
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) pos(i, j) = -e8.gram()(i, j);
  std::vector<LatticeVector> roots;
  for (const auto& v : detail::short_vectors(pos, max_height)) {
    LatticeVector d(10, Rational(0));
    d[1] = 1;
    for (std::size_t i = 0; i < 8; ++i) d[2 + i] = v[i];
    LatticeVector vv(10, Rational(0));
    for (std::size_t i = 0; i < 8; ++i) vv[2 + i] = v[i];
    d[0] = -ex.S.norm(vv) / 2;
    roots.push_back(d);
  }
  return roots;
}

inline bool in_positive_cone(const ExampleData& ex, const LatticeVector& x)
{
  return ex.S.norm(x) >= 0 && ex.S.inner(x, ex.h0) > 0;
}

/// Nef: in the closed positive cone minus 0 and pairing >= 0 with every irreducible (-2)-class.
inline bool is_nef(const LatticeVector& x, const ExampleData& ex)
{
  if (std::all_of(x.begin(), x.end(), [](const Rational& r) { return r == 0; }))
    throw std::invalid_argument("is_nef: zero vector");
  if (!in_positive_cone(ex, x)) return false;
  if (ex.id != 3) {
    return std::all_of(ex.simple_roots.begin(), ex.simple_roots.end(),
                       [&](const LatticeVector& d) { return ex.S.inner(x, d) >= 0; });
  }
  // x = xc c + xe e + u; x . (e + k c + v) = xc - 2 xe + xe Q(v) + u.v with Q(v) = -v^2/2
  const Rational xc = x[0], xe = x[1];
  LatticeVector u(10, Rational(0));
  for (std::size_t i = 2; i < 10; ++i) u[i] = x[i];
  const bool u_zero = std::all_of(u.begin(), u.end(), [](const Rational& r) { return r == 0; });
  if (xe < 0) return false;
  if (xe == 0) return u_zero && xc >= 0;
  // |u.v| <= 2 sqrt(Q(u) Q(v)); beyond Q(v) = s^2 with s the larger root of
  // xe s^2 - 2 sqrt(Q(u)) s + (xc - 2 xe) = 0 every pairing is positive
  const double qu = Rational(-ex.S.norm(u) / 2).get_d();
  const double k = Rational(xc - 2 * xe).get_d();
  const double disc = 4 * qu - 4 * xe.get_d() * k;
  long height = 0;
  if (disc >= 0) {
    const double s = (2 * std::sqrt(qu) + std::sqrt(disc)) / (2 * xe.get_d());
    height = static_cast<long>(std::ceil(s * s)) + 1;
  }
  for (const auto& d : example3_roots(ex, height))
    if (ex.S.inner(x, d) < 0) return false;
  return true;
}

/// Effective classes of norm >= -2: the closed positive cone, and the (-2)-vectors
/// pairing positively with the interior point h0.
inline bool is_effective(const LatticeVector& x, const ExampleData& ex)
{
  if (std::all_of(x.begin(), x.end(), [](const Rational& r) { return r == 0; }))
    throw std::invalid_argument("is_effective: zero vector");
  const Rational n = ex.S.norm(x);
  if (n < -2) throw std::invalid_argument("is_effective: norm below -2");
  const Rational s = ex.S.inner(x, ex.h0);
  if (n >= 0) return s > 0;
  if (n == -2) {
    if (s == 0) throw IntegrityError("(-2)-vector orthogonal to the interior point h0");
    return s > 0;
  }
  return false;
}

struct WeylVectorReport {
  bool ok = false;
  ChamberCase chamber = ChamberCase::elliptic;
  Rational rho_squared;
};

inline WeylVectorReport weyl_vector_check(const ExampleData& ex)
{
  WeylVectorReport r;
  r.rho_squared = ex.S.norm(ex.rho);
  r.ok = !ex.simple_roots.empty() &&
         std::all_of(ex.simple_roots.begin(), ex.simple_roots.end(),
                     [&](const LatticeVector& d) { return ex.S.inner(ex.rho, d) == 1; }) &&
         r.rho_squared >= 0;
  r.chamber = r.rho_squared > 0 ? ChamberCase::elliptic : ChamberCase::parabolic;
  return r;
}

/// Breadth-first enumeration of the group generated by the simple reflections,
/// words of length <= depth, deduplicated by exact matrix. `expand` may veto
/// growing the tree past an element (used for box pruning).
inline std::vector<WeylElement> enumerate_weyl(
    const ExampleData& ex, int depth,
    const std::function<bool(const WeylElement&)>& expand = nullptr)
{
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  std::vector<IntMatrix> gens;
  for (const auto& d : ex.simple_roots) gens.push_back(reflection_matrix(ex.S, d));
  std::vector<WeylElement> all{WeylElement{IntMatrix::identity(ex.S.rank()), {}, 1}};
  std::set<IntMatrix> seen{all.front().matrix};
  std::vector<std::size_t> frontier{0};
  for (int len = 1; len <= depth; ++len) {
    std::vector<std::size_t> next;
    for (auto idx : frontier) {
      if (expand && !expand(all[idx])) continue;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        IntMatrix m = gens[g] * all[idx].matrix;
        if (!seen.insert(m).second) continue;
        WeylElement w{std::move(m), {}, -all[idx].det};
        w.word.push_back(static_cast<int>(g));
        w.word.insert(w.word.end(), all[idx].word.begin(), all[idx].word.end());
        all.push_back(std::move(w));
        next.push_back(all.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  return all;
}

namespace detail {

inline ExampleData example1()
{
  ExampleData ex;
  ex.id = 1;
  ex.S = Lattice(IntMatrix{{-2, 2, 2}, {2, -2, 2}, {2, 2, -2}});
  ex.simple_roots = {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})};
  ex.rho = make_rational(1, 2) * vec({1, 1, 1});
  ex.h0 = ex.rho;
  ex.frame_gram = IntMatrix{{0, 0, 1}, {0, -2, 0}, {1, 0, 0}};
  // delta1 = 2f2 - f3, delta2 = 2f-2 - f3, delta3 = f3
  ex.to_frame = RatMatrix(3, 3);
  const long cols[3][3] = {{2, -1, 0}, {0, -1, 2}, {0, 1, 0}};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) ex.to_frame(i, j) = Rational(cols[j][i]);
  ex.pairing_scale = 1;
  ex.basis_names = {"delta1", "delta2", "delta3"};
  ex.chamber = ChamberCase::elliptic;
  return ex;
}

inline ExampleData example2()
{
  ExampleData ex;
  ex.id = 2;
  // basis e1, e2, e3; e4 = e1 + e3 - e2
  ex.S = Lattice(IntMatrix{{-2, 2, 6}, {2, -2, 2}, {6, 2, -2}});
  ex.simple_roots = {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({1, -1, 1})};
  ex.rho = make_rational(1, 4) * vec({1, 0, 1});
  ex.h0 = ex.rho;
  ex.frame_gram = IntMatrix{{0, 0, 1}, {0, -4, 0}, {1, 0, 0}};
  // delta1 = -f3, delta2 = 4f2 + f3, delta3 = 4f2 + 3f3 + 4f-2
  ex.to_frame = RatMatrix(3, 3);
  const long cols[3][3] = {{0, -1, 0}, {4, 1, 0}, {4, 3, 4}};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) ex.to_frame(i, j) = Rational(cols[j][i]);
  ex.pairing_scale = make_rational(1, 2);  // S = M_II(1/2)
  ex.basis_names = {"e1", "e2", "e3"};
  ex.chamber = ChamberCase::elliptic;
  return ex;
}

inline ExampleData example3()
{
  ExampleData ex;
  ex.id = 3;
  // U = Zc + Ze with c^2 = 0, e^2 = -2, c.e = 1, plus E_8(2)
  const Lattice u(IntMatrix{{0, 1}, {1, -2}});
  ex.S = direct_sum(u, rescale(e8_negative(), 2));
  ex.rho = LatticeVector(10, Rational(0));
  ex.rho[0] = 1;
  ex.h0 = LatticeVector(10, Rational(0));
  ex.h0[0] = 3;  // (3c + e) . (e + k c + v) = 1 + k >= 1
  ex.h0[1] = 1;
  ex.chamber = ChamberCase::parabolic;
  ex.basis_names = {"c", "e", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"};
  ex.simple_roots = example3_roots(ex, 2);
  return ex;
}

}  // namespace detail

inline ExampleData example_data(int id)
{
  switch (id) {
    case 1: return detail::example1();
    case 2: return detail::example2();
    case 3: return detail::example3();
    default: throw std::invalid_argument("unknown example id " + std::to_string(id));
  }
}

}  // namespace dforge::lattice

namespace dforge::lattice {

/// Numerical facts about one example, as printed by `dforge lattice`.
struct ExampleReport {
  int id = 0;
  bool weyl_ok = false;
  ChamberCase chamber = ChamberCase::elliptic;
  Rational rho_squared;
  Rational h_squared;  // h = 2 rho (example 1), 4 rho (example 2)
  std::size_t roots_checked = 0;
  std::vector<std::pair<std::string, bool>> checks;

  bool passed() const
  {
    return weyl_ok && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
  }
};

inline IntMatrix frame_gram_of(const ExampleData& ex, const std::vector<LatticeVector>& frame_vectors)
{
  const std::size_t n = frame_vectors.size();
  IntMatrix g(n, n);
  const Lattice m0(ex.frame_gram);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = m0.inner(frame_vectors[i], frame_vectors[j]).get_num();
  return g;
}

inline ExampleReport example_report(const ExampleData& ex)
{
  ExampleReport r;
  r.id = ex.id;
  const WeylVectorReport w = weyl_vector_check(ex);
  r.weyl_ok = w.ok;
  r.chamber = w.chamber;
  r.rho_squared = w.rho_squared;
  r.roots_checked = ex.simple_roots.size();
  std::vector<LatticeVector> frame;
  if (ex.has_frame())
    for (const auto& d : ex.simple_roots) frame.push_back(act(ex.to_frame, d));
  if (ex.id == 1) {
    const IntMatrix expected{{-2, 2, 2}, {2, -2, 2}, {2, 2, -2}};
    r.checks.push_back({"frame Gram of delta_i matches", frame_gram_of(ex, frame) == expected});
    r.checks.push_back({"frame vectors 2f2-f3, 2f-2-f3, f3",
                        frame == std::vector<LatticeVector>{vec({2, -1, 0}), vec({0, -1, 2}), vec({0, 1, 0})}});
    r.h_squared = ex.S.norm(Rational(2) * ex.rho);
    r.checks.push_back({"h = 2 rho has h^2 = 6", r.h_squared == 6});
    r.checks.push_back({"elliptic", w.chamber == ChamberCase::elliptic});
  } else if (ex.id == 2) {
    const IntMatrix e_gram{{-2, 2, 6, 2}, {2, -2, 2, 6}, {6, 2, -2, 2}, {2, 6, 2, -2}};
    IntMatrix twice = e_gram;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) twice(i, j) *= 2;
    r.checks.push_back({"delta_i . delta_j = 2 e_i . e_j", frame_gram_of(ex, frame) == twice});
    r.checks.push_back({"frame vectors -f3, 4f2+f3, 4f2+3f3+4f-2, f3+4f-2",
                        frame == std::vector<LatticeVector>{vec({0, -1, 0}), vec({4, 1, 0}), vec({4, 3, 4}),
                                                            vec({0, 1, 4})}});
    IntMatrix s_gram(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) s_gram(i, j) = ex.S.inner(ex.simple_roots[i], ex.simple_roots[j]).get_num();
    r.checks.push_back({"e_i . e_j matches", s_gram == e_gram});
    const auto& e = ex.simple_roots;
    const LatticeVector rho13 = make_rational(1, 4) * (e[0] + e[2]);
    const LatticeVector rho24 = make_rational(1, 4) * (e[1] + e[3]);
    r.checks.push_back({"(e1+e3)/4 = (e2+e4)/4 = rho", rho13 == rho24 && rho13 == ex.rho});
    r.h_squared = ex.S.norm(Rational(4) * ex.rho);
    r.checks.push_back({"h = 4 rho has h^2 = 8", r.h_squared == 8});
    r.checks.push_back({"elliptic", w.chamber == ChamberCase::elliptic});
  } else {
    r.checks.push_back({"at least 20 roots enumerated", ex.simple_roots.size() >= 20});
    r.checks.push_back({"every enumerated root passes the membership test",
                        std::all_of(ex.simple_roots.begin(), ex.simple_roots.end(),
                                    [&](const LatticeVector& d) { return example3_root_test(ex, d); })});
    r.checks.push_back({"rho^2 = 0", w.rho_squared == 0});
    r.checks.push_back({"parabolic", w.chamber == ChamberCase::parabolic});
    r.checks.push_back({"det S = -256", ex.S.det() == -256});
  }
  r.checks.push_back({"signature (1, n)", ex.S.hyperbolic()});
  r.checks.push_back({"even", ex.S.even()});
  return r;
}

}  // namespace dforge::lattice
