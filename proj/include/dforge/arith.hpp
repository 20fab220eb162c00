#pragma once

#include <dforge/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dforge::arith {

/// Prime factorization by trial division, as (prime, exponent) pairs.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n)
{
  if (n < 1) throw std::invalid_argument("factorize needs n >= 1");
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

inline std::vector<std::int64_t> divisors(std::int64_t n)
{
  std::vector<std::int64_t> d{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = d.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) d.push_back(d[i] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

inline int mobius(std::int64_t n)
{
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

/// sigma_k(n) = sum of d^k over divisors d of n.
inline Integer sigma(unsigned k, std::int64_t n)
{
  Integer s = 0;
  for (auto d : divisors(n)) s += ipow(Integer(d), k);
  return s;
}

/// Bernoulli numbers with B_1 = -1/2, from sum_{j<=n} C(n+1, j) B_j = 0.
class BernoulliTable {
 public:
  const Rational& operator()(unsigned n)
  {
    std::lock_guard lock(mu_);
    while (b_.size() <= n) {
      const unsigned m = static_cast<unsigned>(b_.size());
      Rational s = 0;
      Integer binom = 1;  // C(m+1, j)
      for (unsigned j = 0; j < m; ++j) {
        s += binom * b_[j];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      b_.push_back(-s / (m + 1));
    }
    return b_[n];
  }

 private:
  std::mutex mu_;
  std::vector<Rational> b_{Rational(1)};
};

inline Rational bernoulli(unsigned n)
{
  static BernoulliTable table;
  return table(n);
}

/// Bernoulli polynomial B_n(x) = sum_j C(n, j) B_j x^{n-j}.
inline Rational bernoulli_poly(unsigned n, const Rational& x)
{
  Rational s = 0;
  Integer binom = 1;
  for (unsigned j = 0; j <= n; ++j) {
    s += binom * bernoulli(j) * rpow(x, n - j);
    binom = binom * (n - j) / (j + 1);
  }
  return s;
}

/// zeta(1 - n) for n >= 2, i.e. -B_n / n.
inline Rational zeta_one_minus(unsigned n)
{
  if (n < 2) throw std::invalid_argument("zeta_one_minus needs n >= 2");
  return -bernoulli(n) / n;
}

/// Kronecker symbol (a / n) for n >= 1.
inline int kronecker(std::int64_t a, std::int64_t n)
{
  if (n < 1) throw std::invalid_argument("kronecker needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    const std::int64_t am8 = ((a % 8) + 8) % 8;
    if (am8 % 2 == 0) return 0;
    if (am8 == 3 || am8 == 5) result = -result;
  }
  // Jacobi symbol (a / n), n odd
  std::int64_t x = ((a % n) + n) % n;
  std::int64_t m = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

/// (-4 / m): +1 for m = 1 mod 4, -1 for m = 3 mod 4, 0 for even m.
inline int kronecker_minus4(std::int64_t m)
{
  const std::int64_t r = ((m % 4) + 4) % 4;
  if (r == 1) return 1;
  if (r == 3) return -1;
  return 0;
}

inline bool is_fundamental_discriminant(std::int64_t d)
{
  if (d == 1) return true;
  if (d == 0) return false;
  const std::int64_t r = ((d % 4) + 4) % 4;
  auto squarefree = [](std::int64_t n) {
    n = n < 0 ? -n : n;
    for (auto [p, e] : factorize(n))
      if (e > 1) return false;
    return true;
  };
  if (r == 1) return squarefree(d);
  if (r == 0) {
    const std::int64_t m = ((d / 4) % 4 + 4) % 4;
    return (m == 2 || m == 3) && squarefree(d / 4);
  }
  return false;
}

/// Writes a discriminant (nonzero, = 0 or 1 mod 4) as D * f^2 with D fundamental.
inline std::pair<std::int64_t, std::int64_t> fundamental_decomposition(std::int64_t disc)
{
  if (disc == 0) throw std::invalid_argument("zero discriminant");
  const std::int64_t r = ((disc % 4) + 4) % 4;
  if (r != 0 && r != 1) throw std::invalid_argument("not a discriminant");
  const std::int64_t sign = disc < 0 ? -1 : 1;
  std::int64_t f = 1;
  for (auto [p, e] : factorize(disc * sign)) {
    for (int i = 0; i < e / 2; ++i) f *= p;
  }
  // largest f with disc / f^2 a discriminant; shrink f by 2 while needed
  for (;;) {
    const std::int64_t d = disc / (f * f);
    if (is_fundamental_discriminant(d)) return {d, f};
    if (f % 2 != 0) break;
    f /= 2;
  }
  throw std::logic_error("no fundamental decomposition");
}

/// L(1 - k, chi_D) = -B_{k, chi_D} / k with B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f).
inline Rational dirichlet_l_negative(unsigned k, std::int64_t D)
{
  const std::int64_t f = D < 0 ? -D : D;
  Rational b = 0;
  for (std::int64_t a = 1; a <= f; ++a) {
    const int chi = kronecker(D, a);
    if (chi == 0) continue;
    b += chi * bernoulli_poly(k, make_rational(a, f));
  }
  b *= ipow(Integer(f), k - 1);
  return -b / k;
}

}  // namespace dforge::arith
