#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dforge {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "a", "-a" or "a/b"; throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text)
{
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  auto check_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!check_int(s)) throw std::invalid_argument("bad rational: " + s);
    return Rational(Integer(s[0] == '+' ? s.substr(1) : s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!check_int(num) || !check_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("bad rational: " + s);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational r(Integer(num[0] == '+' ? num.substr(1) : num), d);
  r.canonicalize();
  return r;
}

/// Always "num/den", including den == 1.
inline std::string to_fraction_string(const Rational& r)
{
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// "num" when integral, else "num/den".
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Integer floor_div(const Integer& a, const Integer& b)
{
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer floor(const Rational& r) { return floor_div(r.get_num(), r.get_den()); }

inline Integer ceil(const Rational& r)
{
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline std::int64_t to_int64(const Integer& z)
{
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

inline Integer ipow(const Integer& base, unsigned long e)
{
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational rpow(const Rational& base, unsigned long e)
{
  Rational r(ipow(base.get_num(), e), ipow(base.get_den(), e));
  return r;
}

}  // namespace dforge
