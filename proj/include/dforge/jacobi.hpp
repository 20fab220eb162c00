#pragma once

// Two-variable (q, r) Jacobi-form expansions and the multiplicity tables c_1, c_2
// read off from the weight-0 forms phi_{0,1} and phi_{0,2}.

#include <dforge/modforms.hpp>

#include <cstdlib>
#include <map>
#include <optional>
#include <utility>

namespace dforge {

struct NormShape {
  int a = 4;  // coefficient of key (n, l) depends only on a*n - b*l^2
  int b = 1;
};

struct JacobiExpansion {
  ScaledSeries series{2};
  Rational weight;
  Rational index;
  std::optional<NormShape> norm_shape;
};

enum class ThetaForm { sum, product };

/// theta_11 = sum_n (-1)^n q^{(2n+1)^2/8} r^{(2n+1)/2}
///          = -q^{1/8} r^{-1/2} prod_{n>=1} (1 - q^{n-1} r)(1 - q^n r^{-1})(1 - q^n).
inline JacobiExpansion theta11(const Rational& qmax, ThetaForm form)
{
  JacobiExpansion j{ScaledSeries(2, TruncationBox(qmax), 8), make_rational(1, 2), make_rational(1, 2),
                    std::nullopt};
  if (form == ThetaForm::sum) {
    for (std::int64_t m = 1; make_rational(m * m, 8) <= qmax; m += 2) {
      // m = 2n + 1 > 0 for n >= 0 and m' = -m for n' = -n - 1, with opposite signs
      const int sign = ((m - 1) / 2) % 2 == 0 ? 1 : -1;
      j.series.add_term(exps(make_rational(m * m, 8), make_rational(m, 2)), sign);
      j.series.add_term(exps(make_rational(m * m, 8), make_rational(-m, 2)), -sign);
    }
    return j;
  }
  const Rational lead = make_rational(1, 8);
  const TruncationBox inner(qmax - lead);
  ScaledSeries prod = ScaledSeries::constant(2, 1, inner);
  if (qmax - lead >= 0) {
    const auto n_max = to_int64(dforge::floor(qmax - lead)) + 1;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      prod = mul(prod, binomial_factor(2, exps(n - 1, 1), 1, inner));
      prod = mul(prod, binomial_factor(2, exps(n, -1), 1, inner));
      prod = mul(prod, binomial_factor(2, exps(n), 1, inner));
    }
  }
  j.series = times_monomial(prod, exps(lead, make_rational(-1, 2)), -1).with_denom(8);
  return j;
}

/// psi_{5,1/2} = eta^9 theta_11.
inline JacobiExpansion psi_5_half(const Rational& qmax)
{
  const ScaledSeries eta9 = eta_power(9, qmax).series.with_vars(2);
  return {mul(eta9, theta11(qmax, ThetaForm::product).series), 5, make_rational(1, 2), std::nullopt};
}

/// sum over n, l odd, n > 0, 4n - l^2 > 0 of (-1)^{(l-1)/2} tau_9(4n - l^2) q^{n/2} r^{l/2}.
inline ScaledSeries psi_5_half_sum(const Rational& qmax)
{
  ScaledSeries s(2, TruncationBox(qmax), 8);
  for (std::int64_t n = 1; make_rational(n, 2) <= qmax; n += 2) {
    for (std::int64_t l = -1 - 2 * n; l <= 1 + 2 * n; l += 2) {
      const std::int64_t norm = 4 * n - l * l;
      if (norm <= 0) continue;
      const int sign = ((l - 1) / 2) % 2 == 0 ? 1 : -1;
      s.add_term(exps(make_rational(n, 2), make_rational(l, 2)), sign * Rational(tau(9, norm)));
    }
  }
  return s;
}

/// psi_{2,1/2} = -eta^3 theta_11.
inline JacobiExpansion psi_2_half(const Rational& qmax)
{
  const ScaledSeries eta3 = eta_power(3, qmax).series.with_vars(2);
  return {-mul(eta3, theta11(qmax, ThetaForm::product).series), 2, make_rational(1, 2), std::nullopt};
}

/// sum over n = 1 mod 4, l odd of (-1)^{(l+1)/2} tau_3(2n - l^2) q^{n/4} r^{l/2}.
inline ScaledSeries psi_2_half_sum(const Rational& qmax)
{
  ScaledSeries s(2, TruncationBox(qmax), 8);
  for (std::int64_t n = 1; make_rational(n, 4) <= qmax; n += 4) {
    for (std::int64_t l = -1 - 2 * n; l <= 1 + 2 * n; l += 2) {
      const std::int64_t norm = 2 * n - l * l;
      if (norm <= 0) continue;
      const int sign = ((l + 1) / 2) % 2 == 0 ? 1 : -1;
      s.add_term(exps(make_rational(n, 4), make_rational(l, 2)), sign * Rational(tau(3, norm)));
    }
  }
  return s;
}

/// E_{k,1} = zeta(3 - 2k)^{-1} sum_{4n - l^2 >= 0} H(k - 1, 4n - l^2) q^n r^l, k in {4, 6}.
inline JacobiExpansion jacobi_eisenstein(int k, const Rational& qmax)
{
  if (k != 4 && k != 6) throw std::invalid_argument("jacobi_eisenstein supports k = 4, 6");
  const Rational zeta = arith::zeta_one_minus(static_cast<unsigned>(2 * k - 2));
  JacobiExpansion j{ScaledSeries(2, TruncationBox(qmax)), k, 1, NormShape{4, 1}};
  if (qmax < 0) return j;
  const auto n_max = to_int64(dforge::floor(qmax));
  for (std::int64_t n = 0; n <= n_max; ++n)
    for (std::int64_t l = 0; l * l <= 4 * n; ++l) {
      const Rational c = cohen_H(k - 1, 4 * n - l * l) / zeta;
      if (!is_integral(c))
        throw IntegrityError("E_{" + std::to_string(k) + ",1} coefficient is not integral");
      j.series.add_term(exps(n, l), c);
      if (l != 0) j.series.add_term(exps(n, -l), c);
    }
  return j;
}

namespace detail {

inline void require_integral(const ScaledSeries& s, const char* what)
{
  if (!s.is_integral()) throw IntegrityError(std::string(what) + " has a non-integral coefficient");
}

}  // namespace detail

/// phi_{0,1} = (E_4^2 E_{4,1} - E_6 E_{6,1}) / (144 Delta).
inline JacobiExpansion phi01(const Rational& qmax)
{
  const Rational depth = qmax + 2;
  const ScaledSeries e4 = eisenstein(4, depth).with_vars(2);
  const ScaledSeries e6 = eisenstein(6, depth).with_vars(2);
  const ScaledSeries num = e4 * e4 * jacobi_eisenstein(4, depth).series -
                           e6 * jacobi_eisenstein(6, depth).series;
  const ScaledSeries inv = invert_unit(discriminant(depth).scaled(144)).with_vars(2);
  ScaledSeries s = mul(num, inv);
  if (!s.box().qmax() || *s.box().qmax() < qmax) throw std::logic_error("phi01: working precision");
  s = s.truncated(TruncationBox(qmax));
  detail::require_integral(s, "phi_{0,1}");
  return {s, 0, 1, NormShape{4, 1}};
}

/// phi_{0,2} = (E_4 E_{4,1}^2 - E_{6,1}^2) / (288 Delta).
inline JacobiExpansion phi02(const Rational& qmax)
{
  const Rational depth = qmax + 2;
  const ScaledSeries e4 = eisenstein(4, depth).with_vars(2);
  const ScaledSeries e41 = jacobi_eisenstein(4, depth).series;
  const ScaledSeries e61 = jacobi_eisenstein(6, depth).series;
  const ScaledSeries num = e4 * e41 * e41 - e61 * e61;
  const ScaledSeries inv = invert_unit(discriminant(depth).scaled(288)).with_vars(2);
  ScaledSeries s = mul(num, inv);
  if (!s.box().qmax() || *s.box().qmax() < qmax) throw std::logic_error("phi02: working precision");
  s = s.truncated(TruncationBox(qmax));
  detail::require_integral(s, "phi_{0,2}");
  return {s, 0, 2, NormShape{8, 1}};
}

/// The common coefficient of all keys (n, l), n >= 0, of norm a*n - b*l^2 = m.
/// Norms no integer key can reach give 0; reachable norms with no key inside the
/// box are indeterminate; disagreeing keys are an integrity failure.
inline Integer extract_c(const JacobiExpansion& phi, std::int64_t m)
{
  if (!phi.norm_shape) throw std::invalid_argument("expansion has no norm shape");
  const auto [a, b] = *phi.norm_shape;
  const auto& box = phi.series.box();
  bool reachable = false;
  for (std::int64_t l = 0; l < a; ++l)
    if ((((m + b * l * l) % a) + a) % a == 0) reachable = true;
  if (!reachable) return 0;
  std::optional<Rational> value;
  for (std::int64_t l = 0;; ++l) {
    if ((m + b * l * l) % a != 0) continue;
    const std::int64_t n = (m + b * l * l) / a;
    if (n < 0) continue;
    if (box.qmax() && n > *box.qmax()) break;
    for (std::int64_t sl : {l, -l}) {
      const Rational c = *phi.series.coefficient(exps(n, sl));
      if (value && *value != c)
        throw IntegrityError("coefficients of norm " + std::to_string(m) + " disagree");
      value = c;
    }
    if (!box.qmax()) break;
  }
  if (!value) throw IndeterminateError("norm " + std::to_string(m) + " not represented in box");
  if (!is_integral(*value)) throw IntegrityError("non-integral multiplicity");
  return value->get_num();
}

/// c(m) for every norm up to the largest the expansion certifies; below the minimal
/// norm of the form every value is 0.
class MultiplicityTable {
 public:
  MultiplicityTable() = default;

  explicit MultiplicityTable(const JacobiExpansion& phi) : shape_(*phi.norm_shape)
  {
    const auto [a, b] = shape_;
    std::int64_t lo = 0;
    bool any = false;
    for (const auto& [k, c] : phi.series.terms()) {
      const Exponents e = phi.series.exponents(k);
      const Rational nr = a * e[kQ] - b * e[kR] * e[kR];
      const std::int64_t norm = to_int64(nr.get_num());
      lo = any ? std::min(lo, norm) : norm;
      any = true;
    }
    // certify the zeros just below the minimal norm as well
    for (std::int64_t m = lo - 2 * a; m < lo; ++m)
      if (extract_c(phi, m) != 0) throw IntegrityError("multiplicity below minimal norm");
    min_norm_ = lo;
    for (std::int64_t m = lo;; ++m) {
      try {
        values_.emplace(m, extract_c(phi, m));
      } catch (const IndeterminateError&) {
        max_norm_ = m - 1;
        break;
      }
    }
  }

  Integer operator()(std::int64_t m) const
  {
    if (m < min_norm_) return 0;
    if (m > max_norm_) throw IndeterminateError("multiplicity c(" + std::to_string(m) + ") beyond table");
    return values_.at(m);
  }

  std::int64_t min_norm() const { return min_norm_; }
  std::int64_t max_norm() const { return max_norm_; }
  NormShape shape() const { return shape_; }
  const std::map<std::int64_t, Integer>& values() const { return values_; }

 private:
  NormShape shape_{};
  std::int64_t min_norm_ = 0;
  std::int64_t max_norm_ = -1;
  std::map<std::int64_t, Integer> values_;
};

/// Smallest q-bound at which phi certifies every norm up to max_norm.
inline Rational depth_for_norm(int a, std::int64_t max_norm)
{
  // every reachable residue has a representative with l < a, so n <= (m + a^2) / a
  return make_rational(max_norm + static_cast<std::int64_t>(a) * a, a) + 1;
}

}  // namespace dforge
