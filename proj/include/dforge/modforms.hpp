#pragma once

// One-variable q-expansions: eta powers and their coefficients tau_d, level-one
// Eisenstein series, the discriminant, Cohen's numbers H(k, N) and the forms
// built from them.
//
// Convention: tau_d(N) is the coefficient of q^{N/8} in eta^d. For d = 9 and
// d = 3 this is the indexing used by the psi-form expansions (tau_9(4n - l^2),
// tau_3(2n - l^2)).

#include <dforge/arith.hpp>
#include <dforge/errors.hpp>
#include <dforge/series.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>

namespace dforge {

/// Concurrent-read, exclusive-write memo table.
template <typename Key, typename Value>
class GuardedCache {
 public:
  template <typename Make>
  Value get(const Key& key, Make&& make)
  {
    {
      std::shared_lock lock(mu_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    Value v = make();
    std::unique_lock lock(mu_);
    return map_.try_emplace(key, std::move(v)).first->second;
  }

 private:
  std::shared_mutex mu_;
  std::map<Key, Value> map_;
};

struct EtaPower {
  int d = 0;
  ScaledSeries series;  // in q, denominator 24

  /// tau_d(N): coefficient of q^{N/8}. Throws IndeterminateError beyond the computed depth.
  Integer tau(std::int64_t N) const
  {
    const Rational e = make_rational(N, 8);
    const auto c = series.coefficient(exps(e));
    if (!c) throw IndeterminateError("tau_" + std::to_string(d) + "(" + std::to_string(N) +
                                     ") beyond computed depth");
    return c->get_num();
  }
};

/// q^{d/24} prod_{n>=1} (1 - q^n)^d, exact for q-exponents <= qmax.
inline EtaPower eta_power(int d, const Rational& qmax)
{
  if (d < 1) throw std::invalid_argument("eta_power needs d >= 1");
  const Rational shift = make_rational(d, 24);
  const Rational unit_max = qmax - shift;
  ScaledSeries unit = ScaledSeries::constant(1, 1, TruncationBox(unit_max));
  if (unit_max >= 0) {
    const auto n_max = to_int64(dforge::floor(unit_max));
    ScaledSeries euler = ScaledSeries::constant(1, 1, TruncationBox(unit_max));
    for (std::int64_t n = 1; n <= n_max; ++n) {
      ScaledSeries factor = ScaledSeries::constant(1, 1);
      factor.add_term(exps(n), -1);
      euler = mul(euler, factor);
    }
    unit = pow(euler, static_cast<unsigned long>(d));
  }
  return EtaPower{d, times_monomial(unit, exps(shift)).with_denom(24)};
}

/// Shared eta-power tables, recomputed deeper on demand.
inline std::shared_ptr<const EtaPower> eta_table(int d, std::int64_t max_N)
{
  static std::shared_mutex mu;
  static std::map<int, std::shared_ptr<const EtaPower>> tables;
  const Rational need = make_rational(max_N, 8);
  {
    std::shared_lock lock(mu);
    auto it = tables.find(d);
    if (it != tables.end() && *it->second->series.box().qmax() >= need) return it->second;
  }
  std::unique_lock lock(mu);
  auto& slot = tables[d];
  if (!slot || *slot->series.box().qmax() < need) {
    // grow geometrically so repeated small extensions stay cheap
    Rational depth = need;
    if (slot) depth = std::max(depth, Rational(*slot->series.box().qmax() * 2));
    slot = std::make_shared<const EtaPower>(eta_power(d, depth));
  }
  return slot;
}

inline Integer tau(int d, std::int64_t N)
{
  if (N < 0) return 0;
  return eta_table(d, N)->tau(N);
}

/// Level-one Eisenstein series E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n, k in {4, 6, 8}.
inline ScaledSeries eisenstein(int k, const Rational& qmax)
{
  if (k != 4 && k != 6 && k != 8) throw std::invalid_argument("unsupported Eisenstein weight");
  const Rational c = -Rational(2 * k) / arith::bernoulli(static_cast<unsigned>(k));
  ScaledSeries s = ScaledSeries::constant(1, 1, TruncationBox(qmax));
  if (qmax < 0) return ScaledSeries(1, TruncationBox(qmax));
  const auto n_max = to_int64(dforge::floor(qmax));
  for (std::int64_t n = 1; n <= n_max; ++n)
    s.add_term(exps(n), c * arith::sigma(static_cast<unsigned>(k - 1), n));
  return s;
}

/// Delta = q prod (1 - q^n)^24.
inline ScaledSeries discriminant(const Rational& qmax)
{
  return eta_power(24, qmax).series.reduced();
}

/// Cohen's H(k, N): zeta(1 - 2k) at N = 0, zero unless (-1)^k N = 0, 1 mod 4,
/// otherwise L(1 - k, chi_D) sum_{d | f} mu(d) chi_D(d) d^{k-1} sigma_{2k-1}(f/d)
/// where (-1)^k N = D f^2 with D fundamental.
inline Rational cohen_H(int k, std::int64_t N)
{
  if (k < 1) throw std::invalid_argument("cohen_H needs k >= 1");
  if (N < 0) throw std::invalid_argument("cohen_H needs N >= 0");
  static GuardedCache<std::pair<int, std::int64_t>, Rational> cache;
  return cache.get({k, N}, [&]() -> Rational {
    if (N == 0) return arith::zeta_one_minus(static_cast<unsigned>(2 * k));
    const std::int64_t disc = (k % 2 == 0) ? N : -N;
    const std::int64_t r = ((disc % 4) + 4) % 4;
    if (r == 2 || r == 3) return 0;
    const auto [D, f] = arith::fundamental_decomposition(disc);
    Integer sum = 0;
    for (auto d : arith::divisors(f)) {
      const int mu = arith::mobius(d);
      if (mu == 0) continue;
      const int chi = arith::kronecker(D, d);
      if (chi == 0) continue;
      sum += mu * chi * ipow(Integer(d), static_cast<unsigned long>(k - 1)) *
             arith::sigma(static_cast<unsigned>(2 * k - 1), f / d);
    }
    return arith::dirichlet_l_negative(static_cast<unsigned>(k), D) * sum;
  });
}

/// Cohen's form of weight k + 1/2: sum_{n>=0} H(k, n) q^n.
inline ScaledSeries cohen_form(int k, const Rational& qmax)
{
  ScaledSeries s(1, TruncationBox(qmax));
  if (qmax < 0) return s;
  const auto n_max = to_int64(dforge::floor(qmax));
  for (std::int64_t n = 0; n <= n_max; ++n) s.add_term(exps(n), cohen_H(k, n));
  return s;
}

/// Substitutes q -> q^4.
inline ScaledSeries at_4z(const ScaledSeries& s) { return rescale_exponents(s, 4); }

/// C_1 = (11 E_6(4z) H_5(z) - 21 E_8(4z) H_3(z)) / (12 Delta(4z)); coefficient of q^m is c_1(m).
inline ScaledSeries c1_via_cohen(const Rational& qmax)
{
  // 1/Delta(4z) has valuation -4 and loses 8 of precision on inversion
  const Rational depth = qmax + 8;
  const Rational slow = depth / 4 + 1;
  const ScaledSeries num = (at_4z(eisenstein(6, slow)) * cohen_form(5, depth)).scaled(11) -
                           (at_4z(eisenstein(8, slow)) * cohen_form(3, depth)).scaled(21);
  const ScaledSeries den = at_4z(discriminant(slow)).scaled(12).truncated(TruncationBox(depth));
  ScaledSeries c1 = mul(num.truncated(TruncationBox(depth)), invert_unit(den));
  if (!c1.box().qmax() || *c1.box().qmax() < qmax)
    throw std::logic_error("c1_via_cohen: insufficient working precision");
  return c1.truncated(TruncationBox(qmax));
}

}  // namespace dforge
