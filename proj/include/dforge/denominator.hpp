#pragma once

// Both sides of the denominator identities of examples 1 and 2: the Borcherds
// product, the explicit arithmetic sum, and the sum over the reflection group,
// together with the coefficientwise verifier.
//
// The q, r, p expansions use exponents with respect to exp(pi i (.)); the
// lattice-coordinate form uses exp(2 pi i (.)). The two are related only by
// rescale_exponents with factor 1/2 (or 2 in the other direction).

#include <dforge/jacobi.hpp>
#include <dforge/lattice.hpp>
#include <dforge/siegel.hpp>

#include <json.hpp>

#include <chrono>
#include <future>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

namespace dforge::denominator {

using lattice::ExampleData;
using lattice::LatticeVector;
using lattice::operator+;
using lattice::operator-;

/// Which sign of l the product admits for the n = m = 0 factors.
enum class BoundaryRule { l_negative, l_positive };

inline std::string boundary_name(BoundaryRule b) { return b == BoundaryRule::l_negative ? "l<0" : "l>0"; }

struct IdentityInstance {
  ExampleData example;
  int norm_a = 4;  // product exponent is c(norm_a * n * m - l^2)
  std::shared_ptr<const MultiplicityTable> mult;
  Exponents prefactor;
  BoundaryRule boundary = BoundaryRule::l_negative;
  TruncationBox box;
};

namespace detail {

inline std::int64_t floor_or_throw(const Bound& b, const char* what)
{
  if (!b) throw std::invalid_argument(std::string(what) + " must be bounded");
  return to_int64(dforge::floor(*b));
}

inline std::int64_t isqrt(std::int64_t n)
{
  if (n < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c)
{
  return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
}

}  // namespace detail

/// Largest norm a * n * m - l^2 a product factor inside box can carry.
inline std::int64_t max_product_norm(int norm_a, const Exponents& prefactor, const TruncationBox& box)
{
  if (!box.qmax() || !box.pmax()) throw std::invalid_argument("identity box must bound q and p");
  const Rational nq = *box.qmax() - prefactor[kQ], np = *box.pmax() - prefactor[kP];
  if (nq < 0 || np < 0) return 0;
  return norm_a * to_int64(dforge::floor(nq)) * to_int64(dforge::floor(np));
}

inline IdentityInstance make_instance(int example_id, const TruncationBox& box)
{
  IdentityInstance inst;
  inst.example = lattice::example_data(example_id);
  inst.box = box;
  JacobiExpansion phi;
  if (example_id == 1) {
    inst.norm_a = 4;
    inst.prefactor = exps(make_rational(1, 2), make_rational(1, 2), make_rational(1, 2));
    inst.boundary = BoundaryRule::l_negative;
  } else if (example_id == 2) {
    inst.norm_a = 8;
    inst.prefactor = exps(make_rational(1, 4), make_rational(-1, 2), make_rational(1, 4));
    inst.boundary = BoundaryRule::l_positive;
  } else {
    throw std::invalid_argument("identities exist for examples 1 and 2 only");
  }
  const std::int64_t need = std::max<std::int64_t>(max_product_norm(inst.norm_a, inst.prefactor, box), 0);
  const Rational depth = depth_for_norm(inst.norm_a, need);
  phi = example_id == 1 ? phi01(depth) : phi02(depth);
  inst.mult = std::make_shared<const MultiplicityTable>(phi);
  if (inst.mult->max_norm() < need) throw std::logic_error("multiplicity table too shallow");
  return inst;
}

/// mult of the root with product key (n, l, m): c(norm_a * n * m - l^2).
inline Integer root_multiplicity(const IdentityInstance& inst, std::int64_t n, std::int64_t l, std::int64_t m)
{
  return (*inst.mult)(inst.norm_a * n * m - l * l);
}

/// prefactor * prod_{(n,l,m)>0} (1 - q^n r^l p^m)^{c(norm_a nm - l^2)}, exact in inst.box.
inline ScaledSeries product_side(const IdentityInstance& inst)
{
  const TruncationBox unit_box = inst.box.shifted(-inst.prefactor[kQ], -inst.prefactor[kP]);
  ScaledSeries prod = ScaledSeries::constant(3, 1, unit_box);
  const std::int64_t min_norm = inst.mult->min_norm();
  if (*unit_box.qmax() >= 0 && *unit_box.pmax() >= 0) {
    const auto n_max = detail::floor_or_throw(unit_box.qmax(), "qmax");
    const auto m_max = detail::floor_or_throw(unit_box.pmax(), "pmax");
    for (std::int64_t n = 0; n <= n_max; ++n)
      for (std::int64_t m = 0; m <= m_max; ++m) {
        const std::int64_t l_max = detail::isqrt(inst.norm_a * n * m - min_norm);
        for (std::int64_t l = -l_max; l <= l_max; ++l) {
          if (n == 0 && m == 0) {
            if (l == 0) continue;
            if (inst.boundary == BoundaryRule::l_negative && l > 0) continue;
            if (inst.boundary == BoundaryRule::l_positive && l < 0) continue;
          }
          const Integer c = root_multiplicity(inst, n, l, m);
          if (c == 0) continue;
          prod = mul(prod, binomial_factor(3, exps(n, l, m), c, unit_box));
        }
      }
  }
  return times_monomial(prod, inst.prefactor).reduced();
}

/// Divisor weighting of the example 1 sum. The lift of a weight-5 form carries
/// d^4 on the divisor terms; the unweighted form drops it, which only matters at
/// non-primitive (n, l, m).
enum class DivisorWeight { lift, unweighted };

/// Example 1: sum over odd n, l, m with n, m > 0 of
///   -sum_{d | (n,l,m)} d^4 (-1)^{(l+d)/2} tau_9((4nm - l^2)/d^2) q^{n/2} r^{l/2} p^{m/2}.
/// Example 2: sum over n, m = 1 mod 4, l odd, 2nm - l^2 = N^2 with N >= 1 of
///   (-1)^{(l+1)/2} (-4/N) N sum_{d | (n,l,m)} (-4/d) q^{n/4} r^{l/2} p^{m/4}.
inline ScaledSeries sum_side_explicit(const IdentityInstance& inst, DivisorWeight weight = DivisorWeight::lift)
{
  const TruncationBox& box = inst.box;
  const int id = inst.example.id;
  const std::int64_t scale = id == 1 ? 2 : 4;  // q^{n/scale}
  ScaledSeries s(3, box, scale);
  const Rational nq = *box.qmax() * scale, np = *box.pmax() * scale;
  if (nq < 1 || np < 1) return s;
  const auto n_max = to_int64(dforge::floor(nq));
  const auto m_max = to_int64(dforge::floor(np));
  const std::int64_t step = id == 1 ? 2 : 4;
  for (std::int64_t n = 1; n <= n_max; n += step)
    for (std::int64_t m = 1; m <= m_max; m += step) {
      const std::int64_t big = (id == 1 ? 4 : 2) * n * m;
      const std::int64_t l_max = detail::isqrt(big - 1);
      for (std::int64_t l = -l_max; l <= l_max; ++l) {
        if (l % 2 == 0) continue;
        const std::int64_t norm = big - l * l;
        Integer coeff = 0;
        if (id == 1) {
          for (auto d : arith::divisors(detail::gcd3(n, l, m))) {
            const std::int64_t sign = ((l + d) / 2) % 2 == 0 ? 1 : -1;
            const Integer w = weight == DivisorWeight::lift ? ipow(Integer(d), 4) : Integer(1);
            coeff -= sign * w * tau(9, norm / (d * d));
          }
        } else {
          const std::int64_t N = detail::isqrt(norm);
          if (N < 1 || N * N != norm) continue;
          Integer dsum = 0;
          for (auto d : arith::divisors(detail::gcd3(n, l, m))) dsum += arith::kronecker_minus4(d);
          const std::int64_t sign = ((l + 1) / 2) % 2 == 0 ? 1 : -1;
          coeff = sign * arith::kronecker_minus4(N) * N * dsum;
        }
        if (coeff != 0) s.add_term(exps(make_rational(n, scale), make_rational(l, 2), make_rational(m, scale)), coeff);
      }
    }
  return s.reduced();
}

struct MTableEntry {
  LatticeVector a;
  Integer m;
  bool isotropic = false;  // a = t a0 on an isotropic ray; the value is the corrected m(t a0)
};

struct MTable {
  std::vector<MTableEntry> entries;
  bool corrected = true;
};

/// Identity-coset coefficients: m(a) = -(coefficient of exp(pi i (rho + a) . z)) for nef a.
inline MTable extract_m(const IdentityInstance& inst, const ScaledSeries& explicit_sum)
{
  const ExampleData& ex = inst.example;
  const ScaledSeries lat = rescale_exponents(explicit_sum, 2);
  MTable table;
  bool saw_rho = false;
  for (const auto& [k, c] : lat.terms()) {
    const LatticeVector x = ex.from_lattice_exponents(lat.exponents(k));
    const LatticeVector a = x - ex.rho;
    if (!lattice::is_integral(a)) continue;
    if (std::all_of(a.begin(), a.end(), [](const Rational& t) { return t == 0; })) {
      if (c != 1) throw IntegrityError("the rho term does not carry coefficient 1");
      saw_rho = true;
      continue;
    }
    if (!lattice::is_nef(a, ex)) continue;
    if (!is_integral(c)) throw IntegrityError("non-integral m(a)");
    table.entries.push_back({a, -c.get_num(), ex.S.norm(a) == 0});
  }
  if (!saw_rho && !explicit_sum.is_zero()) throw IntegrityError("explicit sum lacks the rho term");
  return table;
}

struct WeylSum {
  ScaledSeries series{3};
  bool depth_limited = false;
  int depth = 0;
  std::size_t elements = 0;  // group elements contributing inside the box
};

/// sum_w det(w) (e(w rho) - sum_a m(a) e(w (rho + a))), e(x) = exp(pi i x . z), truncated to inst.box.
inline WeylSum sum_side_weyl(const IdentityInstance& inst, const MTable& mtable, int depth)
{
  const ExampleData& ex = inst.example;
  const TruncationBox lat_box = inst.box.scaled(2);
  auto in_box = [&](const LatticeVector& x) {
    const Exponents e = ex.lattice_exponents(x);
    return lat_box.contains(e[kQ], e[kP]);
  };
  // along reduced words the q- and p-exponents of w(rho) only grow, so an element
  // whose w(rho) leaves the box has no descendants inside it
  const auto group = lattice::enumerate_weyl(
      ex, depth, [&](const lattice::WeylElement& w) { return in_box(lattice::act(w.matrix, ex.rho)); });
  WeylSum out;
  out.depth = depth;
  ScaledSeries lat(3, lat_box);
  std::set<std::vector<Rational>> identity_keys;
  std::map<std::vector<Rational>, bool> seen_from_other;
  for (const auto& w : group) {
    const LatticeVector wr = lattice::act(w.matrix, ex.rho);
    if (!in_box(wr)) continue;
    ++out.elements;
    if (static_cast<int>(w.word.size()) == depth && depth > 0) out.depth_limited = true;
    const bool identity = w.word.empty();
    auto put = [&](const LatticeVector& x, const Rational& c) {
      const Exponents e = ex.lattice_exponents(x);
      if (!lat_box.contains(e[kQ], e[kP])) return;
      std::vector<Rational> key(e.begin(), e.end());
      if (identity)
        identity_keys.insert(key);
      else
        seen_from_other[key] = true;
      lat.add_term(e, c);
    };
    put(wr, w.det);
    for (const auto& entry : mtable.entries) put(lattice::act(w.matrix, ex.rho + entry.a), -w.det * Rational(entry.m));
  }
  for (const auto& k : identity_keys)
    if (seen_from_other.count(k)) throw IntegrityError("identity-coset monomial also reached by w != id");
  out.series = rescale_exponents(lat, make_rational(1, 2));
  return out;
}

/// Raises the depth until no element at the maximal depth contributes.
inline WeylSum sum_side_weyl_adaptive(const IdentityInstance& inst, const MTable& mtable, int start = 2,
                                      int max_depth = 64)
{
  for (int d = start;; d += 2) {
    WeylSum w = sum_side_weyl(inst, mtable, d);
    if (!w.depth_limited || d >= max_depth) return w;
  }
}

/// prod (1 - q^n)^{m'_n} = 1 - sum_t m_t q^t: maps m' to m.
inline std::vector<Integer> correct_isotropic(const std::vector<Integer>& m_prime)
{
  const auto T = static_cast<std::int64_t>(m_prime.size());
  const TruncationBox box{Rational(T)};
  ScaledSeries prod = ScaledSeries::constant(1, 1, box);
  for (std::int64_t n = 1; n <= T; ++n)
    if (m_prime[n - 1] != 0) prod = mul(prod, binomial_factor(1, exps(n), m_prime[n - 1], box));
  std::vector<Integer> m(T);
  for (std::int64_t t = 1; t <= T; ++t) m[t - 1] = -prod.coefficient(exps(t))->get_num();
  return m;
}

/// Inverse of correct_isotropic, by peeling one factor per degree.
inline std::vector<Integer> uncorrect_isotropic(const std::vector<Integer>& m)
{
  const auto T = static_cast<std::int64_t>(m.size());
  const TruncationBox box{Rational(T)};
  ScaledSeries prod = ScaledSeries::constant(1, 1, box);
  std::vector<Integer> m_prime(T);
  for (std::int64_t n = 1; n <= T; ++n) {
    // (1 - q^n)^{e} adds -e q^n at degree n; lower factors give the rest
    const Integer have = prod.coefficient(exps(n))->get_num();
    m_prime[n - 1] = have + m[n - 1];
    if (m_prime[n - 1] != 0) prod = mul(prod, binomial_factor(1, exps(n), m_prime[n - 1], box));
  }
  return m_prime;
}

// ---- verification ------------------------------------------------------------

struct Mismatch {
  Exponents at;
  Rational expected;
  Rational actual;
};

struct Comparison {
  std::string name;  // e.g. "product vs sum"
  std::size_t compared = 0;
  std::size_t equal = 0;
  std::size_t unequal = 0;
  std::size_t uncertified = 0;  // keys outside one side's certified box
  bool integral = true;
  std::vector<Mismatch> mismatches;  // first few
  double seconds = 0;

  bool passed() const { return unequal == 0 && uncertified == 0 && integral; }
};

/// Coefficientwise comparison on every key either side stores inside box.
inline Comparison compare(std::string name, const ScaledSeries& reference, const ScaledSeries& other,
                          const TruncationBox& box)
{
  Comparison c;
  c.name = std::move(name);
  std::set<std::vector<Rational>> keys;
  for (const auto* s : {&reference, &other})
    for (const auto& [k, v] : s->terms()) {
      const Exponents e = s->exponents(k);
      if (box.contains(e[kQ], e[kP])) keys.insert({e[0], e[1], e[2]});
    }
  for (const auto& k : keys) {
    const Exponents e{k[0], k[1], k[2]};
    const auto a = reference.coefficient(e), b = other.coefficient(e);
    if (!a || !b) {
      ++c.uncertified;
      continue;
    }
    ++c.compared;
    if (!is_integral(*a) || !is_integral(*b)) c.integral = false;
    if (*a == *b) {
      ++c.equal;
    } else {
      ++c.unequal;
      if (c.mismatches.size() < 5) c.mismatches.push_back({e, *a, *b});
    }
  }
  return c;
}

enum Part : unsigned { kProduct = 1, kSum = 2, kTheta = 4, kWeyl = 8 };

inline unsigned parse_parts(const std::string& text)
{
  unsigned parts = 0;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok == "product") parts |= kProduct;
    else if (tok == "sum") parts |= kSum;
    else if (tok == "theta") parts |= kTheta;
    else if (tok == "weyl") parts |= kWeyl;
    else throw std::invalid_argument("unknown part '" + tok + "'");
  }
  return parts;
}

inline unsigned default_parts(int example_id) { return example_id == 1 ? kProduct | kSum | kTheta : kProduct | kSum; }

struct VerificationReport {
  int example = 0;
  TruncationBox box;
  unsigned parts = 0;
  std::string boundary_rule;
  std::vector<Comparison> comparisons;
  int theta_sign = 0;  // F_1 = theta_sign * (sum side); 0 when not determined
  int weyl_depth = -1;
  bool weyl_depth_limited = false;
  std::size_t mtable_size = 0;
  std::size_t sum_terms = 0;
  double seconds = 0;
  std::vector<std::string> notes;

  bool passed() const
  {
    if (comparisons.empty() && (parts & (kProduct | kTheta | kWeyl))) return false;
    if (weyl_depth_limited) return false;
    return std::all_of(comparisons.begin(), comparisons.end(), [](const Comparison& c) { return c.passed(); });
  }

  std::string to_text() const
  {
    std::ostringstream os;
    os << "example " << example << "  box qmax=" << bound_string(box.qmax()) << " pmax=" << bound_string(box.pmax())
       << "  boundary " << boundary_rule << "\n";
    os << "sum side terms: " << sum_terms << "\n";
    if (theta_sign != 0) os << "theta sign: " << (theta_sign > 0 ? "+1" : "-1") << "\n";
    if (weyl_depth >= 0)
      os << "weyl depth: " << weyl_depth << (weyl_depth_limited ? " (depth-limited)" : "") << ", m-table "
         << mtable_size << " entries\n";
    for (const auto& c : comparisons) {
      os << c.name << ": compared " << c.compared << ", equal " << c.equal << ", unequal " << c.unequal;
      if (c.uncertified) os << ", uncertified " << c.uncertified;
      if (!c.integral) os << ", NON-INTEGRAL";
      os << "  [" << (c.passed() ? "ok" : "FAIL") << ", " << c.seconds << " s]\n";
      for (const auto& m : c.mismatches)
        os << "  at (" << m.at[kQ] << ", " << m.at[kR] << ", " << m.at[kP] << "): " << m.expected << " vs "
           << m.actual << "\n";
    }
    for (const auto& n : notes) os << "note: " << n << "\n";
    os << (passed() ? "PASS" : "FAIL") << " (" << seconds << " s)\n";
    return os.str();
  }

  std::string to_json() const
  {
    nlohmann::json j;
    j["example"] = example;
    j["box"] = {{"qmax", bound_string(box.qmax())}, {"pmax", bound_string(box.pmax())}};
    j["boundary_rule"] = boundary_rule;
    j["sum_terms"] = sum_terms;
    if (theta_sign != 0) j["theta_sign"] = theta_sign;
    if (weyl_depth >= 0) {
      j["weyl_depth"] = weyl_depth;
      j["weyl_depth_limited"] = weyl_depth_limited;
      j["mtable_size"] = mtable_size;
    }
    j["comparisons"] = nlohmann::json::array();
    for (const auto& c : comparisons) {
      nlohmann::json cj{{"name", c.name},         {"compared", c.compared}, {"equal", c.equal},
                        {"unequal", c.unequal},   {"uncertified", c.uncertified},
                        {"integral", c.integral}, {"seconds", c.seconds},   {"passed", c.passed()}};
      cj["mismatches"] = nlohmann::json::array();
      for (const auto& m : c.mismatches)
        cj["mismatches"].push_back({{"at", {to_string(m.at[kQ]), to_string(m.at[kR]), to_string(m.at[kP])}},
                                    {"expected", to_string(m.expected)},
                                    {"actual", to_string(m.actual)}});
      j["comparisons"].push_back(cj);
    }
    j["notes"] = notes;
    j["seconds"] = seconds;
    j["passed"] = passed();
    return j.dump(2);
  }
};

namespace detail {

template <typename Fn>
auto timed(double& seconds, Fn&& fn)
{
  const auto t0 = std::chrono::steady_clock::now();
  auto result = fn();
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace detail

/// Expands the requested parts and compares each against the explicit sum.
inline VerificationReport verify_identity(int example_id, const TruncationBox& box, unsigned parts = 0)
{
  if (parts == 0) parts = default_parts(example_id);
  if ((parts & kTheta) && example_id != 1) throw std::invalid_argument("the theta oracle exists for example 1 only");
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.example = example_id;
  rep.box = box;
  rep.parts = parts;
  const IdentityInstance inst = make_instance(example_id, box);
  rep.boundary_rule = boundary_name(inst.boundary);

  double t_sum = 0, t_prod = 0, t_theta = 0;
  auto sum_job = std::async(std::launch::async, [&] { return detail::timed(t_sum, [&] { return sum_side_explicit(inst); }); });
  std::future<ScaledSeries> prod_job, theta_job;
  if (parts & kProduct)
    prod_job = std::async(std::launch::async, [&] { return detail::timed(t_prod, [&] { return product_side(inst); }); });
  if (parts & kTheta)
    theta_job = std::async(std::launch::async, [&] { return detail::timed(t_theta, [&] { return siegel::f1(box); }); });
  const ScaledSeries sum = sum_job.get();
  rep.sum_terms = sum.size();

  if (parts & kProduct) {
    Comparison c = compare("product vs sum", sum, prod_job.get(), box);
    c.seconds = t_prod;
    rep.comparisons.push_back(c);
  }
  if (parts & kTheta) {
    ScaledSeries f = theta_job.get();
    // one global sign, read off the leading (rho) coefficient
    const auto lead = f.coefficient(inst.prefactor);
    if (lead && (*lead == 1 || *lead == -1)) {
      rep.theta_sign = *lead == 1 ? 1 : -1;
      f = f.scaled(rep.theta_sign);
    } else if (!sum.is_zero()) {
      rep.notes.push_back("F_1 leading coefficient is not +-1");
    }
    Comparison c = compare("theta vs sum", sum, f, box);
    c.seconds = t_theta;
    rep.comparisons.push_back(c);
  }
  if (parts & kWeyl) {
    double t_weyl = 0;
    const WeylSum ws = detail::timed(t_weyl, [&] {
      const MTable mt = extract_m(inst, sum);
      rep.mtable_size = mt.entries.size();
      return sum_side_weyl_adaptive(inst, mt);
    });
    rep.weyl_depth = ws.depth;
    rep.weyl_depth_limited = ws.depth_limited;
    Comparison c = compare("weyl vs sum", sum, ws.series, box);
    c.seconds = t_weyl;
    rep.comparisons.push_back(c);
  }
  if (example_id == 1) rep.notes.push_back("divisor terms weighted by d^4");
  if (example_id == 2) rep.notes.push_back("sum taken over n, m = 1 mod 4 with m >= 1");
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace dforge::denominator
