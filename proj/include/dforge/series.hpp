#pragma once

// Exact sparse formal Laurent series in up to three variables (q, r, p).
//
// Exponents are stored as integers over a per-series denominator D, so q^{1/8}
// is the key 1 with D = 8. Truncation is by upper bounds on the q- and
// p-exponents; the r-exponent is unbounded but finitely supported per (q, p)
// slice. A coefficient outside the box is indeterminate, never zero.

#include <dforge/errors.hpp>
#include <dforge/rational.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dforge {

enum Var : int { kQ = 0, kR = 1, kP = 2 };

/// Semantic exponents in (q, r, p) order; unused variables are 0.
using Exponents = std::array<Rational, 3>;

inline Exponents exps(const Rational& q, const Rational& r = 0, const Rational& p = 0)
{
  return {q, r, p};
}

struct ExponentKey {
  std::array<std::int64_t, 3> coords{};  // (q, r, p), scaled by the series denominator
  friend bool operator==(const ExponentKey&, const ExponentKey&) = default;
};

/// Lexicographic by (q, p, r): graded slices first, r innermost.
struct KeyOrder {
  bool operator()(const ExponentKey& a, const ExponentKey& b) const
  {
    if (a.coords[kQ] != b.coords[kQ]) return a.coords[kQ] < b.coords[kQ];
    if (a.coords[kP] != b.coords[kP]) return a.coords[kP] < b.coords[kP];
    return a.coords[kR] < b.coords[kR];
  }
};

/// nullopt means unbounded.
using Bound = std::optional<Rational>;

inline Bound bound_min(const Bound& a, const Bound& b)
{
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

class TruncationBox {
 public:
  TruncationBox() = default;
  explicit TruncationBox(Bound qmax, Bound pmax = std::nullopt)
      : qmax_(std::move(qmax)), pmax_(std::move(pmax))
  {
  }

  static TruncationBox unbounded() { return {}; }

  const Bound& qmax() const { return qmax_; }
  const Bound& pmax() const { return pmax_; }
  bool bounded() const { return qmax_.has_value(); }

  bool contains(const Rational& q, const Rational& p) const
  {
    return (!qmax_ || q <= *qmax_) && (!pmax_ || p <= *pmax_);
  }

  TruncationBox intersect(const TruncationBox& o) const
  {
    return TruncationBox(bound_min(qmax_, o.qmax_), bound_min(pmax_, o.pmax_));
  }

  TruncationBox scaled(const Rational& t) const
  {
    TruncationBox b = *this;
    if (b.qmax_) *b.qmax_ *= t;
    if (b.pmax_) *b.pmax_ *= t;
    return b;
  }

  TruncationBox shifted(const Rational& dq, const Rational& dp) const
  {
    TruncationBox b = *this;
    if (b.qmax_) *b.qmax_ += dq;
    if (b.pmax_) *b.pmax_ += dp;
    return b;
  }

  friend bool operator==(const TruncationBox&, const TruncationBox&) = default;

 private:
  Bound qmax_;
  Bound pmax_;
};

class ScaledSeries {
 public:
  using Terms = std::map<ExponentKey, Rational, KeyOrder>;

  explicit ScaledSeries(int nvars = 1, TruncationBox box = {}, std::int64_t denom = 1)
      : nvars_(nvars), denom_(denom), box_(std::move(box))
  {
    if (nvars < 1 || nvars > 3) throw std::invalid_argument("series must have 1 to 3 variables");
    if (denom < 1) throw std::invalid_argument("series denominator must be positive");
    if (nvars < 3 && box_.pmax()) box_ = TruncationBox(box_.qmax());
  }

  static ScaledSeries monomial(int nvars, const Exponents& e, const Rational& c,
                               TruncationBox box = {})
  {
    ScaledSeries s(nvars, std::move(box));
    s.add_term(e, c);
    return s;
  }

  static ScaledSeries constant(int nvars, const Rational& c, TruncationBox box = {})
  {
    return monomial(nvars, exps(0), c, std::move(box));
  }

  int nvars() const { return nvars_; }
  std::int64_t denom() const { return denom_; }
  const TruncationBox& box() const { return box_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::string vars_string() const
  {
    static const char* names[] = {"q", "q,r", "q,r,p"};
    return names[nvars_ - 1];
  }

  Exponents exponents(const ExponentKey& k) const
  {
    Exponents e;
    for (int i = 0; i < 3; ++i) {
      e[i] = Rational(k.coords[i], denom_);
      e[i].canonicalize();
    }
    return e;
  }

  bool in_box(const Exponents& e) const { return box_.contains(e[kQ], e[kP]); }

  /// Stored coefficient, 0 if absent, nullopt if the key lies outside the box.
  std::optional<Rational> coefficient(const Exponents& e) const
  {
    check_unused(e);
    if (!in_box(e)) return std::nullopt;
    ExponentKey k;
    for (int i = 0; i < 3; ++i) {
      Rational scaled = e[i] * denom_;
      if (!dforge::is_integral(scaled)) return Rational(0);
      k.coords[i] = to_int64(scaled.get_num());
    }
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c to the coefficient at e; silently drops keys outside the box.
  void add_term(const Exponents& e, const Rational& c)
  {
    check_unused(e);
    if (c == 0 || !in_box(e)) return;
    std::int64_t need = denom_;
    for (int i = 0; i < 3; ++i) need = std::lcm(need, to_int64(e[i].get_den()));
    if (need != denom_) *this = with_denom(need);
    ExponentKey k;
    for (int i = 0; i < 3; ++i) {
      Rational scaled = e[i] * denom_;
      k.coords[i] = to_int64(scaled.get_num());
    }
    accumulate(k, c);
  }

  bool is_integral() const
  {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return dforge::is_integral(t.second); });
  }

  /// Minimal exponent of variable v among stored terms; nullopt for the zero series.
  std::optional<Rational> valuation(Var v) const
  {
    if (terms_.empty()) return std::nullopt;
    std::int64_t m = terms_.begin()->first.coords[v];
    for (const auto& [k, c] : terms_) m = std::min(m, k.coords[v]);
    Rational r(m, denom_);
    r.canonicalize();
    return r;
  }

  /// Same series over denominator D (a multiple of denom()).
  ScaledSeries with_denom(std::int64_t D) const
  {
    if (D % denom_ != 0) throw std::invalid_argument("denominator must be a multiple");
    const std::int64_t f = D / denom_;
    ScaledSeries out(nvars_, box_, D);
    for (const auto& [k, c] : terms_) {
      ExponentKey nk = k;
      for (auto& x : nk.coords) x *= f;
      out.terms_.emplace_hint(out.terms_.end(), nk, c);
    }
    return out;
  }

  /// Smallest denominator representing the same exponents.
  ScaledSeries reduced() const
  {
    std::int64_t g = denom_;
    for (const auto& [k, c] : terms_)
      for (auto x : k.coords) g = std::gcd(g, x);
    if (g <= 1) return *this;
    ScaledSeries out(nvars_, box_, denom_ / g);
    for (const auto& [k, c] : terms_) {
      ExponentKey nk = k;
      for (auto& x : nk.coords) x /= g;
      out.terms_.emplace_hint(out.terms_.end(), nk, c);
    }
    return out;
  }

  ScaledSeries truncated(const TruncationBox& b) const
  {
    ScaledSeries out(nvars_, box_.intersect(b), denom_);
    const auto [ql, pl] = out.limits();
    for (const auto& [k, c] : terms_)
      if (within(k, ql, pl)) out.terms_.emplace_hint(out.terms_.end(), k, c);
    return out;
  }

  /// Embeds into more variables; new variables enter with exponent 0 and the new
  /// p-axis (if any) is unbounded.
  ScaledSeries with_vars(int nvars) const
  {
    if (nvars < nvars_) throw std::invalid_argument("cannot drop variables");
    ScaledSeries out(nvars, box_, denom_);
    out.terms_ = terms_;
    return out;
  }

  ScaledSeries scaled(const Rational& f) const
  {
    ScaledSeries out(nvars_, box_, denom_);
    if (f == 0) return out;
    for (const auto& [k, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), k, c * f);
    return out;
  }

  ScaledSeries operator-() const { return scaled(-1); }

  /// Applies fn(exponents) -> new exponents to every term (used for variable swaps).
  template <typename Fn>
  ScaledSeries map_exponents(Fn&& fn, TruncationBox box) const
  {
    ScaledSeries out(nvars_, std::move(box), denom_);
    for (const auto& [k, c] : terms_) out.add_term(fn(exponents(k)), c);
    return out;
  }

  friend ScaledSeries add(const ScaledSeries& a, const ScaledSeries& b);
  friend ScaledSeries mul(const ScaledSeries& a, const ScaledSeries& b);
  friend ScaledSeries rescale_exponents(const ScaledSeries& a, const Rational& factor);
  friend ScaledSeries from_text(const std::string& text);

  friend bool operator==(const ScaledSeries& a, const ScaledSeries& b)
  {
    if (a.nvars_ != b.nvars_ || !(a.box_ == b.box_) || a.size() != b.size()) return false;
    const std::int64_t D = std::lcm(a.denom_, b.denom_);
    const ScaledSeries x = a.with_denom(D), y = b.with_denom(D);
    return x.terms_ == y.terms_;
  }

  /// Scaled integer limits of the box, for fast containment checks.
  std::pair<std::optional<std::int64_t>, std::optional<std::int64_t>> limits() const
  {
    std::optional<std::int64_t> ql, pl;
    if (box_.qmax()) ql = to_int64(dforge::floor(*box_.qmax() * denom_));
    if (box_.pmax()) pl = to_int64(dforge::floor(*box_.pmax() * denom_));
    return {ql, pl};
  }

 private:
  static bool within(const ExponentKey& k, const std::optional<std::int64_t>& ql,
                     const std::optional<std::int64_t>& pl)
  {
    return (!ql || k.coords[kQ] <= *ql) && (!pl || k.coords[kP] <= *pl);
  }

  void check_unused(const Exponents& e) const
  {
    for (int i = nvars_; i < 3; ++i)
      if (e[i] != 0) throw std::invalid_argument("exponent on a variable the series does not have");
  }

  void accumulate(const ExponentKey& k, const Rational& c)
  {
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int nvars_;
  std::int64_t denom_;
  TruncationBox box_;
  Terms terms_;
};

inline void require_same_vars(const ScaledSeries& a, const ScaledSeries& b)
{
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("variable-list mismatch: " + a.vars_string() + " vs " +
                                b.vars_string());
}

inline ScaledSeries add(const ScaledSeries& a, const ScaledSeries& b)
{
  require_same_vars(a, b);
  const std::int64_t D = std::lcm(a.denom_, b.denom_);
  ScaledSeries out = a.with_denom(D).truncated(b.box_);
  const ScaledSeries bb = b.with_denom(D);
  const auto [ql, pl] = out.limits();
  for (const auto& [k, c] : bb.terms_)
    if (ScaledSeries::within(k, ql, pl)) out.accumulate(k, c);
  return out;
}

/// Convolution truncated to the box on which the product is certified: the
/// intersection of the operand boxes, tightened when an operand has a negative
/// valuation (known to P_a and starting at v_b, a*b is known to P_a + v_b).
inline ScaledSeries mul(const ScaledSeries& a, const ScaledSeries& b)
{
  require_same_vars(a, b);
  const int n = a.nvars_;
  auto certified = [&](Var v, const Bound& pa, const Bound& pb) {
    Bound out = bound_min(pa, pb);
    const auto va = a.valuation(v), vb = b.valuation(v);
    if (pa && vb) out = bound_min(out, *pa + *vb);
    if (pb && va) out = bound_min(out, *pb + *va);
    return out;
  };
  TruncationBox box(certified(kQ, a.box_.qmax(), b.box_.qmax()),
                    n == 3 ? certified(kP, a.box_.pmax(), b.box_.pmax()) : Bound{});
  const std::int64_t D = std::lcm(a.denom_, b.denom_);
  const ScaledSeries x = a.with_denom(D), y = b.with_denom(D);
  ScaledSeries out(n, box, D);
  if (x.terms_.empty() || y.terms_.empty()) return out;
  const auto [ql, pl] = out.limits();
  const std::int64_t ymin_q = y.terms_.begin()->first.coords[kQ];
  Rational prod;
  for (const auto& [ka, ca] : x.terms_) {
    if (ql && ka.coords[kQ] + ymin_q > *ql) break;
    for (const auto& [kb, cb] : y.terms_) {
      const std::int64_t q = ka.coords[kQ] + kb.coords[kQ];
      if (ql && q > *ql) break;
      const std::int64_t p = ka.coords[kP] + kb.coords[kP];
      if (pl && p > *pl) continue;
      ExponentKey k{{q, ka.coords[kR] + kb.coords[kR], p}};
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      auto [it, inserted] = out.terms_.try_emplace(k, prod);
      if (!inserted) it->second += prod;
    }
  }
  std::erase_if(out.terms_, [](const auto& t) { return t.second == 0; });
  return out;
}

inline ScaledSeries operator+(const ScaledSeries& a, const ScaledSeries& b) { return add(a, b); }
inline ScaledSeries operator-(const ScaledSeries& a, const ScaledSeries& b) { return add(a, -b); }
inline ScaledSeries operator*(const ScaledSeries& a, const ScaledSeries& b) { return mul(a, b); }

inline ScaledSeries pow(const ScaledSeries& a, unsigned long e)
{
  ScaledSeries result = ScaledSeries::constant(a.nvars(), 1, a.box());
  ScaledSeries base = a;
  while (e > 0) {
    if (e & 1UL) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

/// Every exponent multiplied by factor (> 0); the box scales with it.
inline ScaledSeries rescale_exponents(const ScaledSeries& a, const Rational& factor)
{
  if (factor <= 0) throw std::invalid_argument("rescale factor must be positive");
  const std::int64_t num = to_int64(factor.get_num());
  const std::int64_t den = to_int64(factor.get_den());
  ScaledSeries out(a.nvars_, a.box_.scaled(factor), a.denom_ * den);
  for (const auto& [k, c] : a.terms_) {
    ExponentKey nk = k;
    for (auto& x : nk.coords) x *= num;
    out.terms_.emplace_hint(out.terms_.end(), nk, c);
  }
  return out.reduced();
}

/// Multiplication by the monomial c * x^e, exact: the box moves with the exponents.
inline ScaledSeries times_monomial(const ScaledSeries& a, const Exponents& e, const Rational& c = 1)
{
  const TruncationBox box = a.box().shifted(e[kQ], a.nvars() == 3 ? e[kP] : Rational(0));
  ScaledSeries out = a.map_exponents(
      [&](Exponents x) {
        for (int i = 0; i < 3; ++i) x[i] += e[i];
        return x;
      },
      box);
  return c == 1 ? out : out.scaled(c);
}

/// Inverse of a series whose lowest term is a single monomial: the monomial has
/// the minimal q- and p-exponents and no other term shares its (q, p) grade.
inline ScaledSeries invert_unit(const ScaledSeries& a)
{
  if (a.is_zero()) throw std::domain_error("cannot invert the zero series");
  const auto& lead = *a.terms().begin();
  const Exponents le = a.exponents(lead.first);
  const auto vq = *a.valuation(kQ);
  const auto vp = *a.valuation(kP);
  if (le[kQ] != vq || le[kP] != vp) throw std::domain_error("leading term is not minimal in q and p");
  for (const auto& [k, c] : a.terms()) {
    if (k == lead.first) continue;
    const Exponents e = a.exponents(k);
    if (e[kQ] == vq && e[kP] == vp) throw std::domain_error("leading term is not a single monomial");
  }
  const int n = a.nvars();
  const Exponents neg{-le[0], -le[1], -le[2]};
  const Rational inv_c = 1 / lead.second;
  // unit = a / lead = 1 + u, with u of strictly positive (q, p) grade
  const ScaledSeries lead_inv = ScaledSeries::monomial(n, neg, inv_c);
  const ScaledSeries unit = mul(a, lead_inv);
  const ScaledSeries one = ScaledSeries::constant(n, 1, unit.box());
  const ScaledSeries u = unit - one;
  if (!u.is_zero() && !unit.box().bounded())
    throw NonTerminatingError("inverse of a non-monomial series needs a bounded box");
  if (!u.is_zero() && n == 3 && !unit.box().pmax() && *u.valuation(kQ) == 0)
    throw NonTerminatingError("inverse needs a p bound when u has zero q-grade terms");
  ScaledSeries b = one;
  for (std::size_t iter = 0;; ++iter) {
    ScaledSeries next = one - mul(u, b);
    next = next.truncated(unit.box());
    if (next == b) break;
    b = std::move(next);
    if (iter > 100000) throw NonTerminatingError("inverse did not converge");
  }
  // a^{-1} = lead^{-1} * unit^{-1}; unit is known to P - v, so the inverse is known to P - 2v
  ScaledSeries shifted(n, unit.box().shifted(-vq, -vp));
  for (const auto& [k, c] : b.terms()) {
    Exponents e = b.exponents(k);
    for (int i = 0; i < 3; ++i) e[i] -= le[i];
    shifted.add_term(e, c * inv_c);
  }
  return shifted;
}

/// (1 - M)^c by the generalized binomial theorem, truncated to box.
inline ScaledSeries binomial_factor(int nvars, const Exponents& monomial, const Integer& c,
                                   const TruncationBox& box)
{
  if (monomial[kQ] < 0 || monomial[kP] < 0)
    throw std::invalid_argument("binomial factor monomial needs nonnegative q and p exponents");
  ScaledSeries out = ScaledSeries::constant(nvars, 1, box);
  if (c == 0) return out;
  const bool graded = monomial[kQ] > 0 || monomial[kP] > 0;
  const bool bounded = (monomial[kQ] > 0 && box.qmax()) || (monomial[kP] > 0 && box.pmax());
  if (c < 0 && !(graded && bounded))
    throw NonTerminatingError("(1 - M)^c with c < 0 does not terminate for this monomial/box");
  Rational binom = 1;  // C(c, k) (-1)^k
  for (long k = 1;; ++k) {
    if (c >= 0 && k > c) break;
    binom *= Rational(c - (k - 1)) / k;
    binom = -binom;
    Exponents e{monomial[0] * k, monomial[1] * k, monomial[2] * k};
    if (!box.contains(e[kQ], e[kP])) break;
    out.add_term(e, binom);
  }
  return out;
}

// ---- text serialization ----------------------------------------------------

inline std::string bound_string(const Bound& b) { return b ? to_string(*b) : "inf"; }

inline std::string to_text(const ScaledSeries& s)
{
  std::ostringstream os;
  os << "vars=" << s.vars_string() << " denom=" << s.denom() << " qmax=" << bound_string(s.box().qmax())
     << " pmax=" << (s.nvars() == 3 ? bound_string(s.box().pmax()) : std::string("none")) << "\n";
  for (const auto& [k, c] : s.terms()) {
    os << "c";
    for (int i = 0; i < s.nvars(); ++i) os << " " << k.coords[i];
    os << " : " << to_fraction_string(c) << "\n";
  }
  return os.str();
}

inline ScaledSeries from_text(const std::string& text)
{
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("series text: missing header");
  std::istringstream hs(header);
  std::map<std::string, std::string> fields;
  for (std::string tok; hs >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("series text: bad header token " + tok);
    fields[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* f : {"vars", "denom", "qmax", "pmax"})
    if (!fields.count(f)) throw std::invalid_argument(std::string("series text: missing ") + f);
  int nvars = 0;
  if (fields["vars"] == "q") nvars = 1;
  else if (fields["vars"] == "q,r") nvars = 2;
  else if (fields["vars"] == "q,r,p") nvars = 3;
  else throw std::invalid_argument("series text: bad vars " + fields["vars"]);
  auto parse_bound = [](const std::string& s) -> Bound {
    if (s == "inf" || s == "none") return std::nullopt;
    return parse_rational(s);
  };
  const std::int64_t D = std::stoll(fields["denom"]);
  ScaledSeries out(nvars, TruncationBox(parse_bound(fields["qmax"]), parse_bound(fields["pmax"])), D);
  for (std::string line; std::getline(is, line);) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag, colon, coeff;
    ls >> tag;
    if (tag != "c") throw std::invalid_argument("series text: bad term line " + line);
    ExponentKey k;
    for (int i = 0; i < nvars; ++i)
      if (!(ls >> k.coords[i])) throw std::invalid_argument("series text: bad term line " + line);
    ls >> colon >> coeff;
    if (colon != ":") throw std::invalid_argument("series text: bad term line " + line);
    const Rational c = parse_rational(coeff);
    if (c == 0) throw std::invalid_argument("series text: stored zero coefficient");
    if (!out.terms_.try_emplace(k, c).second)
      throw std::invalid_argument("series text: duplicate key in " + line);
  }
  return out;
}

}  // namespace dforge
