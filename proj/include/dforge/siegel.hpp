#pragma once

// Genus-2 theta constants in the variables q = e(z1), r = e(z2), p = e(z3) for
// Z = [[z1, z2], [z2, z3]], their product Delta_5 over the ten even
// characteristics, and F_1 = Delta_5 / 64.

#include <dforge/errors.hpp>
#include <dforge/series.hpp>

#include <array>
#include <future>
#include <vector>

namespace dforge::siegel {

struct Characteristic {
  std::array<int, 2> a{};
  std::array<int, 2> b{};

  bool even() const { return (a[0] * b[0] + a[1] * b[1]) % 2 == 0; }
  friend bool operator==(const Characteristic&, const Characteristic&) = default;
};

/// The ten even characteristics, ordered by (a1, a2, b1, b2).
inline std::vector<Characteristic> even_characteristics()
{
  std::vector<Characteristic> out;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          Characteristic ch{{a1, a2}, {b1, b2}};
          if (ch.even()) out.push_back(ch);
        }
  return out;
}

/// sum over l in Z^2 of (-1)^{b.l} q^{x1^2/2} r^{x1 x2} p^{x2^2/2}, x = l + a/2.
/// Exact in the box: q- and p-exponents are nonnegative and grow with |x|.
inline ScaledSeries theta_constant(const Characteristic& ch, const TruncationBox& box)
{
  if (!box.qmax() || !box.pmax()) throw std::invalid_argument("theta_constant needs a bounded box");
  ScaledSeries s(3, box, 8);
  auto range = [](int a, const Rational& bound) {
    // all l with (2l + a)^2 / 8 <= bound
    std::vector<std::int64_t> ls;
    for (std::int64_t l = 0;; ++l) {
      bool any = false;
      for (std::int64_t v : {l, -l - 1}) {
        const std::int64_t t = 2 * v + a;
        if (make_rational(t * t, 8) <= bound) {
          ls.push_back(v);
          any = true;
        }
      }
      if (!any) break;
    }
    return ls;
  };
  for (auto l1 : range(ch.a[0], *box.qmax()))
    for (auto l2 : range(ch.a[1], *box.pmax())) {
      const std::int64_t t1 = 2 * l1 + ch.a[0];  // 2 x1
      const std::int64_t t2 = 2 * l2 + ch.a[1];
      const bool odd = ((ch.b[0] * l1 + ch.b[1] * l2) % 2) != 0;
      s.add_term(exps(make_rational(t1 * t1, 8), make_rational(t1 * t2, 4), make_rational(t2 * t2, 8)),
                 odd ? -1 : 1);
    }
  return s;
}

/// Product of the ten even theta constants, multiplied as a balanced tree.
inline ScaledSeries delta5(const TruncationBox& box)
{
  std::vector<std::future<ScaledSeries>> jobs;
  for (const auto& ch : even_characteristics())
    jobs.push_back(std::async(std::launch::async, [ch, box] { return theta_constant(ch, box); }));
  std::vector<ScaledSeries> level;
  for (auto& j : jobs) level.push_back(j.get());
  while (level.size() > 1) {
    std::vector<ScaledSeries> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(mul(level[i], level[i + 1]));
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

/// F_1 = Delta_5 / 64; every coefficient must be integral.
inline ScaledSeries f1(const TruncationBox& box)
{
  ScaledSeries f = delta5(box).scaled(make_rational(1, 64));
  if (!f.is_integral()) throw IntegrityError("Delta_5 / 64 has a non-integral coefficient");
  return f;
}

}  // namespace dforge::siegel
