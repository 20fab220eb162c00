// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <dforge/denominator.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

using namespace dforge;
namespace den = dforge::denominator;
namespace lat = dforge::lattice;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what)
  {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

TruncationBox square(const Rational& b) { return TruncationBox(b, b); }

Outcome phi01_fixture()
{
  Outcome o;
  ScaledSeries expected(2, TruncationBox(Rational(1)));
  const long row0[3] = {1, 10, 1};
  const long row1[5] = {10, -64, 108, -64, 10};
  for (long l = -1; l <= 1; ++l) expected.add_term(exps(0, l), row0[l + 1]);
  for (long l = -2; l <= 2; ++l) expected.add_term(exps(1, l), row1[l + 2]);
  o.require(phi01(Rational(1)).series == expected, "expansion differs from the fixture");
  return o;
}

Outcome c1_cross_check()
{
  Outcome o;
  const std::int64_t top = 40;
  const MultiplicityTable m(phi01(depth_for_norm(4, top)));
  const ScaledSeries cohen = c1_via_cohen(Rational(top));
  std::size_t compared = 0;
  for (std::int64_t n = -1; n <= top; ++n) {
    const auto c = cohen.coefficient(exps(n));
    if (!c || n > m.max_norm()) continue;
    ++compared;
    o.require(*c == Rational(m(n)), "c1(" + std::to_string(n) + ") differs");
  }
  o.require(compared == static_cast<std::size_t>(top + 2), "not every norm certified");
  o.detail = o.ok ? std::to_string(compared) + " norms" : o.detail;
  return o;
}

Outcome theta_forms()
{
  Outcome o;
  const Rational q(20);
  o.require(theta11(q, ThetaForm::sum).series == theta11(q, ThetaForm::product).series, "sum and product differ");
  return o;
}

Outcome psi_forms()
{
  Outcome o;
  const Rational q(10);
  o.require(psi_5_half(q).series == psi_5_half_sum(q), "eta^9 theta_11 differs from the tau_9 sum");
  o.require(psi_2_half(q).series == psi_2_half_sum(q), "-eta^3 theta_11 differs from the tau_3 sum");
  return o;
}

Outcome report_outcome(const den::VerificationReport& rep, std::size_t comparisons)
{
  Outcome o;
  o.require(rep.passed(), "verification failed:\n" + rep.to_text());
  o.require(rep.comparisons.size() == comparisons, "missing comparisons");
  for (const auto& c : rep.comparisons) {
    o.require(c.compared > 0, c.name + " compared nothing");
    o.require(c.integral, c.name + " non-integral");
  }
  if (o.ok) {
    for (const auto& c : rep.comparisons) o.detail += c.name + " " + std::to_string(c.compared) + "; ";
    if (rep.theta_sign) o.detail += "sign " + std::to_string(rep.theta_sign) + "; ";
    o.detail += "boundary " + rep.boundary_rule;
  }
  return o;
}

Outcome flagship()
{
  return report_outcome(den::verify_identity(1, square(make_rational(5, 2)), den::kProduct | den::kSum | den::kTheta),
                        2);
}

Outcome example2()
{
  return report_outcome(den::verify_identity(2, square(make_rational(9, 4)), den::kProduct | den::kSum), 1);
}

Outcome weyl_reconstruction()
{
  Outcome o;
  const auto rep = den::verify_identity(1, square(make_rational(5, 2)), den::kSum | den::kWeyl);
  o = report_outcome(rep, 1);
  o.require(!rep.weyl_depth_limited, "depth-limited");
  if (o.ok) o.detail += "; depth " + std::to_string(rep.weyl_depth);
  return o;
}

Outcome lattice_fixtures()
{
  Outcome o;
  std::size_t roots = 0;
  for (int id : {1, 2, 3}) {
    const auto r = lat::example_report(lat::example_data(id));
    for (const auto& [name, ok] : r.checks) o.require(ok, "example " + std::to_string(id) + ": " + name);
    o.require(r.weyl_ok, "example " + std::to_string(id) + ": rho pairing");
    if (id == 3) roots = r.roots_checked;
  }
  if (o.ok) o.detail = std::to_string(roots) + " example-3 roots";
  return o;
}

Outcome property_suites()
{
  Outcome o;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> small(-4, 4), nat(0, 4), count(0, 4);
  const TruncationBox box(Rational(3), Rational(3));
  auto random_series = [&] {
    ScaledSeries s(3, box, 2);
    for (int i = count(rng); i > 0; --i)
      s.add_term(exps(make_rational(nat(rng), 2), make_rational(small(rng), 2), make_rational(nat(rng), 2)),
                 small(rng));
    return s;
  };
  for (int i = 0; i < 200; ++i) {
    const auto a = random_series(), b = random_series(), c = random_series();
    o.require(a + b == b + a && a * b == b * a, "commutativity");
    o.require((a * b) * c == a * (b * c), "associativity");
    o.require(a * (b + c) == a * b + a * c, "distributivity");
  }

  const auto ex = lat::example_data(1);
  std::uniform_int_distribution<std::size_t> gen(0, 2);
  for (int i = 0; i < 200; ++i) {
    lat::LatticeVector d = ex.simple_roots[gen(rng)];
    for (int k = nat(rng); k > 0; --k) d = lat::reflect(ex.S, ex.simple_roots[gen(rng)], d);
    const lat::LatticeVector x{small(rng), small(rng), small(rng)}, y{small(rng), small(rng), small(rng)};
    const auto sx = lat::reflect(ex.S, d, x), sy = lat::reflect(ex.S, d, y);
    o.require(lat::reflect(ex.S, d, sx) == x, "reflection is not an involution");
    o.require(ex.S.inner(sx, sy) == ex.S.inner(x, y), "reflection is not an isometry");
  }

  std::uniform_int_distribution<int> len(0, 20);
  for (int i = 0; i < 200; ++i) {
    std::vector<Integer> mp(len(rng));
    for (auto& v : mp) v = small(rng);
    o.require(den::uncorrect_isotropic(den::correct_isotropic(mp)) == mp, "isotropic correction round trip");
  }

  std::size_t elements = 0;
  for (int id : {1, 2}) {
    const auto e = lat::example_data(id);
    for (const auto& w : lat::enumerate_weyl(e, 6)) {
      ++elements;
      o.require(w.matrix.transpose() * e.S.gram() * w.matrix == e.S.gram(), "Weyl element breaks the Gram matrix");
      o.require(lat::determinant(w.matrix) == w.det, "Weyl determinant inconsistent");
    }
  }
  if (o.ok) o.detail = std::to_string(elements) + " Weyl elements";
  return o;
}

Rational hurwitz_by_forms(std::int64_t N)
{
  Rational h = 0;
  for (std::int64_t a = 1; 3 * a * a <= N; ++a)
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if ((b * b + N) % (4 * a) != 0) continue;
      const std::int64_t c = (b * b + N) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      h += (a == b && b == c) ? make_rational(1, 3) : (b == 0 && a == c) ? make_rational(1, 2) : Rational(1);
    }
  return h;
}

Outcome cohen_checks()
{
  Outcome o;
  o.require(cohen_H(3, 0) == make_rational(-1, 252), "H(3,0)");
  const Rational h50 = cohen_H(5, 0);
  o.require(h50 == -arith::bernoulli(10) / 10, "H(5,0) is not -B_10/10");
  for (int k : {1, 2, 3, 4, 5})
    for (std::int64_t N = 0; N <= 100; ++N) {
      const std::int64_t r = (((k % 2 == 0 ? N : -N) % 4) + 4) % 4;
      if (r == 2 || r == 3) o.require(cohen_H(k, N) == 0, "H(" + std::to_string(k) + "," + std::to_string(N) + ")");
    }
  o.require(cohen_H(1, 3) == make_rational(1, 3) && hurwitz_by_forms(3) == make_rational(1, 3), "H(1,3)");
  if (o.ok) o.detail = "H(5,0) = " + to_string(h50) + " (sign opposite to +1/132)";
  return o;
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"phi_{0,1} fixture", phi01_fixture},
      {"c1 from phi_{0,1} equals the Cohen-form c1, norms -1..40", c1_cross_check},
      {"theta_11 sum form equals product form, q <= 20", theta_forms},
      {"psi forms equal their tau double sums, q <= 10", psi_forms},
      {"example 1: theta product = explicit sum = Borcherds product, box 5/2", flagship},
      {"example 2: explicit sum = Borcherds product, box 9/4", example2},
      {"example 1: Weyl-orbit sum reproduces the explicit sum", weyl_reconstruction},
      {"lattice fixtures for examples 1-3", lattice_fixtures},
      {"property suites", property_suites},
      {"Cohen numbers", cohen_checks},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", s);
    std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << " (" << timing << ") "
              << criteria[i].first;
    if (!o.detail.empty()) std::cout << " [" << o.detail << "]";
    std::cout << "\n";
    if (!o.ok) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
