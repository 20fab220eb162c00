#include <dforge/denominator.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace dforge;
using namespace dforge::denominator;

namespace {

Rational h(long a) { return make_rational(a, 2); }
Rational qu(long a) { return make_rational(a, 4); }

TruncationBox square(const Rational& b) { return TruncationBox(b, b); }

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST(Product, Example1Leading)
{
  const auto inst = make_instance(1, square(h(3)));
  const auto prod = product_side(inst);
  EXPECT_EQ(*prod.coefficient(exps(h(1), h(1), h(1))), 1);
  EXPECT_EQ(*prod.coefficient(exps(h(1), h(-1), h(1))), -1);
  EXPECT_EQ(*prod.coefficient(exps(0, 0, 0)), 0);
  EXPECT_TRUE(prod.is_integral());
}

TEST(Product, Example2Leading)
{
  const auto inst = make_instance(2, square(qu(5)));
  const auto prod = product_side(inst);
  EXPECT_EQ(*prod.coefficient(exps(qu(1), h(-1), qu(1))), 1);
  EXPECT_EQ(*prod.coefficient(exps(qu(1), h(1), qu(1))), -1);
  EXPECT_TRUE(prod.is_integral());
}

TEST(Sum, Example1Values)
{
  const auto inst = make_instance(1, square(h(3)));
  const auto s = sum_side_explicit(inst);
  EXPECT_EQ(*s.coefficient(exps(h(1), h(1), h(1))), 1);
  EXPECT_EQ(*s.coefficient(exps(h(1), h(-1), h(1))), -1);
  // (n, l, m) = (1, 3, 1) has 4nm - l^2 < 0
  EXPECT_EQ(*s.coefficient(exps(h(1), h(3), h(1))), 0);
  // one divisor: -(-1)^{(l+1)/2} tau_9(4nm - l^2)
  EXPECT_EQ(*s.coefficient(exps(h(1), h(1), h(3))), Rational(tau(9, 11)));
  EXPECT_EQ(*s.coefficient(exps(h(3), h(3), h(3))), 93);
}

TEST(Sum, Example2Values)
{
  const auto inst = make_instance(2, square(qu(9)));
  const auto s = sum_side_explicit(inst);
  EXPECT_EQ(*s.coefficient(exps(qu(1), h(-1), qu(1))), 1);
  EXPECT_EQ(*s.coefficient(exps(qu(1), h(1), qu(1))), -1);
  // 2nm - l^2 must be a square: (1, l, 5) has 10 - l^2 in {9, 1} for l = 1, 3
  EXPECT_EQ(*s.coefficient(exps(qu(1), h(1), qu(5))), 3);
  EXPECT_EQ(*s.coefficient(exps(qu(1), h(3), qu(5))), 1);
  EXPECT_EQ(*s.coefficient(exps(qu(5), h(1), qu(5))), 7);  // 50 - 1 = 7^2
}

TEST(Sum, DivisorWeightOnlyMattersAtNonPrimitiveKeys)
{
  const auto inst = make_instance(1, square(h(7)));
  const auto lift = sum_side_explicit(inst, DivisorWeight::lift);
  const auto unweighted = sum_side_explicit(inst, DivisorWeight::unweighted);
  EXPECT_EQ(*unweighted.coefficient(exps(h(3), h(3), h(3))), 13);
  EXPECT_EQ(*lift.coefficient(exps(h(3), h(3), h(3))), 93);
  std::size_t differing = 0;
  for (const auto* s : {&lift, &unweighted})
    for (const auto& [k, c] : s->terms()) {
      const Exponents e = s->exponents(k);
      if (*lift.coefficient(e) == *unweighted.coefficient(e)) continue;
      ++differing;
      auto twice = [&](int i) { return to_int64(Rational(2 * e[i]).get_num()); };
      const std::int64_t n = twice(kQ), l = twice(kR), m = twice(kP);
      EXPECT_GT(std::gcd(std::gcd(n, std::abs(l)), m), 1) << n << " " << l << " " << m;
    }
  EXPECT_GT(differing, 0u);
}

TEST(Sum, UnweightedFormDisagreesWithProduct)
{
  const auto inst = make_instance(1, square(h(3)));
  const auto c = compare("unweighted", product_side(inst), sum_side_explicit(inst, DivisorWeight::unweighted), inst.box);
  EXPECT_GT(c.unequal, 0u);
  ASSERT_FALSE(c.mismatches.empty());
  EXPECT_EQ(c.mismatches.front().at, exps(h(3), h(-3), h(3)));
}

TEST(Symmetry, OddInLAndSymmetricInQP)
{
  for (const auto& [id, b] : {std::pair{1, h(5)}, std::pair{2, qu(9)}}) {
    const auto inst = make_instance(id, square(b));
    for (const auto& s : {sum_side_explicit(inst), product_side(inst)})
      for (const auto& [k, c] : s.terms()) {
        const Exponents e = s.exponents(k);
        EXPECT_EQ(*s.coefficient(exps(e[kQ], -e[kR], e[kP])), -c);
        EXPECT_EQ(*s.coefficient(exps(e[kP], e[kR], e[kQ])), c);
      }
  }
}

TEST(RootMultiplicity, Values)
{
  const auto inst = make_instance(1, square(h(5)));
  EXPECT_EQ(root_multiplicity(inst, 0, -1, 0), 1);
  EXPECT_EQ(root_multiplicity(inst, 1, 0, 1), 108);
  EXPECT_EQ(root_multiplicity(inst, 1, 1, 1), -64);
  EXPECT_EQ(root_multiplicity(inst, 0, 2, 0), 0);
  const auto inst2 = make_instance(2, square(qu(9)));
  EXPECT_EQ(root_multiplicity(inst2, 0, 1, 0), 1);
  EXPECT_EQ(root_multiplicity(inst2, 1, 0, 1), 16);
}

TEST(Instance, RejectsOtherExamples)
{
  EXPECT_THROW(make_instance(3, square(1)), std::invalid_argument);
  EXPECT_THROW(make_instance(1, TruncationBox(Rational(1))), std::invalid_argument);
}

TEST(Isotropic, Examples)
{
  EXPECT_EQ(correct_isotropic(ints({1, 0, 0, 0})), ints({1, 0, 0, 0}));
  EXPECT_EQ(correct_isotropic(ints({0, 1, 0, 0})), ints({0, 1, 0, 0}));
  EXPECT_EQ(correct_isotropic(ints({1, 1, 0, 0})), ints({1, 1, -1, 0}));
  EXPECT_EQ(correct_isotropic({}), std::vector<Integer>{});
}

TEST(Isotropic, RoundTrip)
{
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> len(0, 20), val(-4, 4);
  for (int i = 0; i < 200; ++i) {
    std::vector<Integer> mp(len(rng));
    for (auto& x : mp) x = val(rng);
    EXPECT_EQ(uncorrect_isotropic(correct_isotropic(mp)), mp);
    EXPECT_EQ(correct_isotropic(uncorrect_isotropic(mp)), mp);
  }
}

TEST(Weyl, Example1Reconstruction)
{
  const auto inst = make_instance(1, square(h(5)));
  const auto sum = sum_side_explicit(inst);
  const MTable mt = extract_m(inst, sum);
  EXPECT_FALSE(mt.entries.empty());
  const WeylSum w = sum_side_weyl_adaptive(inst, mt);
  EXPECT_FALSE(w.depth_limited);
  const auto c = compare("weyl", sum, w.series, inst.box);
  EXPECT_TRUE(c.passed());
  EXPECT_GT(c.compared, 0u);
  // too shallow a depth leaves the flag set
  EXPECT_TRUE(sum_side_weyl(inst, mt, 1).depth_limited);
}

TEST(Weyl, Example2Reconstruction)
{
  const auto inst = make_instance(2, square(qu(9)));
  const auto sum = sum_side_explicit(inst);
  const WeylSum w = sum_side_weyl_adaptive(inst, extract_m(inst, sum));
  EXPECT_FALSE(w.depth_limited);
  EXPECT_TRUE(compare("weyl", sum, w.series, inst.box).passed());
}

TEST(Verify, Example1AllParts)
{
  const auto rep = verify_identity(1, square(h(5)), kProduct | kSum | kTheta | kWeyl);
  EXPECT_TRUE(rep.passed()) << rep.to_text();
  EXPECT_EQ(rep.theta_sign, 1);
  EXPECT_EQ(rep.boundary_rule, "l<0");
  ASSERT_EQ(rep.comparisons.size(), 3u);
  for (const auto& c : rep.comparisons) {
    EXPECT_GT(c.compared, 0u) << c.name;
    EXPECT_TRUE(c.integral);
  }
}

TEST(Verify, Example2)
{
  const auto rep = verify_identity(2, square(qu(9)));
  EXPECT_TRUE(rep.passed()) << rep.to_text();
  EXPECT_EQ(rep.boundary_rule, "l>0");
  EXPECT_THROW(verify_identity(2, square(qu(9)), kTheta), std::invalid_argument);
}

TEST(Verify, TinyBoxHasNothingToCompare)
{
  const auto rep = verify_identity(1, square(qu(1)), kProduct | kSum);
  ASSERT_EQ(rep.comparisons.size(), 1u);
  EXPECT_EQ(rep.comparisons[0].compared, 0u);
  EXPECT_TRUE(rep.passed());
}

TEST(Verify, JsonReport)
{
  const auto rep = verify_identity(1, square(h(3)), kProduct | kSum);
  const auto j = nlohmann::json::parse(rep.to_json());
  EXPECT_EQ(j["example"], 1);
  EXPECT_EQ(j["box"]["qmax"], "3/2");
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["comparisons"][0]["name"], "product vs sum");
  EXPECT_EQ(j["comparisons"][0]["unequal"], 0);
}

TEST(Verify, Parts)
{
  EXPECT_EQ(parse_parts("product,sum,theta"), kProduct | kSum | kTheta);
  EXPECT_EQ(parse_parts("weyl"), kWeyl);
  EXPECT_THROW(parse_parts("product,bogus"), std::invalid_argument);
}

TEST(Verify, FailureIsReported)
{
  Comparison c = compare("x", ScaledSeries::constant(3, 1, square(1)), ScaledSeries::constant(3, 2, square(1)),
                         square(1));
  EXPECT_EQ(c.unequal, 1u);
  EXPECT_FALSE(c.passed());
  const ScaledSeries half_coeff = ScaledSeries::constant(3, make_rational(1, 2), square(1));
  EXPECT_FALSE(compare("y", half_coeff, half_coeff, square(1)).integral);
}
