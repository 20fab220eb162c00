#include <dforge/siegel.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace dforge;
using namespace dforge::siegel;

namespace {

const TruncationBox kBox(make_rational(5, 2), make_rational(5, 2));

Rational h(long a) { return make_rational(a, 2); }

}  // namespace

TEST(Characteristics, TenEven)
{
  const auto chars = even_characteristics();
  EXPECT_EQ(chars.size(), 10u);
  std::set<std::array<int, 4>> distinct;
  for (const auto& c : chars) {
    EXPECT_TRUE(c.even());
    distinct.insert({c.a[0], c.a[1], c.b[0], c.b[1]});
  }
  EXPECT_EQ(distinct.size(), 10u);
}

TEST(ThetaConstant, LeadingTerms)
{
  const TruncationBox box(Rational(1), Rational(1));
  const auto t0 = theta_constant({{0, 0}, {0, 0}}, box);
  EXPECT_EQ(*t0.coefficient(exps(0, 0, 0)), 1);
  EXPECT_EQ(*t0.coefficient(exps(h(1), 0, 0)), 2);
  EXPECT_EQ(*t0.coefficient(exps(h(1), 1, h(1))), 2);

  const auto t11 = theta_constant({{1, 1}, {0, 0}}, box);
  const Rational e = make_rational(1, 8);
  EXPECT_EQ(*t11.coefficient(exps(e, make_rational(1, 4), e)), 2);
  EXPECT_EQ(*t11.coefficient(exps(e, make_rational(-1, 4), e)), 2);
  EXPECT_EQ(*t11.coefficient(exps(0, 0, 0)), 0);

  const auto t01 = theta_constant({{0, 0}, {1, 0}}, box);
  EXPECT_EQ(*t01.coefficient(exps(h(1), 0, 0)), -2);
}

TEST(ThetaConstant, NeedsBoundedBox)
{
  EXPECT_THROW(theta_constant({{0, 0}, {0, 0}}, TruncationBox()), std::invalid_argument);
}

TEST(F1, IntegralWithUnitLeadingCoefficient)
{
  const auto f = f1(kBox);
  EXPECT_TRUE(f.is_integral());
  EXPECT_EQ(*f.coefficient(exps(h(1), h(1), h(1))), 1);
  EXPECT_EQ(*f.coefficient(exps(h(1), h(-1), h(1))), -1);
  EXPECT_EQ(*f.coefficient(exps(0, 0, 0)), 0);
}

TEST(F1, SymmetriesOfDelta5)
{
  // symmetric under q <-> p, odd under r -> 1/r
  const auto f = f1(kBox);
  for (const auto& [k, c] : f.terms()) {
    const Exponents e = f.exponents(k);
    EXPECT_EQ(*f.coefficient(exps(e[kP], e[kR], e[kQ])), c);
    EXPECT_EQ(*f.coefficient(exps(e[kQ], -e[kR], e[kP])), -c);
  }
}

TEST(F1, HalfIntegerGrid)
{
  const auto f = f1(kBox);
  for (const auto& [k, c] : f.terms()) {
    const Exponents e = f.exponents(k);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(Rational(2 * e[i]).get_den(), 1);
  }
}
