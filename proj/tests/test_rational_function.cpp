#include <gtest/gtest.h>

#include <random>

#include "dist235/rational_function.hpp"
#include "test_support.hpp"

using namespace dist235;
using namespace dist235::testing;

TEST(RationalFunction, CanonicalForm) {
  RationalFunction f = rf("(x1^2 - 1)/(2*x1 + 2)");
  EXPECT_EQ(f, rf("x1/2 - 1/2"));
  EXPECT_TRUE(f.is_polynomial());
  RationalFunction g = rf("x1/(3*x3)");
  EXPECT_EQ(g.denominator().leading_term().coeff, 1);
}

TEST(RationalFunction, Differentiate) {
  EXPECT_EQ(rf("x1^2*x3").derivative(0), rf("2*x1*x3"));
  EXPECT_TRUE(rf("x1/x3").derivative(1).is_zero());
  EXPECT_EQ(rf("x1/x3").derivative(2), rf("-x1/x3^2"));
}

TEST(RationalFunction, Evaluate) {
  std::vector<Rational> pt{q(2), q(0), q(4), q(0), q(0)};
  EXPECT_EQ(rf("x1/x3").evaluate(pt), q(1, 2));
  EXPECT_EQ(rf("7").evaluate(pt), q(7));
  std::vector<Rational> one{q(1), q(0), q(0), q(0), q(0)};
  EXPECT_THROW(rf("1/(x1-1)").evaluate(one), PoleError);
}

TEST(RationalFunction, RingAxiomsOnRandomInputs) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    RationalFunction a = random_rf(rng), b = random_rf(rng), c = random_rf(rng);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a + b) - b, a);
    if (!b.is_zero()) ASSERT_EQ((a / b) * b, a);
  }
}

TEST(RationalFunction, MixedPartialsCommute) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    RationalFunction f = random_rf(rng) * random_rf(rng);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        ASSERT_EQ(f.derivative(i).derivative(j), f.derivative(j).derivative(i));
  }
}

TEST(RationalFunction, QuotientRule) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    RationalFunction f = random_rf(rng), g = random_rf(rng);
    if (g.is_zero()) continue;
    for (std::size_t i = 0; i < 5; ++i)
      ASSERT_EQ((f / g).derivative(i), (f.derivative(i) * g - f * g.derivative(i)) / (g * g));
  }
}
