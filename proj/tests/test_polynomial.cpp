#include <gtest/gtest.h>

#include <random>

#include "dist235/multijet.hpp"
#include "dist235/polynomial.hpp"
#include "test_support.hpp"

using namespace dist235;
using namespace dist235::testing;

namespace {

Polynomial P(const std::string& text) {
  RationalFunction f = rf(text);
  EXPECT_TRUE(f.is_polynomial());
  return f.numerator();
}

}  // namespace

TEST(Polynomial, GrlexOrderPutsHigherDegreeFirst) {
  Polynomial p = P("1 + x2 + x1^2 + x1*x2");
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(to_string(p), "x1^2 + x1*x2 + x2 + 1");
}

TEST(Polynomial, ArithmeticCancelsToZero) {
  Polynomial a = P("x1 + x2"), b = P("x1 - x2");
  EXPECT_EQ(a * b, P("x1^2 - x2^2"));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.pow(3), a * a * a);
}

TEST(Polynomial, DerivativeAndEvaluate) {
  EXPECT_EQ(P("x1^2*x3").derivative(0), P("2*x1*x3"));
  std::vector<Rational> pt{q(1), q(2), q(3), q(4), q(5)};
  EXPECT_EQ(P("x1^2*x3 - x5/2").evaluate(pt), q(1, 2));
}

TEST(Polynomial, ExactDivision) {
  Polynomial f = P("(x1 + x2)*(x3 - 2*x1 + 1)");
  auto qv = exact_divide(f, P("x1 + x2"));
  ASSERT_TRUE(qv.has_value());
  EXPECT_EQ(*qv, P("x3 - 2*x1 + 1"));
  EXPECT_FALSE(exact_divide(f, P("x1 + 2*x2")).has_value());
}

TEST(Polynomial, GcdKnownFactors) {
  Polynomial g = P("x1*x3 - x2 + 3");
  Polynomial f1 = g * P("x1^2 + x4"), f2 = g * P("x5 - x1*x2");
  EXPECT_EQ(gcd(f1, f2), g.monic());
  EXPECT_EQ(gcd(P("x1^2*x2"), P("x1*x2^3")), P("x1*x2"));
  EXPECT_TRUE(gcd(P("x1 + 1"), P("x1 - 1")).is_constant());
  EXPECT_TRUE(gcd(Polynomial(5), Polynomial(5)).is_zero());
}

TEST(Polynomial, GcdPropertyOnRandomProducts) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial a = random_polynomial(rng, 4, 3, 2), b = random_polynomial(rng, 4, 3, 2);
    Polynomial c = random_polynomial(rng, 4, 3, 2);
    Polynomial g = gcd(a * c, b * c);
    // g must be divisible by c and divide both products.
    ASSERT_TRUE(exact_divide(g, c).has_value()) << to_string(g) << " vs " << to_string(c);
    ASSERT_TRUE(exact_divide(a * c, g).has_value());
    ASSERT_TRUE(exact_divide(b * c, g).has_value());
    // and it must be greatest: the cofactors are coprime.
    EXPECT_TRUE(gcd(*exact_divide(a * c, g), *exact_divide(b * c, g)).is_constant());
  }
}

TEST(Polynomial, GcdWithHighPowersAndFractions) {
  // Shape met in frame-change densities; the remainder-sequence route alone stalls on it.
  Polynomial g = P("3*x1*x4 + x5");
  Polynomial f1 = g * P("x1^8*x4^12/81 - 5/7*x1^3*x4^9*x5 + (1 + x1)^4*x4^3 - x5^4/243");
  Polynomial f2 = g.pow(4) * P("1/81");
  EXPECT_EQ(gcd(f1, f2), g.monic());
  EXPECT_EQ(gcd(f1 * g, f2), g.pow(2).monic());
}

TEST(Polynomial, ShiftIsTaylorRecentering) {
  Polynomial p = P("x1^2*x2 + 3*x2");
  std::vector<Rational> pt{q(1), q(-2), q(0), q(0), q(0)};
  Polynomial s = p.shift(pt);
  std::vector<Rational> y{q(3), q(5), q(0), q(0), q(0)};
  std::vector<Rational> x{q(4), q(3), q(0), q(0), q(0)};
  EXPECT_EQ(s.evaluate(y), p.evaluate(x));
}

TEST(MultiJet, GeometricSeries) {
  std::vector<Rational> origin(5, q(0));
  EXPECT_EQ(jet_at_point(rf("1/(1-x1)"), origin, 2), P("1 + x1 + x1^2"));
  EXPECT_TRUE(jet_at_point(rf("x1*x3"), origin, 1).is_zero());
  std::vector<Rational> pt{q(1), q(2), q(1, 3), q(0), q(7)};
  RationalFunction f = rf("(x1 + x2^2)/(x3 - x5)");
  EXPECT_EQ(jet_at_point(f, pt, 0), Polynomial::constant(5, f.evaluate(pt)));
  EXPECT_THROW(jet_at_point(rf("1/(x1 - 1)"), pt, 3), PoleError);
}

TEST(MultiJet, ProductOfJetsIsJetOfProduct) {
  std::mt19937 rng(5);
  std::vector<Rational> pt{q(1, 2), q(-1), q(2), q(0), q(1, 3)};
  for (int trial = 0; trial < 15; ++trial) {
    RationalFunction f = random_rf(rng), g = random_rf(rng);
    std::vector<Rational> origin(5, q(0));
    for (unsigned order = 0; order <= 6; order += 3) {
      Polynomial lhs = jet_at_point(f * g, origin, order);
      Polynomial rhs = jet_multiply(jet_at_point(f, origin, order), jet_at_point(g, origin, order), order);
      ASSERT_EQ(lhs, rhs);
    }
  }
}
