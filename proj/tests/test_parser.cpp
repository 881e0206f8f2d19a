#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "dist235/parser.hpp"
#include "test_support.hpp"

using namespace dist235;
using namespace dist235::testing;

TEST(Parser, Examples) {
  RationalFunction f = rf("x1^2/(1+x3)");
  EXPECT_EQ(to_string(f.numerator()), "x1^2");
  EXPECT_EQ(to_string(f.denominator()), "x3 + 1");
  EXPECT_TRUE(rf("0*(x2+1)").is_zero());
  EXPECT_EQ(rf("(x1+x1)"), RationalFunction::variable(5, 0) * q(2));
}

TEST(Parser, PrecedenceAndDecimals) {
  std::vector<Rational> pt{q(3), q(0), q(0), q(0), q(0)};
  EXPECT_EQ(rf("-x1^2").evaluate(pt), q(-9));
  EXPECT_EQ(rf("1.25*x1").evaluate(pt), q(15, 4));
  EXPECT_EQ(rf("x1 - 2 - 1").evaluate(pt), q(0));
  EXPECT_EQ(rf("12/3/2").evaluate(pt), q(2));
}

TEST(Parser, Errors) {
  try {
    rf("x1 + * x2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  try {
    rf("x1 + y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(rf("(x1 + 1"), ParseError);
  EXPECT_THROW(rf("x1^-1"), ParseError);
  EXPECT_THROW(rf("1/(x1 - x1)"), ZeroDivisionError);
  EXPECT_THROW(rf(""), ParseError);
}

namespace {

// Random expression tree rendered as text together with its exact value.
struct Sample {
  std::string text;
  Rational value;
};

Sample random_sample(std::mt19937& rng, const std::vector<Rational>& pt, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  std::uniform_int_distribution<int> small(1, 9), var(0, 4);
  switch (pick(rng)) {
    case 0: {
      int n = small(rng);
      return {std::to_string(n), Rational(n)};
    }
    case 1: {
      int v = var(rng);
      return {"x" + std::to_string(v + 1), pt[v]};
    }
    case 2: {
      auto a = random_sample(rng, pt, depth - 1), b = random_sample(rng, pt, depth - 1);
      return {"(" + a.text + " + " + b.text + ")", a.value + b.value};
    }
    case 3: {
      auto a = random_sample(rng, pt, depth - 1), b = random_sample(rng, pt, depth - 1);
      return {"(" + a.text + " - " + b.text + ")", a.value - b.value};
    }
    case 4: {
      auto a = random_sample(rng, pt, depth - 1), b = random_sample(rng, pt, depth - 1);
      return {a.text + "*" + b.text, a.value * b.value};
    }
    case 5: {
      auto a = random_sample(rng, pt, depth - 1);
      int e = small(rng) % 3;
      Rational v = 1;
      for (int i = 0; i < e; ++i) v *= a.value;
      return {"(" + a.text + ")^" + std::to_string(e), v};
    }
    default: {
      auto a = random_sample(rng, pt, depth - 1);
      int d = small(rng);
      return {"(" + a.text + ")/(x1 + " + std::to_string(d) + ")", a.value / (pt[0] + d)};
    }
  }
}

}  // namespace

TEST(Parser, EvaluateAfterParseMatchesDirectArithmetic) {
  std::mt19937 rng(2024);
  std::vector<Rational> pt{q(1, 2), q(-3), q(2, 7), q(5), q(-1, 4)};
  for (int i = 0; i < 100; ++i) {
    Sample s = random_sample(rng, pt, 4);
    ASSERT_EQ(rf(s.text).evaluate(pt), s.value) << s.text;
  }
}
