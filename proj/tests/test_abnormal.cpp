#include <gtest/gtest.h>

#include "dist235/abnormal.hpp"
#include "test_support.hpp"

using namespace dist235;
using namespace dist235::testing;

namespace {

FiberPolynomial U(int i, int p = 1) { return FiberPolynomial::u(5, i, p); }

FiberPolynomial C(const std::string& s) { return FiberPolynomial::constant(rf(s)); }

/// Random c-table with every entry drawn independently (not from an actual frame).
StructuralFunctions random_table(std::mt19937& rng) {
  StructuralFunctions c(5, 5);
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j)
      for (int k = 1; k <= 5; ++k) {
        c(j, i, k) = random_rf(rng);
        c(i, j, k) = -c(j, i, k);
      }
  return c;
}

FiberPolynomial random_fiber(std::mt19937& rng) {
  FiberPolynomial f(5);
  std::uniform_int_distribution<int> e(0, 2);
  for (int t = 0; t < 3; ++t) f += FiberPolynomial::monomial({0, 0, 0, e(rng), e(rng)}, random_rf(rng));
  return f;
}

struct Model {
  Frame frame;
  StructuralFunctions c;
  HField h;
  explicit Model(const std::string& f)
      : frame(monge_frame(f)), c(structural_functions(frame)), h(h_field(frame, c)) {}
};

}  // namespace

TEST(PoissonBracket, FlatModel) {
  StructuralFunctions c = structural_functions(monge_frame("x4^2"));
  EXPECT_EQ(poisson_bracket(1, 2, c), U(3));
  EXPECT_EQ(poisson_bracket(1, 3, c), U(4));
  EXPECT_EQ(poisson_bracket(2, 3, c), U(5));
  for (int i = 1; i <= 5; ++i) {
    EXPECT_TRUE(poisson_bracket(i, 4, c).is_zero());
    EXPECT_TRUE(poisson_bracket(i, 5, c).is_zero());
  }
  StructuralFunctions zero(5, 5);
  EXPECT_TRUE(poisson_bracket(1, 2, zero).is_zero());
}

TEST(PoissonBracket, Antisymmetric) {
  std::mt19937 rng(3);
  StructuralFunctions c = random_table(rng);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) EXPECT_EQ(poisson_bracket(i, j, c), -poisson_bracket(j, i, c));
}

TEST(HField, FlatModel) {
  Model s("x4^2");
  EXPECT_TRUE(s.h.is_tangent());
  EXPECT_TRUE(s.h.of_u(4).is_zero());
  EXPECT_TRUE(s.h.of_u(5).is_zero());
  EXPECT_TRUE(s.h.apply(U(4)).is_zero());
  EXPECT_TRUE(s.h.apply(C("1")).is_zero());
  // base part: h(x4) = -u5 X1(q) = -u5, h(x1) = u4
  EXPECT_EQ(s.h.apply(C("x4")), -U(5));
  EXPECT_EQ(s.h.apply(C("x1")), U(4));
}

TEST(HField, CubicModel) {
  Model s("x4^3");
  EXPECT_TRUE(s.h.is_tangent());
  EXPECT_EQ(s.h.of_u(4), rf("-1/x4") * (U(4) * U(5)));
  EXPECT_TRUE(s.h.of_u(5).is_zero());
}

TEST(HField, ClosedFormFiberPart) {
  // d/du4 coefficient: c42^4 u4^2 + (c42^5 - c41^4) u4 u5 - c41^5 u5^2, and analogously for u5.
  std::mt19937 rng(9);
  StructuralFunctions c = random_table(rng);
  HField h = h_field(monge_frame("x4^2"), c);
  for (int m : {4, 5}) {
    FiberPolynomial expected = c(m, 2, 4) * U(4, 2) + (c(m, 2, 5) - c(m, 1, 4)) * (U(4) * U(5)) -
                               c(m, 1, 5) * U(5, 2);
    EXPECT_EQ(h.of_u(m), expected);
  }
}

TEST(HField, TangencyForAdaptedFrames) {
  for (const char* f : {"x4^2", "x4^3", "x4^4", "x4^3 + x3*x4", "x4^2 + x2*x4^3", "x4^3 + x5*x4^2"}) {
    Model s(f);
    EXPECT_TRUE(s.h.is_tangent()) << f;
    EXPECT_NO_THROW(abnormal_data(s.frame, s.c));
  }
}

TEST(HField, StronglyAdaptedLiteralBreaksTangency) {
  Frame frame = monge_frame("x4^2", AdaptedMode::StronglyAdapted);
  StructuralFunctions c = structural_functions(frame);
  HField h = h_field(frame, c);
  EXPECT_EQ(h.of_u(3), q(-2) * (U(4) * U(5)));
  EXPECT_THROW(abnormal_data(frame, c), DegeneracyError);
}

TEST(HField, LeibnizAndHomogeneity) {
  std::mt19937 rng(21);
  Model s("x4^3 + x3*x4");
  for (int trial = 0; trial < 5; ++trial) {
    FiberPolynomial f = random_fiber(rng), g = random_fiber(rng);
    EXPECT_EQ(s.h.apply(f * g), s.h.apply(f) * g + f * s.h.apply(g));
  }
  FiberPolynomial a = s.h.apply(U(4, 2) * U(5));
  EXPECT_TRUE(a.is_homogeneous(4));
  // Euler field e = u4 d/du4 + u5 d/du5 satisfies [e, h] = h on degree-k homogeneous inputs.
  for (int trial = 0; trial < 5; ++trial) {
    FiberPolynomial f = FiberPolynomial::monomial({0, 0, 0, 2, 1}, random_rf(rng)) +
                        FiberPolynomial::monomial({0, 0, 0, 0, 3}, random_rf(rng));
    FiberPolynomial hf = s.h.apply(f);
    FiberPolynomial ehf = U(4) * hf.derivative_u(4) + U(5) * hf.derivative_u(5);
    FiberPolynomial hef = s.h.apply(U(4) * f.derivative_u(4) + U(5) * f.derivative_u(5));
    EXPECT_EQ(ehf - hef, hf);
  }
}

TEST(Ingredients, FlatModelVanishes) {
  Model s("x4^2");
  AbnormalData d = abnormal_data(s.frame, s.c);
  for (const auto& a : d.alpha) EXPECT_TRUE(a.is_zero());
  EXPECT_TRUE(d.b.is_zero());
  EXPECT_TRUE(d.b1.is_zero());
  EXPECT_TRUE(d.pi.is_zero());
  EXPECT_TRUE(d.theta.is_zero());
  EXPECT_TRUE(d.omega.is_zero());
}

TEST(Ingredients, CubicModel) {
  Model s("x4^3");
  AbnormalData d = abnormal_data(s.frame, s.c);
  EXPECT_EQ(d.alpha[3], rf("1/x4") * U(5, 2));
  for (int i : {0, 1, 2, 4}) EXPECT_TRUE(d.alpha[i].is_zero());
  EXPECT_EQ(d.b, rf("-1/(3*x4)") * U(5));
  EXPECT_TRUE(d.b1.is_zero());
  // X4 = 6q d/dz and X5 = -d/dy commute with X3 = d/dp + 3q^2 d/dz, and neither touches q.
  EXPECT_TRUE(d.pi.is_zero());
  EXPECT_TRUE(d.theta.is_zero());
  EXPECT_TRUE(d.omega.is_zero());
}

TEST(Ingredients, AlphaVanishesWithoutUpperBrackets) {
  std::mt19937 rng(4);
  StructuralFunctions c = random_table(rng);
  for (int j : {1, 2})
    for (int i : {4, 5})
      for (int k = 1; k <= 5; ++k) {
        c(i, j, k) = RationalFunction(5);
        c(j, i, k) = RationalFunction(5);
      }
  for (int i = 1; i <= 5; ++i) EXPECT_TRUE(alpha(i, c).is_zero());
}

TEST(Ingredients, BFromGammaMatchesClosedForm) {
  for (const char* f : {"x4^3", "x4^4", "x4^3 + x3*x4", "x4^2 + x2*x4^3", "x4^3 + x5*x4^2"}) {
    Model s(f);
    FiberPolynomial b = b_closed(s.c);
    EXPECT_EQ(b_from_gamma(s.c, s.h, GammaBranch::U5), b) << f;
    EXPECT_EQ(b_from_gamma(s.c, s.h, GammaBranch::U4), b) << f;
  }
}

TEST(Ingredients, Homogeneity) {
  for (const char* f : {"x4^4", "x4^3 + x3*x4", "x4^2 + x2*x4^3", "x4^3 + x5*x4^2"}) {
    Model s(f);
    AbnormalData d = abnormal_data(s.frame, s.c);
    for (const auto& a : d.alpha) EXPECT_TRUE(a.is_homogeneous(2));
    EXPECT_TRUE(d.b.is_homogeneous(1));
    EXPECT_TRUE(d.b1.is_homogeneous(1));
    EXPECT_TRUE(d.pi.is_homogeneous(2));
    EXPECT_TRUE(d.theta.is_homogeneous(4));
    EXPECT_TRUE(d.omega.is_homogeneous(4));
    EXPECT_FALSE(d.b.involves_u123());
  }
}

TEST(Ingredients, PiFormsAgreeOnCanonicalAdaptedFrames) {
  // With X3 = [X1,X2], X4 = [X1,X3], X5 = [X2,X3] the entries c_{3j}^{1,2} vanish, so both
  // expansions coincide.
  for (const char* f : {"x4^4", "x4^3 + x3*x4", "x4^2 + x2*x4^3"}) {
    Model s(f);
    EXPECT_EQ(pi_from_brackets(s.c), pi_expanded_printed(s.c)) << f;
  }
}

TEST(Ingredients, PiStronglyAdaptedIdentity) {
  // For a strongly adapted frame c_{3j}^{1,2} = 0 and the bracket form reduces to
  // -u5{u3,u4} + u4{u3,u5}.
  std::mt19937 rng(8);
  StructuralFunctions c = random_table(rng);
  for (int j : {1, 2})
    for (int k : {1, 2}) {
      c(3, j, k) = RationalFunction(5);
      c(j, 3, k) = RationalFunction(5);
    }
  FiberPolynomial expected = (U(4) * poisson_bracket(3, 5, c) - U(5) * poisson_bracket(3, 4, c)).restrict();
  EXPECT_EQ(pi_from_brackets(c), expected);
  EXPECT_EQ(pi_expanded_printed(c), expected);
}
