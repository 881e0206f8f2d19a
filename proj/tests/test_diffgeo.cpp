#include <gtest/gtest.h>

#include "dist235/diffgeo.hpp"
#include "test_support.hpp"

using namespace dist235;
using namespace dist235::testing;

namespace {

Frame coordinate_frame() {
  Frame f;
  for (std::size_t k = 0; k < 5; ++k) f.fields.push_back(VectorField::coordinate(5, k));
  return f;
}

VectorField combination(const Frame& frame, const StructuralFunctions& c, int j, int i) {
  VectorField out(5);
  for (int k = 1; k <= 5; ++k) out += c(j, i, k) * frame.fields[k - 1];
  return out;
}

}  // namespace

TEST(LieBracket, Examples) {
  VectorField d1 = VectorField::coordinate(5, 0);
  EXPECT_EQ(lie_bracket(d1, vf({"0", "x1", "0", "0", "0"})), VectorField::coordinate(5, 1));
  VectorField v = vf({"x2", "x1*x3", "1", "0", "x5^2"});
  EXPECT_TRUE(lie_bracket(v, v).is_zero());
  // flat model in (x, y, p, q, z)
  VectorField x1 = vf({"0", "0", "0", "1", "0"});
  VectorField x2 = vf({"1", "x3", "x4", "0", "x4^2"});
  EXPECT_EQ(lie_bracket(x1, x2), vf({"0", "0", "1", "0", "2*x4"}));
}

TEST(LieBracket, JacobiIdentity) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    VectorField u = random_field(rng), v = random_field(rng), w = random_field(rng);
    VectorField s = lie_bracket(lie_bracket(u, v), w) + lie_bracket(lie_bracket(v, w), u) +
                    lie_bracket(lie_bracket(w, u), v);
    EXPECT_TRUE(s.is_zero());
  }
}

TEST(Forms, ExteriorDerivative) {
  OneForm w(5);
  w[1] = rf("x1");
  TwoForm dw = exterior_derivative(w);
  EXPECT_EQ(dw.component(0, 1), rf("1"));
  EXPECT_EQ(dw.component(1, 0), rf("-1"));
  dw.set(0, 1, rf("0"));
  EXPECT_TRUE(dw.is_zero());
  EXPECT_TRUE(exterior_derivative(OneForm::differential(rf("x1*x3"))).is_zero());
  TwoForm ww = wedge(OneForm::coordinate(5, 0), OneForm::coordinate(5, 1));
  EXPECT_EQ(ww.component(0, 1), rf("1"));
}

TEST(Forms, DerivativeBracketIdentity) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    OneForm w = random_form(rng);
    VectorField v = random_field(rng), u = random_field(rng);
    RationalFunction lhs = exterior_derivative(w)(v, u);
    RationalFunction rhs = v.apply(w(u)) - u.apply(w(v)) - w(lie_bracket(v, u));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Forms, WedgeEvaluation) {
  std::mt19937 rng(6);
  OneForm a = random_form(rng), b = random_form(rng);
  VectorField v = random_field(rng), u = random_field(rng);
  EXPECT_EQ(wedge(a, b)(v, u), a(v) * b(u) - a(u) * b(v));
}

TEST(Coframe, Duality) {
  Coframe id = dual_coframe(coordinate_frame());
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(id[i], OneForm::coordinate(5, i));

  Frame shear = coordinate_frame();
  shear.fields[1] = shear.fields[1] + shear.fields[0];
  Coframe w = dual_coframe(shear);
  EXPECT_EQ(w[0], OneForm::coordinate(5, 0) - OneForm::coordinate(5, 1));

  for (const char* f : {"x4^2", "x4^3"}) {
    Frame frame = monge_frame(f);
    Coframe c = dual_coframe(frame);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(c[i](frame.fields[k]), rf(i == k ? "1" : "0"));
  }
}

TEST(Coframe, SingularFrameRejected) {
  Frame f = coordinate_frame();
  f.fields[4] = f.fields[3];
  EXPECT_THROW(dual_coframe(f), Error);
  EXPECT_THROW(f.check_invertible_at(std::vector<Rational>(5, q(0))), DegeneracyError);
}

TEST(StructuralFunctions, Examples) {
  StructuralFunctions zero = structural_functions(coordinate_frame());
  for (int j = 1; j <= 5; ++j)
    for (int i = 1; i <= 5; ++i)
      for (int k = 1; k <= 5; ++k) EXPECT_TRUE(zero(j, i, k).is_zero());

  Frame heis = coordinate_frame();
  heis.fields[1] = vf({"0", "1", "x1", "0", "0"});
  StructuralFunctions c = structural_functions(heis);
  for (int j = 1; j <= 5; ++j)
    for (int i = 1; i <= 5; ++i)
      for (int k = 1; k <= 5; ++k) {
        int expected = (j == 2 && i == 1 && k == 3) ? 1 : (j == 1 && i == 2 && k == 3) ? -1 : 0;
        EXPECT_EQ(c(j, i, k), RationalFunction::constant(5, q(expected))) << j << i << k;
      }
}

TEST(StructuralFunctions, FlatModel) {
  StructuralFunctions c = structural_functions(monge_frame("x4^2"));
  EXPECT_EQ(c(2, 1, 3), rf("1"));
  EXPECT_EQ(c(3, 1, 4), rf("1"));
  EXPECT_EQ(c(3, 2, 5), rf("1"));
  int nonzero = 0;
  for (int j = 1; j <= 5; ++j)
    for (int i = 1; i <= 5; ++i)
      for (int k = 1; k <= 5; ++k) nonzero += c(j, i, k).is_zero() ? 0 : 1;
  EXPECT_EQ(nonzero, 6);
}

TEST(StructuralFunctions, ReconstructBrackets) {
  for (const char* f : {"x4^3", "x4^4", "x4^3 + x3*x4", "x4^2 + x2*x4^3"}) {
    Frame frame = monge_frame(f);
    StructuralFunctions c = structural_functions(frame);
    for (int i = 1; i <= 5; ++i)
      for (int j = 1; j <= 5; ++j) {
        EXPECT_EQ(lie_bracket(frame.fields[i - 1], frame.fields[j - 1]), combination(frame, c, j, i));
        EXPECT_EQ(c(j, i, 1), -c(i, j, 1));
      }
  }
}

TEST(GrowthVector, Examples) {
  std::vector<Rational> origin(5, q(0));
  auto flat = monge_distribution(rf("x4^2"));
  EXPECT_EQ(growth_vector(flat[0], flat[1], origin).str(), "(2,3,5)");
  EXPECT_EQ(growth_vector(VectorField::coordinate(5, 0), VectorField::coordinate(5, 1), origin).str(), "(2,2,2)");
  auto cubic = monge_distribution(rf("x4^3"));
  std::vector<Rational> point{q(0), q(0), q(0), q(1), q(0)};
  EXPECT_TRUE(growth_vector(cubic[0], cubic[1], point).is_235());
  EXPECT_FALSE(growth_vector(cubic[0], cubic[1], origin).is_235());
}

TEST(AdaptedFrame, Examples) {
  Frame flat = monge_frame("x4^2");
  EXPECT_EQ(flat.fields[2], vf({"0", "0", "1", "0", "2*x4"}));
  EXPECT_EQ(flat.fields[3], vf({"0", "0", "0", "0", "2"}));
  EXPECT_EQ(flat.fields[4], vf({"0", "-1", "0", "0", "0"}));
  EXPECT_EQ(flat.tag, FrameTag::Adapted);

  Frame cubic = monge_frame("x4^3");
  EXPECT_EQ(cubic.fields[3], vf({"0", "0", "0", "0", "6*x4"}));
  EXPECT_THROW(cubic.check_invertible_at(std::vector<Rational>(5, q(0))), DegeneracyError);
  EXPECT_NO_THROW(cubic.check_invertible_at(std::vector<Rational>{q(0), q(0), q(0), q(1), q(0)}));

  Frame strong = monge_frame("x4^2", AdaptedMode::StronglyAdapted);
  EXPECT_EQ(strong.fields[4], vf({"0", "1", "0", "0", "0"}));
  EXPECT_EQ(strong.tag, FrameTag::StronglyAdapted);
}
