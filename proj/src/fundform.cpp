#include "dist235/fundform.hpp"

#include "dist235/errors.hpp"

namespace dist235 {

namespace {

FiberPolynomial u(std::size_t n, int i, int p = 1) { return FiberPolynomial::u(n, i, p); }

FiberPolynomial alpha12(const AbnormalData& d) {
  std::size_t n = d.b.nvars();
  return d.alpha[0] * u(n, 4) + d.alpha[1] * u(n, 5);
}

}  // namespace

MovingFrameCoeffs coeffs_a(const AbnormalData& d) {
  const HField& h = d.h;
  FiberPolynomial a12 = alpha12(d);
  MovingFrameCoeffs m;
  m.a22 = -d.b1 - Rational(3) * d.b;
  m.a42 = Rational(-1, 4) * d.pi;
  m.a41 = Rational(-1, 4) * (d.pi * d.b) + Rational(1, 12) * a12;
  m.a21 = -(d.b * d.b1 + h.apply(d.b) - Rational(1, 3) * d.alpha[2]);
  m.a31 = Rational(1, 36) * (d.omega - d.theta) + Rational(1, 6) * (a12 * d.b) -
          Rational(1, 4) * (d.pi * d.b * d.b);
  return m;
}

FiberPolynomial ricci_density(const AbnormalData& d) {
  const HField& h = d.h;
  FiberPolynomial inner = d.alpha[2] - Rational(1, 2) * d.pi - Rational(1, 2) * h.apply(d.b1) -
                          Rational(9, 2) * h.apply(d.b) + Rational(1, 2) * (d.b1 * d.b1) +
                          Rational(9, 2) * (d.b * d.b);
  return Rational(-4, 15) * inner;
}

FiberPolynomial fundamental_density(const AbnormalData& d, DensityFormula formula) {
  const HField& h = d.h;
  FiberPolynomial a(d.b.nvars());
  if (formula == DensityFormula::Composed) {
    MovingFrameCoeffs m = coeffs_a(d);
    auto deriv = [&h](const FiberPolynomial& f) { return h.apply(f); };
    a = ricci_and_density(m.a21, m.a22, m.a31, m.a41, m.a42, deriv).a;
  } else {
    FiberPolynomial a12 = alpha12(d);
    FiberPolynomial r = d.alpha[2] - Rational(1, 2) * d.pi - Rational(1, 2) * h.apply(d.b1) -
                        Rational(9, 2) * h.apply(d.b) + Rational(1, 2) * (d.b1 * d.b1) +
                        Rational(9, 2) * (d.b * d.b);
    FiberPolynomial x = d.b * d.b1 + h.apply(d.b) - Rational(1, 3) * d.alpha[2];
    FiberPolynomial s = Rational(1, 36) * (d.theta - d.omega) - Rational(1, 6) * (a12 * d.b) +
                        Rational(1, 4) * (d.pi * d.b * d.b) + Rational(1, 100) * (r * r) -
                        Rational(1, 60) * h.apply(h.apply(r)) - Rational(1, 4) * (x * x) +
                        Rational(1, 36) * h.apply(a12) - Rational(1, 12) * h.apply(d.pi * d.b) +
                        Rational(1, 12) * h.apply(h.apply(x)) + Rational(1, 12) * h.apply(x * (d.b1 + Rational(3) * d.b));
    a = Rational(36, 35) * s;
  }
  if (!a.is_homogeneous(4) || a.involves_u123())
    throw Error("fundamental density is not a quartic in (u4, u5); the frame or its structural functions are inconsistent");
  return a;
}

Rational QuarticForm::operator()(const Rational& v1, const Rational& v2) const {
  Rational s(0);
  for (int k = 0; k <= 4; ++k) {
    Rational m = c[k];
    for (int i = 0; i < 4 - k; ++i) m *= v1;
    for (int i = 0; i < k; ++i) m *= v2;
    s += m;
  }
  return s;
}

bool QuarticForm::is_zero() const {
  for (const auto& x : c)
    if (!dist235::is_zero(x)) return false;
  return true;
}

std::array<Rational, 5> fiber_quartic(const FiberPolynomial& a, std::span<const Rational> point) {
  std::array<Rational, 5> out{};
  for (int k = 0; k <= 4; ++k) out[k] = a.coefficient45(4 - k, k).evaluate(point);
  return out;
}

QuarticForm tangential_form(const FiberPolynomial& a, std::span<const Rational> point) {
  // u4^(4-k) u5^k with u4 = v2, u5 = -v1 becomes (-1)^k v1^k v2^(4-k).
  std::array<Rational, 5> f = fiber_quartic(a, point);
  QuarticForm q;
  for (int k = 0; k <= 4; ++k) q.c[4 - k] = k % 2 == 0 ? f[k] : -f[k];
  return q;
}

namespace {

FiberPolynomial density_for(const VectorField& x1, const VectorField& x2, DensityFormula formula, Frame* frame_out,
                            Coframe* coframe_out) {
  Frame frame = adapted_frame(x1, x2);
  Coframe coframe = dual_coframe(frame);
  StructuralFunctions c = structural_functions(frame, coframe);
  FiberPolynomial a = fundamental_density(abnormal_data(frame, c), formula);
  if (frame_out) *frame_out = frame;
  if (coframe_out) *coframe_out = coframe;
  return a;
}

using Binary = std::array<Rational, 5>;  // index k multiplies u4^(4-k) u5^k

/// (l0 u4 + l1 u5)^i (l2 u4 + l3 u5)^j as coefficients of u4^(i+j-k) u5^k.
std::vector<Rational> power_product(const Rational& l0, const Rational& l1, const Rational& l2, const Rational& l3,
                                    int i, int j) {
  std::vector<Rational> r{Rational(1)};
  auto mul = [&r](const Rational& a, const Rational& b) {
    std::vector<Rational> s(r.size() + 1, Rational(0));
    for (std::size_t k = 0; k < r.size(); ++k) {
      s[k] += r[k] * a;
      s[k + 1] += r[k] * b;
    }
    r = std::move(s);
  };
  for (int k = 0; k < i; ++k) mul(l0, l1);
  for (int k = 0; k < j; ++k) mul(l2, l3);
  return r;
}

/// f(ut4, ut5) with ut4 = l0 u4 + l1 u5, ut5 = l2 u4 + l3 u5.
Binary substitute(const Binary& f, const Rational& l0, const Rational& l1, const Rational& l2, const Rational& l3) {
  Binary out{};
  for (int k = 0; k <= 4; ++k) {
    if (dist235::is_zero(f[k])) continue;
    auto p = power_product(l0, l1, l2, l3, 4 - k, k);
    for (int m = 0; m <= 4; ++m) out[m] += f[k] * p[m];
  }
  return out;
}

}  // namespace

QuarticForm change_basis(const QuarticForm& f, const std::array<Rational, 4>& m) {
  // v = w1 Y1 + w2 Y2 = (m0 w1 + m2 w2) X1 + (m1 w1 + m3 w2) X2.
  QuarticForm r = f;
  r.c = substitute(f.c, m[0], m[2], m[1], m[3]);
  return r;
}

QuarticForm tangential_form(const VectorField& x1, const VectorField& x2, std::span<const Rational> point,
                            DensityFormula formula) {
  return tangential_form(density_for(x1, x2, formula, nullptr, nullptr), point);
}

FrameChangeReport frame_change_check(const VectorField& x1, const VectorField& x2, const VectorField& xt1,
                                     const VectorField& xt2, std::span<const Rational> point,
                                     DensityFormula formula) {
  Frame frame, frame_new;
  Coframe coframe;
  FiberPolynomial a = density_for(x1, x2, formula, &frame, &coframe);
  FiberPolynomial at = density_for(xt1, xt2, formula, &frame_new, nullptr);

  for (const VectorField* v : {&xt1, &xt2})
    for (int k = 2; k < 5; ++k)
      if (!coframe[k](*v).is_zero()) throw DegeneracyError("the new basis does not span the same plane field");

  FrameChangeReport r;
  r.m = {coframe[0](xt1).evaluate(point), coframe[1](xt1).evaluate(point), coframe[0](xt2).evaluate(point),
         coframe[1](xt2).evaluate(point)};
  r.det = r.m[0] * r.m[3] - r.m[1] * r.m[2];

  // ut_i = p . Xt_i; on the annihilator of D^2 only the X4, X5 components of Xt4, Xt5 survive.
  Rational l0 = coframe[3](frame_new.fields[3]).evaluate(point);
  Rational l1 = coframe[4](frame_new.fields[3]).evaluate(point);
  Rational l2 = coframe[3](frame_new.fields[4]).evaluate(point);
  Rational l3 = coframe[4](frame_new.fields[4]).evaluate(point);
  Binary base = fiber_quartic(a, point);
  Binary pulled = substitute(fiber_quartic(at, point), l0, l1, l2, l3);

  r.density_zero = true;
  for (const auto& x : base)
    if (!dist235::is_zero(x)) r.density_zero = false;
  if (r.density_zero) {
    r.proportional = true;
    for (const auto& x : pulled)
      if (!dist235::is_zero(x)) r.proportional = false;
    r.factor = Rational(1);
  } else {
    int lead = 0;
    while (dist235::is_zero(base[lead])) ++lead;
    r.factor = pulled[lead] / base[lead];
    r.proportional = true;
    for (int k = 0; k <= 4; ++k)
      if (pulled[k] != r.factor * base[k]) r.proportional = false;
  }

  r.tangential = tangential_form(a, point);
  QuarticForm tn = tangential_form(at, point);
  tn.basis = "Xt1,Xt2";
  r.tangential_new = tn;
  // Express the new quartic in the old basis: v = w1 Xt1 + w2 Xt2 = (w1 m0 + w2 m2) X1 + (w1 m1 + w2 m3) X2.
  Rational inv = 1 / r.det;
  Rational w11 = r.m[3] * inv, w12 = -r.m[2] * inv, w21 = -r.m[1] * inv, w22 = r.m[0] * inv;
  // tn(w1, w2) with w1 = w11 v1 + w12 v2, w2 = w21 v1 + w22 v2; QuarticForm index k multiplies v1^(4-k) v2^k.
  Binary back = substitute(tn.c, w11, w12, w21, w22);
  r.tangential_equal = back == r.tangential.c;
  return r;
}

}  // namespace dist235
