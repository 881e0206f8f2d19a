#include "dist235/cartan.hpp"

#include "dist235/errors.hpp"

namespace dist235 {

namespace {

RationalFunction constant(std::size_t n, const Rational& c) { return RationalFunction::constant(n, c); }

OneForm scaled(const Rational& c, const OneForm& w) { return constant(w.dim(), c) * w; }

TwoForm scaled(const Rational& c, const TwoForm& w) { return constant(w.dim(), c) * w; }

FiberPolynomial u45(std::size_t n, int i, int j) {
  return FiberPolynomial::monomial({0, 0, 0, i, j}, constant(n, Rational(1)));
}

/// Coefficients of u4^2, u4 u5, u5^2.
template <typename T>
using Quadratic = std::array<T, 3>;

FiberPolynomial assemble(std::size_t n, const Quadratic<RationalFunction>& c) {
  return FiberPolynomial::constant(c[0]) * u45(n, 2, 0) + FiberPolynomial::constant(c[1]) * u45(n, 1, 1) +
         FiberPolynomial::constant(c[2]) * u45(n, 0, 2);
}

/// T(X5,X2) u4^2 + (T(X1,X5) + T(X2,X4)) u4 u5 + T(X4,X1) u5^2 for T quadratic in (u4, u5).
template <typename Pairing>
FiberPolynomial pattern(const Frame& f, Pairing t) {
  const auto& x = f.fields;
  std::size_t n = x[0].dim();
  return t(x[4], x[1]) * u45(n, 2, 0) + (t(x[0], x[4]) + t(x[1], x[3])) * u45(n, 1, 1) + t(x[3], x[0]) * u45(n, 0, 2);
}

QuarticForm cartan_form(const std::array<Rational, 5>& a) {
  // v = v1 X1 + v2 X2 has omega4(v) = v2 and omega5(v) = v1.
  QuarticForm f;
  f.c = {a[4], 4 * a[3], 6 * a[2], 4 * a[1], a[0]};
  return f;
}

QuarticReport finish(const std::array<RationalFunction, 5>& a, const QuarticForm& tangential,
                     std::span<const Rational> point, const std::array<Rational, 4>* m) {
  QuarticReport r;
  for (std::size_t i = 0; i < 5; ++i) r.a[i] = a[i].evaluate(point);
  r.cartan = cartan_form(r.a);
  if (m) r.cartan = change_basis(r.cartan, *m);
  r.tangential = tangential;
  for (std::size_t k = 0; k < 5; ++k) r.residual[k] = r.cartan.c[k] + 35 * r.tangential.c[k];
  return r;
}

}  // namespace

std::array<TwoForm, 5> structure_rhs(const CartanCoframe& c) {
  const auto& w = c.omega;
  const auto& b = c.bar;
  Rational two(2), four_thirds(4, 3);
  return {
      wedge(w[0], scaled(two, b[0]) + b[3]) + wedge(w[1], b[1]) + wedge(w[2], w[3]),
      wedge(w[0], b[2]) + wedge(w[1], b[0] + scaled(two, b[3])) + wedge(w[2], w[4]),
      wedge(w[0], b[4]) + wedge(w[1], b[5]) + wedge(w[2], b[0] + b[3]) + wedge(w[3], w[4]),
      wedge(w[0], b[6]) + scaled(four_thirds, wedge(w[2], b[5])) + wedge(w[3], b[0]) + wedge(w[4], b[1]),
      wedge(w[1], b[6]) - scaled(four_thirds, wedge(w[2], b[4])) + wedge(w[3], b[2]) + wedge(w[4], b[3]),
  };
}

bool StructureCheck::ok() const { return failing().empty(); }

std::vector<int> StructureCheck::failing() const {
  std::vector<int> out;
  for (int i = 0; i < 5; ++i)
    if (!residual[i].is_zero()) out.push_back(i + 1);
  return out;
}

StructureCheck verify_structure_equations(const CartanCoframe& c) {
  StructureCheck r;
  auto rhs = structure_rhs(c);
  for (std::size_t i = 0; i < 5; ++i) r.residual[i] = exterior_derivative(c.omega[i]) - rhs[i];
  return r;
}

Frame cartan_frame(const CartanCoframe& c) {
  std::size_t n = c.nvars();
  if (n != 5) throw DegeneracyError("a Cartan coframe lives on a 5-dimensional base");
  Matrix<RationalFunction> w(5, 5, RationalFunction(n));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) w(i, j) = c.omega[i][j];
  Matrix<RationalFunction> dual(5, 5, RationalFunction(n));
  try {
    dual = inverse(w, constant(n, Rational(1)));
  } catch (const ZeroDivisionError&) {
    throw DegeneracyError("the forms omega_1..omega_5 are not a coframe");
  }
  Frame f;
  f.tag = FrameTag::Cartan;
  for (std::size_t k = 0; k < 5; ++k) {
    std::vector<RationalFunction> col;
    for (std::size_t j = 0; j < 5; ++j) col.push_back(dual(j, 4 - k));
    f.fields.emplace_back(std::move(col));
  }
  return f;
}

CartanCoframe prolongation_shift(const CartanCoframe& c, const RationalFunction& nu1, const RationalFunction& nu2) {
  CartanCoframe r = c;
  const auto& w = c.omega;
  r.bar[0] += nu1 * w[0];
  r.bar[1] += nu2 * w[0];
  r.bar[2] += nu1 * w[1];
  r.bar[3] += nu2 * w[1];
  r.bar[4] += nu1 * w[2];
  r.bar[5] += nu2 * w[2];
  r.bar[6] += nu1 * w[3] + nu2 * w[4];
  return r;
}

CartanIdentities cartan_identities(const CartanCoframe& c, const Frame& frame, const AbnormalData& d) {
  std::size_t n = c.nvars();
  OneForm s = c.bar[0] + c.bar[3];
  CartanIdentities r;
  r.b_forms = FiberPolynomial::constant(s(frame.fields[1])) * u45(n, 1, 0) -
              FiberPolynomial::constant(s(frame.fields[0])) * u45(n, 0, 1);
  r.b = d.b;
  r.b1 = d.b1;
  r.pi = d.pi;
  r.alpha3 = d.alpha[2];
  return r;
}

CartanDensity density_simplified(const CartanCoframe& c) {
  std::size_t n = c.nvars();
  Frame frame = cartan_frame(c);
  StructuralFunctions sf = structural_functions(frame);
  AbnormalData d = abnormal_data(frame, sf);
  const auto& x = frame.fields;
  FiberPolynomial u4 = u45(n, 1, 0), u5 = u45(n, 0, 1);

  CartanDensity r;
  r.formula = fundamental_density(d);
  r.printed = fundamental_density(d, DensityFormula::Printed);

  const FiberPolynomial &a1 = d.alpha[0], &a2 = d.alpha[1];
  FiberPolynomial s = a1 * u4 + a2 * u5;
  r.simplified = Rational(1, 35) * (d.theta + d.h.apply(s) - d.omega - Rational(6) * (s * d.b));

  FiberPolynomial theta1 = a1.apply_base(x[1]) * u45(n, 2, 0) +
                           (a2.apply_base(x[1]) - a1.apply_base(x[0])) * u45(n, 1, 1) -
                           a2.apply_base(x[0]) * u45(n, 0, 2);
  r.theta_sum = d.theta + theta1;

  Quadratic<OneForm> w{c.bar[2], c.bar[0] - c.bar[3], scaled(Rational(-1), c.bar[1])};
  r.s_route = pattern(frame, [&](const VectorField& v1, const VectorField& v2) {
    Quadratic<RationalFunction> q;
    for (std::size_t m = 0; m < 3; ++m) q[m] = v1.apply(w[m](v2)) - v2.apply(w[m](v1));
    return assemble(n, q);
  });

  Quadratic<TwoForm> dw{exterior_derivative(w[0]), exterior_derivative(w[1]), exterior_derivative(w[2])};
  Quadratic<TwoForm> xi{wedge(c.bar[2], c.bar[0] - c.bar[3]), scaled(Rational(-2), wedge(c.bar[2], c.bar[1])),
                        wedge(c.bar[1], c.bar[0] - c.bar[3])};
  auto on_pattern = [&](const Quadratic<TwoForm>& t) {
    return pattern(frame, [&](const VectorField& v1, const VectorField& v2) {
      return assemble(n, {t[0](v1, v2), t[1](v1, v2), t[2](v1, v2)});
    });
  };
  r.b_poly = on_pattern(dw);
  r.xi_poly = on_pattern(xi);
  r.a = extract_cartan_coefficients(r.b_poly + r.xi_poly);
  return r;
}

FiberPolynomial cartan_quartic_polynomial(const std::array<RationalFunction, 5>& a) {
  std::size_t n = a[0].nvars();
  static const std::array<int, 5> binomial{1, -4, 6, -4, 1};
  FiberPolynomial p(n);
  for (int k = 0; k < 5; ++k) p -= Rational(binomial[k]) * (FiberPolynomial::constant(a[k]) * u45(n, 4 - k, k));
  return p;
}

std::array<RationalFunction, 5> extract_cartan_coefficients(const FiberPolynomial& p) {
  if (!p.is_homogeneous(4) || p.involves_u123()) throw Error("expected a quartic in (u4, u5)");
  static const std::array<int, 5> binomial{1, -4, 6, -4, 1};
  std::array<RationalFunction, 5> a;
  for (int k = 0; k < 5; ++k) a[k] = p.coefficient45(4 - k, k) * (Rational(-1) / binomial[k]);
  return a;
}

bool QuarticReport::ok() const {
  for (const auto& x : residual)
    if (!dist235::is_zero(x)) return false;
  return true;
}

QuarticReport compare_theorem(const CartanDensity& density, const Frame& frame, std::span<const Rational> point) {
  return finish(density.a, tangential_form(frame.fields[0], frame.fields[1], point), point, nullptr);
}

QuarticReport compare_theorem(const CartanCoframe& c, std::span<const Rational> point) {
  return compare_theorem(density_simplified(c), cartan_frame(c), point);
}

QuarticReport compare_theorem(const CartanCoframe& c, std::span<const Rational> point,
                              const std::array<Rational, 4>& m) {
  Frame frame = cartan_frame(c);
  std::size_t n = c.nvars();
  const VectorField &x1 = frame.fields[0], &x2 = frame.fields[1];
  VectorField y1 = constant(n, m[0]) * x1 + constant(n, m[1]) * x2;
  VectorField y2 = constant(n, m[2]) * x1 + constant(n, m[3]) * x2;
  QuarticForm t = tangential_form(y1, y2, point);
  t.basis = "Y1,Y2";
  QuarticReport r = finish(density_simplified(c).a, t, point, &m);
  r.cartan.basis = "Y1,Y2";
  return r;
}

}  // namespace dist235
