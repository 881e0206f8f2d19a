#include "dist235/abnormal.hpp"

#include <sstream>

#include "dist235/errors.hpp"

namespace dist235 {

FiberPolynomial FiberPolynomial::constant(const RationalFunction& c) {
  FiberPolynomial f(c.nvars());
  f.add_term({0, 0, 0, 0, 0}, c);
  return f;
}

FiberPolynomial FiberPolynomial::constant(std::size_t nvars, const Rational& c) {
  return constant(RationalFunction::constant(nvars, c));
}

FiberPolynomial FiberPolynomial::u(std::size_t nvars, int index, int power) {
  FiberExponent e{0, 0, 0, 0, 0};
  e[index - 1] = power;
  return monomial(e, RationalFunction::constant(nvars, Rational(1)));
}

FiberPolynomial FiberPolynomial::monomial(const FiberExponent& e, const RationalFunction& c) {
  FiberPolynomial f(c.nvars());
  f.add_term(e, c);
  return f;
}

void FiberPolynomial::add_term(const FiberExponent& e, const RationalFunction& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

RationalFunction FiberPolynomial::coefficient(const FiberExponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? RationalFunction(nvars_) : it->second;
}

FiberPolynomial& FiberPolynomial::operator+=(const FiberPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

FiberPolynomial& FiberPolynomial::operator-=(const FiberPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

FiberPolynomial operator*(const FiberPolynomial& a, const FiberPolynomial& b) {
  FiberPolynomial r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      FiberExponent e;
      for (int k = 0; k < 5; ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  return r;
}

FiberPolynomial operator*(const RationalFunction& c, const FiberPolynomial& a) {
  FiberPolynomial r(a.nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, x] : a.terms_) r.add_term(e, c * x);
  return r;
}

FiberPolynomial operator*(const Rational& c, const FiberPolynomial& a) {
  return RationalFunction::constant(a.nvars_, c) * a;
}

FiberPolynomial FiberPolynomial::operator-() const {
  FiberPolynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

FiberPolynomial FiberPolynomial::pow(unsigned n) const {
  FiberPolynomial r = constant(nvars_, Rational(1));
  for (unsigned k = 0; k < n; ++k) r = r * *this;
  return r;
}

FiberPolynomial FiberPolynomial::derivative_u(int index) const {
  FiberPolynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    int p = e[index - 1];
    if (p == 0) continue;
    FiberExponent d = e;
    --d[index - 1];
    r.add_term(d, c * Rational(p));
  }
  return r;
}

FiberPolynomial FiberPolynomial::apply_base(const VectorField& x) const {
  FiberPolynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, x.apply(c));
  return r;
}

FiberPolynomial FiberPolynomial::restrict() const {
  FiberPolynomial r(nvars_);
  for (const auto& [e, c] : terms_)
    if (e[0] == 0 && e[1] == 0 && e[2] == 0) r.terms_.emplace(e, c);
  return r;
}

bool FiberPolynomial::involves_u123() const {
  for (const auto& [e, c] : terms_)
    if (e[0] != 0 || e[1] != 0 || e[2] != 0) return true;
  return false;
}

bool FiberPolynomial::is_homogeneous(int d) const {
  for (const auto& [e, c] : terms_)
    if (e[0] + e[1] + e[2] + e[3] + e[4] != d) return false;
  return true;
}

namespace {

Rational power_of(const Rational& x, int p) {
  if (p < 0) {
    if (is_zero(x)) throw PoleError("negative power of a vanishing quasi-impulse");
    return power_of(1 / x, -p);
  }
  Rational r(1);
  for (int k = 0; k < p; ++k) r *= x;
  return r;
}

}  // namespace

RationalFunction FiberPolynomial::substitute_fiber(std::span<const Rational> u) const {
  RationalFunction r(nvars_);
  for (const auto& [e, c] : terms_) {
    Rational m(1);
    for (int k = 0; k < 5; ++k) m *= power_of(u[k], e[k]);
    r += c * m;
  }
  return r;
}

Rational FiberPolynomial::evaluate(std::span<const Rational> q, std::span<const Rational> u) const {
  Rational r(0);
  for (const auto& [e, c] : terms_) {
    Rational m = c.evaluate(q);
    for (int k = 0; k < 5; ++k) m *= power_of(u[k], e[k]);
    r += m;
  }
  return r;
}

FiberPolynomial FiberPolynomial::at_point(std::span<const Rational> q) const {
  FiberPolynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, RationalFunction::constant(nvars_, c.evaluate(q)));
  return r;
}

std::string to_string(const FiberPolynomial& f, std::span<const std::string> names) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest u4 power first reads naturally for binary forms.
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) out << " + ";
    first = false;
    out << "(" << to_string(c, names) << ")";
    for (int k = 0; k < 5; ++k) {
      if (e[k] == 0) continue;
      out << "*u" << (k + 1);
      if (e[k] != 1) out << "^" << e[k];
    }
  }
  return out.str();
}

FiberPolynomial poisson_bracket(int i, int j, const StructuralFunctions& c) {
  FiberPolynomial r(c.nvars());
  for (int k = 1; k <= 5; ++k) r += c(j, i, k) * FiberPolynomial::u(c.nvars(), k);
  return r;
}

FiberPolynomial HField::apply(const FiberPolynomial& f) const {
  std::size_t n = f.nvars();
  FiberPolynomial r = FiberPolynomial::u(n, 4) * f.apply_base(x2) - FiberPolynomial::u(n, 5) * f.apply_base(x1);
  for (int k = 1; k <= 5; ++k) {
    FiberPolynomial d = f.derivative_u(k);
    if (!d.is_zero()) r += fiber[k - 1] * d;
  }
  return r.restrict();
}

bool HField::is_tangent() const {
  for (int m = 1; m <= 3; ++m)
    if (!of_u(m).is_zero()) return false;
  return true;
}

HField h_field(const Frame& frame, const StructuralFunctions& c) {
  std::size_t n = c.nvars();
  HField h{frame.fields[0], frame.fields[1], {}};
  for (int k = 1; k <= 5; ++k)
    h.fiber[k - 1] = FiberPolynomial::u(n, 4) * poisson_bracket(2, k, c) -
                     FiberPolynomial::u(n, 5) * poisson_bracket(1, k, c);
  return h;
}

namespace {

FiberPolynomial quad45(const RationalFunction& a44, const RationalFunction& a45, const RationalFunction& a55) {
  FiberPolynomial r(a44.nvars());
  r += FiberPolynomial::monomial({0, 0, 0, 2, 0}, a44);
  r += FiberPolynomial::monomial({0, 0, 0, 1, 1}, a45);
  r += FiberPolynomial::monomial({0, 0, 0, 0, 2}, a55);
  return r;
}

FiberPolynomial lin45(const RationalFunction& a4, const RationalFunction& a5) {
  FiberPolynomial r(a4.nvars());
  r += FiberPolynomial::monomial({0, 0, 0, 1, 0}, a4);
  r += FiberPolynomial::monomial({0, 0, 0, 0, 1}, a5);
  return r;
}

}  // namespace

FiberPolynomial alpha(int i, const StructuralFunctions& c) {
  return quad45(c(5, 2, i), -(c(4, 2, i) + c(5, 1, i)), c(4, 1, i));
}

FiberPolynomial b_closed(const StructuralFunctions& c) {
  Rational third(1, 3);
  return lin45((c(4, 2, 4) + c(5, 2, 5)) * third, -(c(4, 1, 4) + c(5, 1, 5)) * third);
}

FiberPolynomial b_from_gamma(const StructuralFunctions& c, const HField& h, GammaBranch branch) {
  std::size_t n = c.nvars();
  FiberPolynomial g4(n), g5(n);
  if (branch == GammaBranch::U5) {
    g4 = FiberPolynomial::u(n, 5, -1);
  } else {
    g5 = -FiberPolynomial::u(n, 4, -1);
  }
  FiberPolynomial u4 = FiberPolynomial::u(n, 4), u5 = FiberPolynomial::u(n, 5);
  FiberPolynomial s = h.apply(g4) * u5 - h.apply(g5) * u4 + alpha(4, c) * g4 + alpha(5, c) * g5;
  return Rational(-1, 3) * s;
}

FiberPolynomial b1(const StructuralFunctions& c) { return lin45(c(3, 2, 3), -c(3, 1, 3)); }

FiberPolynomial pi_from_brackets(const StructuralFunctions& c) {
  std::size_t n = c.nvars();
  FiberPolynomial u4 = FiberPolynomial::u(n, 4), u5 = FiberPolynomial::u(n, 5);
  FiberPolynomial r = lin45(c(3, 2, 2), -c(3, 1, 2)) * u5 - lin45(c(3, 2, 1), -c(3, 1, 1)) * u4;
  r -= (u5 * poisson_bracket(3, 4, c) - u4 * poisson_bracket(3, 5, c)).restrict();
  return r;
}

FiberPolynomial pi_expanded_printed(const StructuralFunctions& c) {
  return quad45(c(3, 2, 1) + c(5, 3, 4), c(3, 2, 2) - c(3, 1, 1) - c(4, 3, 4) + c(5, 3, 5),
                -(c(3, 1, 2) + c(4, 3, 5)));
}

FiberPolynomial theta(const Frame& frame, const StructuralFunctions& c) {
  std::size_t n = c.nvars();
  const VectorField& x4 = frame.fields[3];
  const VectorField& x5 = frame.fields[4];
  FiberPolynomial a4 = alpha(4, c), a5 = alpha(5, c);
  FiberPolynomial u44 = FiberPolynomial::u(n, 4, 2), u45 = FiberPolynomial::u(n, 4) * FiberPolynomial::u(n, 5),
                  u55 = FiberPolynomial::u(n, 5, 2);
  return a4.apply_base(x5) * u44 + (a5.apply_base(x5) - a4.apply_base(x4)) * u45 - a5.apply_base(x4) * u55;
}

FiberPolynomial omega(const StructuralFunctions& c) {
  std::size_t n = c.nvars();
  FiberPolynomial u4 = FiberPolynomial::u(n, 4), u5 = FiberPolynomial::u(n, 5);
  FiberPolynomial r(n);
  for (int i = 1; i <= 3; ++i)
    r += (u5 * poisson_bracket(i, 4, c) - u4 * poisson_bracket(i, 5, c)).restrict() * alpha(i, c);
  return r;
}

AbnormalData abnormal_data(const Frame& frame, const StructuralFunctions& c, bool check_tangency) {
  AbnormalData d{h_field(frame, c), {}, b_closed(c), b1(c), pi_from_brackets(c), theta(frame, c), omega(c)};
  if (check_tangency && !d.h.is_tangent())
    throw DegeneracyError("characteristic field is not tangent to the annihilator of D^2 for this frame");
  for (int i = 1; i <= 5; ++i) d.alpha[i - 1] = alpha(i, c);
  return d;
}

}  // namespace dist235
