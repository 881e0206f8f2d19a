#include "dist235/rational_function.hpp"

#include "dist235/errors.hpp"

namespace dist235 {

RationalFunction::RationalFunction(std::size_t nvars)
    : num_(nvars), den_(Polynomial::constant(nvars, Rational(1))) {}

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.nvars(), Rational(1))) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != den_.nvars()) throw Error("numerator and denominator live in different rings");
  if (den_.is_zero()) throw ZeroDivisionError("division by the zero polynomial");
  canonicalize();
}

RationalFunction RationalFunction::constant(std::size_t nvars, const Rational& c) {
  return RationalFunction(Polynomial::constant(nvars, c));
}

RationalFunction RationalFunction::variable(std::size_t nvars, std::size_t index) {
  return RationalFunction(Polynomial::variable(nvars, index));
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw Error("rational function is not constant");
  return num_.constant_term() / den_.constant_term();
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.nvars(), Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *exact_divide(num_, g);
      den_ = *exact_divide(den_, g);
    }
  }
  Rational lc = den_.leading_term().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

void RationalFunction::normalize_leading() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.nvars(), Rational(1));
    return;
  }
  Rational lc = den_.leading_term().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    num_ += other.num_;
    canonicalize();
    return *this;
  }
  if (other.den_.is_constant() || den_.is_constant()) {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ *= other.den_;
    normalize_leading();
    return *this;
  }
  // Both operands are reduced, so a common factor of the new numerator and
  // denominator must divide g = gcd(den, other.den).
  Polynomial g = gcd(den_, other.den_);
  Polynomial b = g.is_constant() ? den_ : *exact_divide(den_, g);
  Polynomial d = g.is_constant() ? other.den_ : *exact_divide(other.den_, g);
  num_ = num_ * d + other.num_ * b;
  den_ = b * other.den_;
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.nvars(), Rational(1));
    return *this;
  }
  if (!g.is_constant()) {
    Polynomial h = gcd(num_, g);
    if (!h.is_constant()) {
      num_ = *exact_divide(num_, h);
      den_ = *exact_divide(den_, h);
    }
  }
  normalize_leading();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other) {
  return *this += -other;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& other) {
  if (is_zero() || other.is_zero()) {
    *this = RationalFunction(nvars());
    return *this;
  }
  if (is_polynomial() && other.is_polynomial()) {
    num_ *= other.num_;
    canonicalize();
    return *this;
  }
  // Cross-cancel first to keep intermediate products small.
  Polynomial g1 = gcd(num_, other.den_);
  Polynomial g2 = gcd(other.num_, den_);
  Polynomial a = g1.is_constant() ? num_ : *exact_divide(num_, g1);
  Polynomial d2 = g1.is_constant() ? other.den_ : *exact_divide(other.den_, g1);
  Polynomial b = g2.is_constant() ? other.num_ : *exact_divide(other.num_, g2);
  Polynomial d1 = g2.is_constant() ? den_ : *exact_divide(den_, g2);
  num_ = a * b;
  den_ = d1 * d2;
  Rational lc = den_.leading_term().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& other) {
  return *this *= other.inverse();
}

RationalFunction operator*(RationalFunction a, const Rational& c) {
  if (dist235::is_zero(c)) return RationalFunction(a.nvars());
  a.num_ *= c;
  return a;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw ZeroDivisionError("division by the zero rational function");
  RationalFunction r(nvars());
  r.num_ = den_;
  r.den_ = num_;
  Rational lc = r.den_.leading_term().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    r.num_ *= inv;
    r.den_ *= inv;
  }
  return r;
}

RationalFunction RationalFunction::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RationalFunction r(nvars());
  r.num_ = num_.pow(static_cast<unsigned>(n));
  r.den_ = den_.pow(static_cast<unsigned>(n));
  Rational lc = r.den_.leading_term().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    r.num_ *= inv;
    r.den_ *= inv;
  }
  return r;
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  if (den_.is_constant()) return RationalFunction(num_.derivative(var), den_);
  Polynomial dden = den_.derivative(var);
  if (dden.is_zero()) return RationalFunction(num_.derivative(var), den_);
  // d(n/d) = (n' d - n d') / d^2, with g = gcd(d, d') removed up front.
  Polynomial g = gcd(den_, dden);
  Polynomial d_over_g = g.is_constant() ? den_ : *exact_divide(den_, g);
  Polynomial dd_over_g = g.is_constant() ? dden : *exact_divide(dden, g);
  Polynomial top = num_.derivative(var) * d_over_g - num_ * dd_over_g;
  return RationalFunction(std::move(top), den_ * d_over_g);
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  Rational d = den_.evaluate(point);
  if (dist235::is_zero(d)) throw PoleError("rational function has a pole at the evaluation point");
  return num_.evaluate(point) / d;
}

RationalFunction RationalFunction::extend(std::size_t new_nvars) const {
  RationalFunction r(new_nvars);
  r.num_ = num_.extend(new_nvars);
  r.den_ = den_.extend(new_nvars);
  return r;
}

std::string to_string(const RationalFunction& f, std::span<const std::string> names) {
  std::string num = to_string(f.numerator(), names);
  if (f.is_polynomial()) return num;
  std::string den = to_string(f.denominator(), names);
  if (f.numerator().size() > 1) num = "(" + num + ")";
  if (f.denominator().size() > 1) den = "(" + den + ")";
  return num + "/" + den;
}

}  // namespace dist235
