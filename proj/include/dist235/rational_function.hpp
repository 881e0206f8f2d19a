#pragma once

#include <span>
#include <string>

#include "dist235/polynomial.hpp"

namespace dist235 {

/// Quotient of polynomials kept in canonical form: gcd(num, den) = 1 and the
/// leading coefficient of the denominator is 1. Equality is structural after
/// canonicalization.
class RationalFunction {
 public:
  explicit RationalFunction(std::size_t nvars = 0);
  RationalFunction(Polynomial num);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction constant(std::size_t nvars, const Rational& c);
  static RationalFunction variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return num_.nvars(); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Value of a constant function; throws if the function is not constant.
  Rational constant_value() const;

  RationalFunction& operator+=(const RationalFunction& other);
  RationalFunction& operator-=(const RationalFunction& other);
  RationalFunction& operator*=(const RationalFunction& other);
  RationalFunction& operator/=(const RationalFunction& other);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator*(RationalFunction a, const Rational& c);
  friend RationalFunction operator*(const Rational& c, RationalFunction a) { return std::move(a) * c; }
  RationalFunction operator-() const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction inverse() const;
  RationalFunction pow(int n) const;
  RationalFunction derivative(std::size_t var) const;
  /// Throws PoleError where the denominator vanishes.
  Rational evaluate(std::span<const Rational> point) const;
  RationalFunction extend(std::size_t new_nvars) const;

 private:
  void canonicalize();
  void normalize_leading();

  Polynomial num_;
  Polynomial den_;
};

std::string to_string(const RationalFunction& f, std::span<const std::string> names = {});

}  // namespace dist235
