#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dist235/rational.hpp"

namespace dist235 {

inline constexpr std::size_t kMaxVars = 12;

/// Exponent vector. Unused trailing slots stay zero, so monomials from rings of
/// different arity compare consistently after `Polynomial::extend`.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > other.exp[i]) return false;
    return true;
  }
  bool is_one() const { return degree() == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = a.exp[i] + b.exp[i];
    return m;
  }
  /// Requires `b.divides(a)`.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = a.exp[i] - b.exp[i];
    return m;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order: total degree first, then lex on x1 > x2 > ...
bool grlex_greater(const Monomial& a, const Monomial& b);

/// Sparse distributed multivariate polynomial with rational coefficients.
/// Terms are stored in strictly decreasing grlex order with no zero coefficients.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  explicit Polynomial(std::size_t nvars = 0);

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(std::size_t nvars, const Monomial& m, const Rational& c);
  /// Builds from unsorted terms; duplicate monomials are summed.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_term() const;
  const Term& leading_term() const { return terms_.front(); }

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }
  /// Smallest exponent of each variable over all terms (the monomial content).
  Monomial min_exponents() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned n) const;
  Polynomial derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;
  /// Same polynomial in a ring with more trailing variables.
  Polynomial extend(std::size_t new_nvars) const;
  /// Drops all terms of total degree above `max_degree`.
  Polynomial truncate(unsigned max_degree) const;
  /// Multiplies by the inverse of the leading coefficient (zero stays zero).
  Polynomial monic() const;
  Polynomial divide_monomial(const Monomial& m) const;
  /// Coefficients with respect to `var`; entry k multiplies var^k and does not involve var.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;
  /// Substitutes x_i -> point_i + y_i (Taylor re-centering), exact.
  Polynomial shift(std::span<const Rational> point) const;

 private:
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// Returns f / g when g divides f exactly, otherwise nullopt. g must be nonzero.
std::optional<Polynomial> exact_divide(const Polynomial& f, const Polynomial& g);

/// Monic greatest common divisor (recursive primitive remainder sequences).
/// gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& f, const Polynomial& g);

/// Human-readable rendering using the given variable names (x1.. when empty).
std::string to_string(const Polynomial& p, std::span<const std::string> names = {});

}  // namespace dist235
