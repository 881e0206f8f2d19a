#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dist235/diffgeo.hpp"

namespace dist235 {

/// Exponents of (u1, ..., u5); negative entries allowed for Laurent monomials.
using FiberExponent = std::array<int, 5>;

/// Polynomial in the quasi-impulses u1..u5 with rational-function coefficients
/// in the base coordinates.
class FiberPolynomial {
 public:
  FiberPolynomial() : nvars_(5) {}
  explicit FiberPolynomial(std::size_t nvars) : nvars_(nvars) {}
  static FiberPolynomial constant(const RationalFunction& c);
  static FiberPolynomial constant(std::size_t nvars, const Rational& c);
  /// u_index^power, index in 1..5.
  static FiberPolynomial u(std::size_t nvars, int index, int power = 1);
  static FiberPolynomial monomial(const FiberExponent& e, const RationalFunction& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<FiberExponent, RationalFunction>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RationalFunction coefficient(const FiberExponent& e) const;
  /// Coefficient of u4^i u5^j.
  RationalFunction coefficient45(int i, int j) const { return coefficient({0, 0, 0, i, j}); }

  FiberPolynomial& operator+=(const FiberPolynomial& o);
  FiberPolynomial& operator-=(const FiberPolynomial& o);
  friend FiberPolynomial operator+(FiberPolynomial a, const FiberPolynomial& b) { return a += b; }
  friend FiberPolynomial operator-(FiberPolynomial a, const FiberPolynomial& b) { return a -= b; }
  friend FiberPolynomial operator*(const FiberPolynomial& a, const FiberPolynomial& b);
  friend FiberPolynomial operator*(const RationalFunction& c, const FiberPolynomial& a);
  friend FiberPolynomial operator*(const Rational& c, const FiberPolynomial& a);
  FiberPolynomial operator-() const;
  friend bool operator==(const FiberPolynomial& a, const FiberPolynomial& b) { return a.terms_ == b.terms_; }

  FiberPolynomial pow(unsigned n) const;
  /// d/du_index, index in 1..5.
  FiberPolynomial derivative_u(int index) const;
  /// Applies the base vector field to every coefficient.
  FiberPolynomial apply_base(const VectorField& x) const;
  /// Drops every monomial containing u1, u2 or u3 (restriction to u1 = u2 = u3 = 0).
  FiberPolynomial restrict() const;
  bool involves_u123() const;
  /// True if every monomial has total u-degree d (zero counts as homogeneous).
  bool is_homogeneous(int d) const;
  /// Substitutes values for u1..u5, leaving a rational function of the base point.
  RationalFunction substitute_fiber(std::span<const Rational> u) const;
  Rational evaluate(std::span<const Rational> q, std::span<const Rational> u) const;
  /// Evaluates coefficients at the base point, keeping the u-dependence.
  FiberPolynomial at_point(std::span<const Rational> q) const;

 private:
  void add_term(const FiberExponent& e, const RationalFunction& c);
  std::size_t nvars_;
  std::map<FiberExponent, RationalFunction> terms_;
};

std::string to_string(const FiberPolynomial& f, std::span<const std::string> names = {});

/// {u_i, u_j} = sum_k c_{ji}^k u_k (1-based i, j).
FiberPolynomial poisson_bracket(int i, int j, const StructuralFunctions& c);

/// Characteristic field h = u4 lift(u2) - u5 lift(u1) in frame coordinates:
/// base part u4 X2 - u5 X1, fiber part sum_k P_k d/du_k with
/// P_k = u4 {u2, u_k} - u5 {u1, u_k}.
struct HField {
  VectorField x1, x2;
  std::array<FiberPolynomial, 5> fiber;  // unrestricted P_1..P_5

  /// Applies h to a restricted fiber polynomial and restricts the result.
  FiberPolynomial apply(const FiberPolynomial& f) const;
  /// h(u_m) restricted, m = 1..5.
  FiberPolynomial of_u(int m) const { return fiber[m - 1].restrict(); }
  /// h(u1) = h(u2) = h(u3) = 0 on u1 = u2 = u3 = 0.
  bool is_tangent() const;
};

HField h_field(const Frame& frame, const StructuralFunctions& c);

/// alpha_i = c_{52}^i u4^2 - (c_{42}^i + c_{51}^i) u4 u5 + c_{41}^i u5^2.
FiberPolynomial alpha(int i, const StructuralFunctions& c);
/// Closed form b = 1/3((c_{42}^4 + c_{52}^5) u4 - (c_{41}^4 + c_{51}^5) u5).
FiberPolynomial b_closed(const StructuralFunctions& c);

enum class GammaBranch { U5 /* gamma4 = 1/u5, gamma5 = 0 */, U4 /* gamma4 = 0, gamma5 = -1/u4 */ };

/// b = -1/3(h(gamma4) u5 - h(gamma5) u4 + alpha4 gamma4 + alpha5 gamma5); Laurent in general,
/// polynomial after cancellation.
FiberPolynomial b_from_gamma(const StructuralFunctions& c, const HField& h, GammaBranch branch);
/// b1 = c_{32}^3 u4 - c_{31}^3 u5.
FiberPolynomial b1(const StructuralFunctions& c);

/// Pi = (c_{32}^2 u4 - c_{31}^2 u5) u5 - (c_{32}^1 u4 - c_{31}^1 u5) u4 - (u5{u3,u4} - u4{u3,u5}).
FiberPolynomial pi_from_brackets(const StructuralFunctions& c);
/// Expanded quadratic as printed alongside the bracket form; differs from it in
/// the signs of c_{32}^1 and c_{31}^1.
FiberPolynomial pi_expanded_printed(const StructuralFunctions& c);

/// Theta = X5(alpha4) u4^2 + (X5(alpha5) - X4(alpha4)) u4 u5 - X4(alpha5) u5^2.
FiberPolynomial theta(const Frame& frame, const StructuralFunctions& c);
/// Omega = sum_{i=1}^3 (u5{u_i,u4} - u4{u_i,u5}) alpha_i.
FiberPolynomial omega(const StructuralFunctions& c);

/// Every scalar ingredient of the density formula for one adapted frame.
struct AbnormalData {
  HField h;
  std::array<FiberPolynomial, 5> alpha;
  FiberPolynomial b, b1, pi, theta, omega;
};

/// Throws DegeneracyError if h fails the tangency self-check (unless `check_tangency` is false).
AbnormalData abnormal_data(const Frame& frame, const StructuralFunctions& c, bool check_tangency = true);

}  // namespace dist235
