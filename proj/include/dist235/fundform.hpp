#pragma once

#include <array>
#include <span>
#include <string>

#include "dist235/abnormal.hpp"

namespace dist235 {

/// Coefficients of the normalized moving frame along the characteristic curve.
struct MovingFrameCoeffs {
  FiberPolynomial a21, a22, a31, a41, a42;
};

MovingFrameCoeffs coeffs_a(const AbnormalData& d);

/// rho = -4/15(alpha3 - Pi/2 - h(b1)/2 - 9/2 h(b) + b1^2/2 + 9/2 b^2), degree 2 in (u4, u5).
FiberPolynomial ricci_density(const AbnormalData& d);

enum class DensityFormula {
  /// The closed expression in Theta, Omega, alpha, b, b1, Pi and h. It
  /// differs from Composed by 6/35 h(h(b b1 + h(b) - alpha3/3)), and the Jacobi-curve oracle sides with Composed.
  Printed,
  /// The moving-frame expression in a_ij with ' = h, composed from coeffs_a. Default.
  Composed,
};

/// Density A of the fundamental form; throws Error unless the result is homogeneous of degree 4.
FiberPolynomial fundamental_density(const AbnormalData& d, DensityFormula formula = DensityFormula::Composed);

template <typename T>
struct RicciAndDensity {
  T rho;
  T a;
};

/// rho = -4/15(3a21 + 2a42 + a22'/2 + a22^2/2),
/// A = 36/35(-a31 + 9/64 rho^2 + rho''/16 - a21^2/4 + a41'/3 + a21''/12 + (a21 a22)'/12).
/// Works for any ring with a derivation `d` (jets in t, or fiber polynomials with d = h).
template <typename T, typename Derivation>
RicciAndDensity<T> ricci_and_density(const T& a21, const T& a22, const T& a31, const T& a41, const T& a42,
                                     Derivation d) {
  T rho = Rational(-4, 15) * (Rational(3) * a21 + Rational(2) * a42 + Rational(1, 2) * d(a22) +
                              Rational(1, 2) * (a22 * a22));
  T a = Rational(36, 35) * (-a31 + Rational(9, 64) * (rho * rho) + Rational(1, 16) * d(d(rho)) -
                            Rational(1, 4) * (a21 * a21) + Rational(1, 3) * d(a41) + Rational(1, 12) * d(d(a21)) +
                            Rational(1, 12) * d(a21 * a22));
  return {rho, a};
}

/// Binary quartic c0 v1^4 + c1 v1^3 v2 + c2 v1^2 v2^2 + c3 v1 v2^3 + c4 v2^4 in coordinates
/// v = v1 Y1 + v2 Y2 over the basis named in `basis`.
struct QuarticForm {
  std::array<Rational, 5> c{};
  std::string basis = "X1,X2";

  Rational operator()(const Rational& v1, const Rational& v2) const;
  bool is_zero() const;
  friend bool operator==(const QuarticForm& a, const QuarticForm& b) { return a.c == b.c; }
};

/// The same quartic on the basis Y1 = m0 X1 + m1 X2, Y2 = m2 X1 + m3 X2.
QuarticForm change_basis(const QuarticForm& f, const std::array<Rational, 4>& m);

/// Restriction of a degree-4 fiber polynomial to u4, u5 at a base point:
/// coefficient k multiplies u4^(4-k) u5^k.
std::array<Rational, 5> fiber_quartic(const FiberPolynomial& a, std::span<const Rational> point);

/// A_q(a X1 + b X2) = A(q; u4 = b, u5 = -a).
QuarticForm tangential_form(const FiberPolynomial& a, std::span<const Rational> point);

/// Full pipeline: adapted frame of (X1, X2), density, tangential form at the point.
QuarticForm tangential_form(const VectorField& x1, const VectorField& x2, std::span<const Rational> point,
                            DensityFormula formula = DensityFormula::Composed);

struct FrameChangeReport {
  Rational det;                 // det of the transition matrix at the point
  std::array<Rational, 4> m{};  // (Xt1, Xt2) = (m0 X1 + m1 X2, m2 X1 + m3 X2)
  bool proportional = false;    // A for the new basis is a constant multiple of A at the same covector
  Rational factor;              // that multiple (meaningful only if proportional and A != 0)
  bool density_zero = false;
  bool tangential_equal = false;
  QuarticForm tangential, tangential_new;
};

/// Compares the density pipelines of two bases of the same plane field at a base point.
/// Throws DegeneracyError if (Xt1, Xt2) do not lie in span(X1, X2).
FrameChangeReport frame_change_check(const VectorField& x1, const VectorField& x2, const VectorField& xt1,
                                     const VectorField& xt2, std::span<const Rational> point,
                                     DensityFormula formula = DensityFormula::Composed);

}  // namespace dist235
