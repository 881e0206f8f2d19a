#pragma once

#include <array>
#include <span>
#include <vector>

#include "dist235/fundform.hpp"

namespace dist235 {

/// omega_1..omega_5 with D = ker(omega_1, omega_2, omega_3), and the auxiliary forms
/// bar_1..bar_7 of the structure equations.
struct CartanCoframe {
  std::array<OneForm, 5> omega;
  std::array<OneForm, 7> bar;

  std::size_t nvars() const { return omega[0].dim(); }
};

/// Right-hand sides of
///   d w1 = w1 (2 b1 + b4) + w2 b2 + w3 w4
///   d w2 = w1 b3 + w2 (b1 + 2 b4) + w3 w5
///   d w3 = w1 b5 + w2 b6 + w3 (b1 + b4) + w4 w5
///   d w4 = w1 b7 + 4/3 w3 b6 + w4 b1 + w5 b2
///   d w5 = w2 b7 - 4/3 w3 b5 + w4 b3 + w5 b4
std::array<TwoForm, 5> structure_rhs(const CartanCoframe& c);

struct StructureCheck {
  std::array<TwoForm, 5> residual;  // d w_i - rhs_i
  bool ok() const;
  /// 1-based indices of the equations with a nonzero residual.
  std::vector<int> failing() const;
};

StructureCheck verify_structure_equations(const CartanCoframe& c);

/// The frame dual to omega, index-reversed: X_k = dual of omega_{6-k}. Tagged Cartan.
/// Throws DegeneracyError if omega is singular.
Frame cartan_frame(const CartanCoframe& c);

/// bar -> (b1 + nu1 w1, b2 + nu2 w1, b3 + nu1 w2, b4 + nu2 w2, b5 + nu1 w3, b6 + nu2 w3,
/// b7 + nu1 w4 + nu2 w5); leaves the structure equations intact.
CartanCoframe prolongation_shift(const CartanCoframe& c, const RationalFunction& nu1, const RationalFunction& nu2);

/// The three identities that hold for Cartan frames.
struct CartanIdentities {
  FiberPolynomial b_forms;  // (b1 + b4)(X2) u4 - (b1 + b4)(X1) u5
  FiberPolynomial b, b1, pi, alpha3;

  bool b_matches() const { return b_forms == b; }
  bool b1_equals_b() const { return b1 == b; }
  bool pi_relation() const { return pi == Rational(-4, 3) * alpha3; }
  bool ok() const { return b_matches() && b1_equals_b() && pi_relation(); }
};

CartanIdentities cartan_identities(const CartanCoframe& c, const Frame& frame, const AbnormalData& d);

/// The Cartan-side route to the quartic, with each intermediate identity kept for inspection.
struct CartanDensity {
  FiberPolynomial formula;     // A from the moving-frame composition (fundform default)
  FiberPolynomial printed;     // A from the closed printed formula
  FiberPolynomial simplified;  // 1/35 (Theta + h(a1 u4 + a2 u5) - Omega - 6 (a1 u4 + a2 u5) b)
  FiberPolynomial theta_sum;   // Theta + Theta_1
  FiberPolynomial s_route;     // the same through S(W, V1, V2) = V1 W(V2) - V2 W(V1)
  FiberPolynomial b_poly;      // dW on the (X5,X2), (X1,X5) + (X2,X4), (X4,X1) pattern
  FiberPolynomial xi_poly;     // Xi on the same pattern
  std::array<RationalFunction, 5> a;  // A_1..A_5 from b_poly + xi_poly

  bool cancellation() const { return simplified == formula; }
  bool theta_route() const { return theta_sum == s_route; }
  bool difference() const { return Rational(35) * formula - b_poly == xi_poly; }
};

CartanDensity density_simplified(const CartanCoframe& c);

/// -(A1 u4^4 - 4 A2 u4^3 u5 + 6 A3 u4^2 u5^2 - 4 A4 u4 u5^3 + A5 u5^4).
FiberPolynomial cartan_quartic_polynomial(const std::array<RationalFunction, 5>& a);
/// Inverse of cartan_quartic_polynomial; throws Error unless p is a quartic in (u4, u5).
std::array<RationalFunction, 5> extract_cartan_coefficients(const FiberPolynomial& p);

struct QuarticReport {
  std::array<Rational, 5> a{};  // A_1..A_5 at the point
  QuarticForm cartan;           // F on v = v1 Y1 + v2 Y2
  QuarticForm tangential;       // the tangential fundamental form on the same basis
  std::array<Rational, 5> residual{};  // cartan + 35 tangential
  bool ok() const;
};

/// F_q against -35 times the tangential form on the basis (X1(q), X2(q)) of the Cartan frame.
/// The tangential form is computed from scratch by fundform on (X1, X2).
QuarticReport compare_theorem(const CartanCoframe& c, std::span<const Rational> point);
/// Same comparison on the basis Y1 = m0 X1 + m1 X2, Y2 = m2 X1 + m3 X2 (constant m).
QuarticReport compare_theorem(const CartanCoframe& c, std::span<const Rational> point,
                              const std::array<Rational, 4>& m);
/// Reuses an already computed density.
QuarticReport compare_theorem(const CartanDensity& density, const Frame& frame, std::span<const Rational> point);

}  // namespace dist235
