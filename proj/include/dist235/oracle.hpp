#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "dist235/diffgeo.hpp"
#include "dist235/linalg.hpp"
#include "dist235/series.hpp"

namespace dist235 {

struct OracleOptions {
  int t_order = 12;
  int tau_order = 5;
};

/// Covector over q with u1 = u2 = u3 = 0 and the given (u4, u5) relative to the frame.
struct CovectorPoint {
  std::vector<Rational> q;
  Rational u4, u5;
};

/// The characteristic flow in canonical coordinates z = (x, p) of T*M, 10 variables.
struct LiftedSystem {
  std::array<RationalFunction, 5> u;  // u_i = p . X_i
  std::array<std::vector<RationalFunction>, 5> lift;  // H(u_i), H(f) = (df/dp, -df/dx)
  std::vector<RationalFunction> h;                    // u4 H(u2) - u5 H(u1)
  Matrix<RationalFunction> jacobian;  // dh/dz
  /// Basis of the plane field J along the annihilator of D^2: lifts of X1, X2 tangent
  /// to the annihilator, then the vertical vectors omega^4, omega^5.
  std::array<std::vector<RationalFunction>, 4> jacobi;
};

LiftedSystem lifted_system(const Frame& frame);

/// sigma(v, w) = sum_i v^x_i w^p_i - v^p_i w^x_i.
Rational symplectic_pairing(std::span<const Rational> v, std::span<const Rational> w);

/// Sign self-test at z: sigma(H(u_i), V) = du_i(V) for i = 1..5 and every coordinate vector V.
bool hamiltonian_convention_holds(const LiftedSystem& sys, std::span<const Rational> z);

/// Representatives Z_1..Z_4 (columns) of W = e^angle / span(h, e) at the covector.
struct ReducedSpace {
  std::vector<Rational> z0;
  RationalMatrix reps;  // 10 x 4
  RationalMatrix gram;  // sigma(Z_k, Z_l), invertible
};

ReducedSpace reduced_space(const LiftedSystem& sys, const Frame& frame, const CovectorPoint& pt);

/// Jacobi curve in a Darboux chart of W: Lambda(t) = {(a, S_t a)} with S_0 = 0 and the
/// symplectic form b.a' - a.b'. The chart is oriented so that dS/dt is nonnegative.
struct JacobiChart {
  SeriesMatrix s{2, 2, JetSeries(0)};
  int velocity_sign = 0;  // sign of the velocity before orientation
  int velocity_rank = 0;  // rank of dS/dt at t = 0
  /// Oriented Darboux coordinates (4 x 10) of tangent vectors at the covector; meaningful on
  /// the skew complement of e in the annihilator of D^2, modulo span(h, e).
  RationalMatrix darboux{4, 10, Rational(0)};
};

JacobiChart jacobi_chart(const Frame& frame, const CovectorPoint& pt, const OracleOptions& opt = {});

/// Order of vanishing of det S_t at t = 0.
int weight(const SeriesMatrix& s);
int velocity_rank(const SeriesMatrix& s);
/// Replaces S by -S if needed so that dS/dt(0) is nonnegative; returns the original sign.
int orient(SeriesMatrix& s);

/// Darboux coordinates (a1, a2, b1, b2) of a vector of W as a jet in the curve parameter.
using WVector = std::array<JetSeries, 4>;

/// Canonical moving frame along a rank-1, weight-4 curve. e1, e2 are the leading
/// coefficients of w(t, tau) = (S_t - S_tau)^{-1} nu(t) with dS = nu nu^T;
/// f is the completion from the derivative curve and f_vertical the completion
/// dual to e inside the vertical plane a = 0.
struct CanonicalFrame {
  std::array<WVector, 2> e, f, f_vertical;
};

CanonicalFrame canonical_frame(const SeriesMatrix& s, int tau_order);

/// C with v_i' = sum_j C_ij v_j.
SeriesMatrix structure_matrix(const std::array<WVector, 4>& frame);

struct StructureReadout {
  std::vector<std::string> mismatches;  // entries violating the expected pattern
  JetSeries rho{0}, a{0};
  bool ok() const { return mismatches.empty(); }
};

/// Reads rho and A off the structure matrix of (e1, e2, f1, f2) built from the derivative curve.
StructureReadout read_normal_form(const SeriesMatrix& c);
/// Reads a21, a22, a31, a41, a42 off the structure matrix of any isotropic completion dual to
/// (e1, e2) and evaluates the moving-frame expressions for rho and A.
StructureReadout read_moving_frame(const SeriesMatrix& c);

/// G(s, tau) = g(tau + s, tau) with g(t0, t1) = tr(M dS(t0) M dS(t1)) - k/(t0 - t1)^2,
/// M = (S(t0) - S(t1))^{-1}. Throws ConsistencyError if g is not smooth on the diagonal.
BiSeries g_function(const SeriesMatrix& s, int k, int tau_order);
/// g(0, t) = G(-t, t).
JetSeries g_from_origin(const BiSeries& g);
/// S(phi) = phi'''/(2 phi') - 3/4 (phi''/phi')^2.
JetSeries schwarzian(const JetSeries& phi);
/// Solution of phi'^2 rho(phi) + k/3 S(phi) = 0 with phi(0) = 0, phi'(0) = 1, phi''(0) = 0.
JetSeries projective_parameter(const JetSeries& rho, int k);
/// A(0) = 1/2 d^2/dt1^2 g(0, t1) at 0 after passing to the projective parameter.
Rational projective_density(const BiSeries& g, int k);

/// Residuals of the reparametrization rules for S o phi (phi(0) = 0, phi'(0) > 0):
/// g~(t, t) - phi'^2 g(phi, phi) - k/3 S(phi) and
/// g~(0, t) - phi'(0) phi'(t) g(0, phi(t)) - k (phi'(0) phi'(t) / phi(t)^2 - 1/t^2).
struct ReparametrizationCheck {
  JetSeries diagonal, row;
  bool ok() const { return diagonal.is_zero() && row.is_zero(); }
};

ReparametrizationCheck check_reparametrization(const SeriesMatrix& s, int k, const JetSeries& phi, int tau_order = 2);

struct OracleReport {
  int weight = 0;
  int velocity_rank = 0;
  int velocity_sign = 0;
  Rational rho_frame, a_frame;    // derivative-curve normal form
  Rational rho_moving, a_moving;  // moving-frame coefficients of the vertical completion
  Rational rho_g, a_projective;   // generating function and projective reparametrization
  std::vector<std::string> issues;

  bool consistent() const;
  const Rational& rho() const { return rho_g; }
  const Rational& a() const { return a_projective; }
};

/// Runs every path on the Jacobi curve of the covector. Never throws on disagreement;
/// check consistent().
OracleReport run_oracle(const Frame& frame, const CovectorPoint& pt, const OracleOptions& opt = {});

/// Fundamental form density at a covector, throwing ConsistencyError if the internal paths disagree.
Rational oracle_density(const Frame& frame, const CovectorPoint& pt, const OracleOptions& opt = {});

}  // namespace dist235
