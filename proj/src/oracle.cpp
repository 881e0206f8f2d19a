#include "dist235/oracle.hpp"

#include <gmp.h>

#include <sstream>

#include "dist235/errors.hpp"
#include "dist235/fundform.hpp"
#include "dist235/multijet.hpp"

namespace dist235 {

namespace {

constexpr std::size_t kBase = 5;
constexpr std::size_t kPhase = 10;

RationalFunction zero10() { return RationalFunction(kPhase); }

JetSeries scalar(int order, const Rational& c) { return JetSeries::constant(order, c); }

/// sqrt of a positive rational that is a perfect square, or nothing.
bool exact_sqrt(const Rational& r, Rational& out) {
  if (sgn(r) <= 0) return false;
  Integer n = r.get_num(), d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  out = Rational(sn, sd);
  out.canonicalize();
  return true;
}

/// Basis of the null space of a rational matrix.
std::vector<std::vector<Rational>> null_space(RationalMatrix a) {
  std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!is_zero(a(i, c))) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = 0; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t column_rank(const std::vector<std::vector<Rational>>& vs) {
  if (vs.empty()) return 0;
  RationalMatrix m(vs.front().size(), vs.size(), Rational(0));
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < vs[j].size(); ++i) m(i, j) = vs[j][i];
  return rank(m);
}

std::vector<Rational> evaluate_all(const std::vector<RationalFunction>& fs, std::span<const Rational> z) {
  std::vector<Rational> out;
  for (const auto& f : fs) out.push_back(f.evaluate(z));
  return out;
}

bool jets_equal(const JetSeries& a, const JetSeries& b) {
  int n = std::min(a.order(), b.order());
  for (int k = 0; k <= n; ++k)
    if (a[k] != b[k]) return false;
  return true;
}

SeriesMatrix derivative(const SeriesMatrix& m) {
  return m.map([](const JetSeries& x) { return x.derivative(); });
}

JetSeries sqrt_jet(const JetSeries& p) {
  Rational r0;
  if (!exact_sqrt(p[0], r0))
    throw ConsistencyError("velocity of the Jacobi curve is not a rational square at t = 0; Darboux normalization is off");
  return r0 * rational_power(p * (1 / p[0]), Rational(1, 2));
}

/// nu with dS = nu nu^T; dS must be positive semidefinite of rank 1 at every order.
std::array<JetSeries, 2> velocity_factor(const SeriesMatrix& sd) {
  int i = !is_zero(sd(0, 0)[0]) ? 0 : 1;
  int j = 1 - i;
  if (is_zero(sd(i, i)[0])) throw DegeneracyError("velocity of the Jacobi curve vanishes at t = 0");
  std::array<JetSeries, 2> nu{JetSeries(0), JetSeries(0)};
  nu[i] = sqrt_jet(sd(i, i));
  nu[j] = sd(i, j) * nu[i].inverse();
  if (!jets_equal(sd(j, j), nu[j] * nu[j]))
    throw ConsistencyError("velocity of the Jacobi curve has rank above 1 along the curve");
  return nu;
}

struct ShiftedChart {
  std::array<std::array<BiSeries, 2>, 2> adj;  // adj((S(tau + s) - S(tau)) / s)
  BiSeries delta;                              // det((S(tau + s) - S(tau)) / s) / s^(k - 2)
};

ShiftedChart shifted_chart(const SeriesMatrix& s, int k, int tau_order) {
  int n = s(0, 0).order();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) n = std::min(n, s(i, j).order());
  int s_order = n - tau_order;
  if (s_order < 1) throw OrderError("curve jet too short for the requested tau order");
  std::array<std::array<BiSeries, 2>, 2> d1{{{BiSeries(0, JetSeries(0)), BiSeries(0, JetSeries(0))},
                                             {BiSeries(0, JetSeries(0)), BiSeries(0, JetSeries(0))}}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      d1[i][j] = (expand_shifted(s(i, j), tau_order, s_order) - lift_tau(s(i, j).truncate(tau_order), s_order))
                     .shift_down(1);
  ShiftedChart c{{{{d1[1][1], -d1[0][1]}, {-d1[1][0], d1[0][0]}}}, BiSeries(0, JetSeries(0))};
  BiSeries det = d1[0][0] * d1[1][1] - d1[0][1] * d1[1][0];
  c.delta = det.shift_down(k - 2);
  if (!is_unit(c.delta[0][0])) throw ConsistencyError("weight of the curve is not constant near t = 0");
  return c;
}

WVector make_vector(const JetSeries& a1, const JetSeries& a2, const JetSeries& b1, const JetSeries& b2) {
  return {a1, a2, b1, b2};
}

}  // namespace

Rational symplectic_pairing(std::span<const Rational> v, std::span<const Rational> w) {
  Rational s(0);
  for (std::size_t i = 0; i < kBase; ++i) s += v[i] * w[kBase + i] - v[kBase + i] * w[i];
  return s;
}

bool hamiltonian_convention_holds(const LiftedSystem& sys, std::span<const Rational> z) {
  for (std::size_t i = 0; i < kBase; ++i) {
    std::vector<Rational> lift = evaluate_all(sys.lift[i], z);
    for (std::size_t b = 0; b < kPhase; ++b) {
      std::vector<Rational> v(kPhase, Rational(0));
      v[b] = 1;
      if (symplectic_pairing(lift, v) != sys.u[i].derivative(b).evaluate(z)) return false;
    }
  }
  return true;
}

LiftedSystem lifted_system(const Frame& frame) {
  if (frame.dim() != kBase) throw Error("lifted dynamics needs a frame on a 5-manifold");
  Coframe coframe = dual_coframe(frame);
  std::array<std::vector<RationalFunction>, 5> x;  // X_i^j in 10 variables
  std::array<std::vector<RationalFunction>, 5> w;  // omega^i_j in 10 variables
  for (std::size_t i = 0; i < kBase; ++i)
    for (std::size_t j = 0; j < kBase; ++j) {
      x[i].push_back(frame.fields[i][j].extend(kPhase));
      w[i].push_back(coframe[i][j].extend(kPhase));
    }

  LiftedSystem sys{{zero10(), zero10(), zero10(), zero10(), zero10()},
                   {},
                   {},
                   Matrix<RationalFunction>(kPhase, kPhase, zero10()),
                   {}};
  for (std::size_t i = 0; i < kBase; ++i) {
    RationalFunction ui = zero10();
    for (std::size_t j = 0; j < kBase; ++j) ui += RationalFunction::variable(kPhase, kBase + j) * x[i][j];
    sys.u[i] = ui;
  }
  // H(u_i) = (X_i, -d(p . X_i)/dx)
  auto hamiltonian = [&](std::size_t i) {
    std::vector<RationalFunction> v;
    for (std::size_t j = 0; j < kBase; ++j) v.push_back(x[i][j]);
    for (std::size_t j = 0; j < kBase; ++j) v.push_back(-sys.u[i].derivative(j));
    return v;
  };
  for (std::size_t i = 0; i < kBase; ++i) sys.lift[i] = hamiltonian(i);
  for (std::size_t a = 0; a < kPhase; ++a) sys.h.push_back(sys.u[3] * sys.lift[1][a] - sys.u[4] * sys.lift[0][a]);
  for (std::size_t a = 0; a < kPhase; ++a)
    for (std::size_t b = 0; b < kPhase; ++b) sys.jacobian(a, b) = sys.h[a].derivative(b);

  for (std::size_t a = 0; a < 2; ++a) {
    std::vector<RationalFunction> v(kPhase, zero10());
    for (std::size_t j = 0; j < kBase; ++j) v[j] = x[a][j];
    // The p-part cancels the change of u1, u2, u3 along X_a so the lift stays in the annihilator.
    for (std::size_t i = 0; i < 3; ++i) {
      RationalFunction xa_ui = zero10();
      for (std::size_t m = 0; m < kBase; ++m) xa_ui += x[a][m] * sys.u[i].derivative(m);
      for (std::size_t j = 0; j < kBase; ++j) v[kBase + j] -= xa_ui * w[i][j];
    }
    sys.jacobi[a] = std::move(v);
  }
  for (std::size_t i = 3; i < 5; ++i) {
    std::vector<RationalFunction> v(kPhase, zero10());
    for (std::size_t j = 0; j < kBase; ++j) v[kBase + j] = w[i][j];
    sys.jacobi[i - 1] = std::move(v);
  }
  return sys;
}

ReducedSpace reduced_space(const LiftedSystem& sys, const Frame& frame, const CovectorPoint& pt) {
  if (pt.q.size() != kBase) throw Error("base point needs 5 coordinates");
  if (is_zero(pt.u4) && is_zero(pt.u5)) throw DegeneracyError("covector (u4, u5) = (0, 0) is not abnormal data");
  frame.check_invertible_at(pt.q);
  Coframe coframe = dual_coframe(frame);
  ReducedSpace rs{std::vector<Rational>(kPhase, Rational(0)), RationalMatrix(kPhase, 4, Rational(0)),
                  RationalMatrix(4, 4, Rational(0))};
  for (std::size_t j = 0; j < kBase; ++j) {
    rs.z0[j] = pt.q[j];
    rs.z0[kBase + j] = pt.u4 * coframe[3][j].evaluate(pt.q) + pt.u5 * coframe[4][j].evaluate(pt.q);
  }

  // e^angle inside the tangent space of the annihilator: du_i(Z) = 0 (i = 1..3), sigma(e, Z) = 0.
  RationalMatrix constraints(4, kPhase, Rational(0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t b = 0; b < kPhase; ++b) constraints(i, b) = sys.u[i].derivative(b).evaluate(rs.z0);
  for (std::size_t j = 0; j < kBase; ++j) constraints(3, j) = -rs.z0[kBase + j];
  auto kernel = null_space(constraints);
  if (kernel.size() != 6) throw DegeneracyError("annihilator of D^2 is not a smooth 7-manifold at the covector");

  std::vector<Rational> h0 = evaluate_all(sys.h, rs.z0);
  std::vector<Rational> e0(kPhase, Rational(0));
  for (std::size_t j = 0; j < kBase; ++j) e0[kBase + j] = rs.z0[kBase + j];
  for (const auto* v : {&h0, &e0}) {
    RationalMatrix col(kPhase, 1, Rational(0));
    for (std::size_t b = 0; b < kPhase; ++b) col(b, 0) = (*v)[b];
    RationalMatrix image = constraints * col;
    for (std::size_t i = 0; i < 4; ++i)
      if (!is_zero(image(i, 0)))
        throw DegeneracyError("characteristic field is not tangent to the annihilator of D^2 for this frame");
  }
  std::vector<std::vector<Rational>> chosen{h0, e0};
  if (column_rank(chosen) != 2) throw DegeneracyError("characteristic field vanishes at the covector");
  std::size_t filled = 0;
  for (const auto& v : kernel) {
    if (filled == 4) break;
    chosen.push_back(v);
    if (column_rank(chosen) == chosen.size()) {
      for (std::size_t b = 0; b < kPhase; ++b) rs.reps(b, filled) = v[b];
      ++filled;
    } else {
      chosen.pop_back();
    }
  }
  if (filled != 4) throw ConsistencyError("could not complete span(h, e) inside the skew complement of e");
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = 0; l < 4; ++l) {
      std::vector<Rational> zk(kPhase), zl(kPhase);
      for (std::size_t b = 0; b < kPhase; ++b) {
        zk[b] = rs.reps(b, k);
        zl[b] = rs.reps(b, l);
      }
      rs.gram(k, l) = symplectic_pairing(zk, zl);
    }
  if (rank(rs.gram) != 4) throw ConsistencyError("reduced symplectic form is degenerate");
  return rs;
}

JacobiChart jacobi_chart(const Frame& frame, const CovectorPoint& pt, const OracleOptions& opt) {
  int n = opt.t_order;
  if (n < 2) throw OrderError("t order must be at least 2");
  LiftedSystem sys = lifted_system(frame);
  ReducedSpace rs = reduced_space(sys, frame, pt);

  // Trajectory by coefficient recursion: z_k is exact to order k.
  std::vector<JetSeries> z;
  for (std::size_t b = 0; b < kPhase; ++b) z.push_back(scalar(0, rs.z0[b]));
  for (int k = 1; k <= n; ++k) {
    std::vector<JetSeries> next;
    for (std::size_t b = 0; b < kPhase; ++b) next.push_back(evaluate_on_series(sys.h[b], z).integral(rs.z0[b]));
    z = std::move(next);
  }
  for (std::size_t i = 0; i < 3; ++i)
    if (!evaluate_on_series(sys.u[i], z).is_zero())
      throw DegeneracyError("characteristic trajectory leaves the annihilator of D^2");

  // Variational equation zeta' = J zeta, coefficient by coefficient.
  std::vector<std::vector<JetSeries>> jac(kPhase);
  for (std::size_t a = 0; a < kPhase; ++a)
    for (std::size_t b = 0; b < kPhase; ++b)
      jac[a].push_back(evaluate_on_series(sys.jacobian(a, b), z));
  std::vector<RationalMatrix> zeta{rs.reps};
  for (int m = 0; m < n; ++m) {
    RationalMatrix next(kPhase, 4, Rational(0));
    for (int k = 0; k <= m; ++k) {
      RationalMatrix jk(kPhase, kPhase, Rational(0));
      for (std::size_t a = 0; a < kPhase; ++a)
        for (std::size_t b = 0; b < kPhase; ++b) jk(a, b) = jac[a][b][k];
      next = next + jk * zeta[m - k];
    }
    zeta.push_back(next.map([m](const Rational& x) { return x / (m + 1); }));
  }
  auto zeta_series = [&](std::size_t b, std::size_t k) {
    JetSeries s(n);
    for (int m = 0; m <= n; ++m) s[m] = zeta[m](b, k);
    return s;
  };

  // Coordinates of the Jacobi vectors: c_k(v) = sigma(v, zeta_k(t)), then a = G^{-T} c.
  SeriesMatrix c(4, 4, JetSeries(n));
  for (std::size_t a = 0; a < 4; ++a) {
    std::vector<JetSeries> v;
    for (std::size_t b = 0; b < kPhase; ++b) v.push_back(evaluate_on_series(sys.jacobi[a][b], z));
    for (std::size_t k = 0; k < 4; ++k) {
      JetSeries s(n);
      for (std::size_t j = 0; j < kBase; ++j)
        s += v[j] * zeta_series(kBase + j, k) - v[kBase + j] * zeta_series(j, k);
      c(k, a) = s;
    }
  }
  RationalMatrix gram = rs.gram;
  RationalMatrix ginv_t = inverse(gram, Rational(1)).transpose();
  SeriesMatrix y(4, 4, JetSeries(n));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t k = 0; k < 4; ++k) y(i, a) += c(k, a) * ginv_t(i, k);

  auto form = [&gram](const std::vector<JetSeries>& v, const std::vector<JetSeries>& w) {
    JetSeries s(std::min(v[0].order(), w[0].order()));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (!is_zero(gram(i, j))) s += (v[i] * w[j]) * gram(i, j);
    return s;
  };
  auto column = [&y](std::size_t a) {
    std::vector<JetSeries> v;
    for (std::size_t i = 0; i < 4; ++i) v.push_back(y(i, a));
    return v;
  };

  std::vector<std::size_t> picked;
  std::vector<std::vector<Rational>> at0;
  for (std::size_t a = 0; a < 4 && picked.size() < 2; ++a) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < 4; ++i) v.push_back(y(i, a)[0]);
    at0.push_back(v);
    if (column_rank(at0) == at0.size()) {
      picked.push_back(a);
    } else {
      at0.pop_back();
    }
  }
  if (picked.size() != 2) throw DegeneracyError("Jacobi subspace at t = 0 is not 2-dimensional");
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b)
      if (!form(column(a), column(b)).is_zero())
        throw ConsistencyError("Jacobi subspaces are not Lagrangian in the reduced space");

  // Darboux basis: E = Lambda(0), F dual to E and isotropic.
  auto pair0 = [&gram](const std::vector<Rational>& v, const std::vector<Rational>& w) {
    Rational s(0);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) s += v[i] * gram(i, j) * w[j];
    return s;
  };
  std::array<std::vector<Rational>, 2> e{at0[0], at0[1]}, f;
  bool found = false;
  for (std::size_t m1 = 0; m1 < 4 && !found; ++m1)
    for (std::size_t m2 = m1 + 1; m2 < 4 && !found; ++m2) {
      std::array<std::vector<Rational>, 2> k{std::vector<Rational>(4, Rational(0)),
                                             std::vector<Rational>(4, Rational(0))};
      k[0][m1] = 1;
      k[1][m2] = 1;
      RationalMatrix p(2, 2, Rational(0));
      for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t j = 0; j < 2; ++j) p(l, j) = pair0(k[l], e[j]);
      if (is_zero(det2(p))) continue;
      RationalMatrix r = inverse(p, Rational(1));
      for (std::size_t i = 0; i < 2; ++i) {
        f[i].assign(4, Rational(0));
        for (std::size_t l = 0; l < 2; ++l)
          for (std::size_t b = 0; b < 4; ++b) f[i][b] += r(i, l) * k[l][b];
      }
      found = true;
    }
  if (!found) throw ConsistencyError("no Darboux completion of the initial Jacobi subspace");
  Rational fix = -pair0(f[0], f[1]);
  for (std::size_t b = 0; b < 4; ++b) f[1][b] += fix * e[0][b];

  auto lift = [n](const std::vector<Rational>& v) {
    std::vector<JetSeries> s;
    for (const auto& x : v) s.push_back(scalar(n, x));
    return s;
  };
  SeriesMatrix am(2, 2, JetSeries(n)), bm(2, 2, JetSeries(n));
  for (std::size_t j = 0; j < 2; ++j) {
    auto yj = column(picked[j]);
    for (std::size_t i = 0; i < 2; ++i) {
      am(i, j) = form(lift(f[i]), yj);
      bm(i, j) = form(yj, lift(e[i]));
    }
  }
  JacobiChart chart;
  chart.s = bm * inverse(am, scalar(n, Rational(1)));
  if (!jets_equal(chart.s(0, 1), chart.s(1, 0)) || chart.s(0, 1).order() != chart.s(1, 0).order())
    throw ConsistencyError("chart of the Jacobi curve is not symmetric");
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (!is_zero(chart.s(i, j)[0])) throw ConsistencyError("chart does not pass through the origin");
  chart.velocity_rank = velocity_rank(chart.s);
  chart.velocity_sign = orient(chart.s);

  // v -> c_k = sigma(v, Z_k) -> coefficients G^{-T} c -> (sigma(F_i, .), sign * sigma(., E_i))
  RationalMatrix to_c(4, kPhase, Rational(0));
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t j = 0; j < kBase; ++j) {
      to_c(k, j) = rs.reps(kBase + j, k);
      to_c(k, kBase + j) = -rs.reps(j, k);
    }
  RationalMatrix coeffs = ginv_t * to_c;
  RationalMatrix dual(4, 4, Rational(0));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t m = 0; m < 4; ++m) {
        dual(i, b) += f[i][m] * gram(m, b);
        dual(2 + i, b) += chart.velocity_sign * gram(b, m) * e[i][m];
      }
  chart.darboux = dual * coeffs;
  return chart;
}

int weight(const SeriesMatrix& s) {
  auto v = det2(s).valuation();
  if (!v) throw OrderError("det S vanishes to the available order");
  return *v;
}

int velocity_rank(const SeriesMatrix& s) {
  RationalMatrix d(2, 2, Rational(0));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) d(i, j) = s(i, j)[1];
  return static_cast<int>(rank(d));
}

int orient(SeriesMatrix& s) {
  Rational tr = s(0, 0)[1] + s(1, 1)[1];
  if (is_zero(tr)) throw DegeneracyError("velocity of the curve has zero trace at t = 0");
  if (sgn(tr) > 0) return 1;
  s = s.map([](const JetSeries& x) { return -x; });
  return -1;
}

CanonicalFrame canonical_frame(const SeriesMatrix& s, int tau_order) {
  if (tau_order < 1) throw OrderError("tau order must be positive");
  auto nu = velocity_factor(derivative(s));
  ShiftedChart sc = shifted_chart(s, 4, tau_order);
  BiSeries dinv = sc.delta.inverse();

  std::array<BiSeries, 2> w{BiSeries(0, JetSeries(0)), BiSeries(0, JetSeries(0))};
  for (std::size_t k = 0; k < 2; ++k) {
    int nu_s = nu[k].order() - tau_order;
    if (nu_s < 3) throw OrderError("curve jet too short for the canonical frame");
    BiSeries sum = sc.adj[k][0] * expand_shifted(nu[0], tau_order, nu_s) +
                   sc.adj[k][1] * expand_shifted(nu[1], tau_order, nu_s);
    // adj(dS) nu = 0, so the pole of w is of order 2
    w[k] = sum.shift_down(1) * dinv;
  }
  if (w[0].order() < 1 || dinv.order() < 3) throw OrderError("curve jet too short for the canonical frame");

  SeriesMatrix q(2, 2, JetSeries(tau_order));  // column i: e_i in the basis (E_1, E_2) of Lambda(tau)
  for (std::size_t k = 0; k < 2; ++k) {
    q(k, 0) = w[k][0];
    q(k, 1) = w[k][1];
  }
  SeriesMatrix m0(2, 2, JetSeries(tau_order));
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l) m0(k, l) = (sc.adj[k][l] * dinv)[3];

  SeriesMatrix st = s.map([tau_order](const JetSeries& x) { return x.truncate(tau_order); });
  JetSeries one = scalar(tau_order, Rational(1)), zero(tau_order);
  auto graph = [&st](const JetSeries& a1, const JetSeries& a2) {
    return std::array<JetSeries, 2>{st(0, 0) * a1 + st(0, 1) * a2, st(1, 0) * a1 + st(1, 1) * a2};
  };

  CanonicalFrame cf;
  for (std::size_t i = 0; i < 2; ++i) {
    auto b = graph(q(0, i), q(1, i));
    cf.e[i] = make_vector(q(0, i), q(1, i), b[0], b[1]);
  }
  std::array<WVector, 2> fhat;
  for (std::size_t k = 0; k < 2; ++k) {
    auto b = graph(m0(0, k), m0(1, k));
    b[k] += one;
    fhat[k] = make_vector(m0(0, k), m0(1, k), b[0], b[1]);
  }
  SeriesMatrix r = inverse(q, one).transpose();
  for (std::size_t i = 0; i < 2; ++i) {
    WVector v{zero, zero, zero, zero};
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t c = 0; c < 4; ++c) v[c] += fhat[k][c] * r(k, i);
    cf.f[i] = v;
    cf.f_vertical[i] = make_vector(zero, zero, r(0, i), r(1, i));
  }
  return cf;
}

SeriesMatrix structure_matrix(const std::array<WVector, 4>& frame) {
  int n = frame[0][0].order();
  for (const auto& v : frame)
    for (const auto& x : v) n = std::min(n, x.order());
  SeriesMatrix p(4, 4, JetSeries(n));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t r = 0; r < 4; ++r) p(r, i) = frame[i][r].truncate(n);
  SeriesMatrix ct = inverse(p, scalar(n, Rational(1))) * derivative(p);
  return ct.transpose();
}

namespace {

struct PatternCheck {
  const SeriesMatrix& c;
  std::vector<std::string>& out;
  void expect(std::size_t i, std::size_t j, const JetSeries& value) {
    if (jets_equal(c(i, j), value)) return;
    std::ostringstream s;
    s << "C[" << i + 1 << "][" << j + 1 << "] = " << to_string(c(i, j), "tau") << ", expected "
      << to_string(value, "tau");
    out.push_back(s.str());
  }
  void expect(std::size_t i, std::size_t j, const Rational& value) { expect(i, j, scalar(c(i, j).order(), value)); }
};

}  // namespace

StructureReadout read_normal_form(const SeriesMatrix& c) {
  StructureReadout r;
  PatternCheck check{c, r.mismatches};
  r.rho = Rational(4) * c(1, 0);
  JetSeries drho = r.rho.derivative();
  check.expect(0, 0, Rational(0));
  check.expect(0, 1, Rational(3));
  check.expect(0, 2, Rational(0));
  check.expect(0, 3, Rational(0));
  check.expect(1, 1, Rational(0));
  check.expect(1, 2, Rational(0));
  check.expect(1, 3, Rational(4));
  check.expect(2, 1, Rational(-7, 16) * drho);
  check.expect(2, 2, Rational(0));
  check.expect(2, 3, Rational(-1, 4) * r.rho);
  check.expect(3, 0, Rational(-7, 16) * drho);
  check.expect(3, 1, Rational(-9, 4) * r.rho);
  check.expect(3, 2, Rational(-3));
  check.expect(3, 3, Rational(0));
  r.a = Rational(36, 35) * (-c(2, 0) + Rational(1, 8) * (r.rho * r.rho) - Rational(1, 16) * drho.derivative());
  return r;
}

StructureReadout read_moving_frame(const SeriesMatrix& c) {
  StructureReadout r;
  PatternCheck check{c, r.mismatches};
  const JetSeries &a21 = c(1, 0), &a22 = c(1, 1), &a31 = c(2, 0), &a41 = c(2, 1), &a42 = c(3, 1);
  check.expect(0, 0, Rational(0));
  check.expect(0, 1, Rational(3));
  check.expect(0, 2, Rational(0));
  check.expect(0, 3, Rational(0));
  check.expect(1, 2, Rational(0));
  check.expect(1, 3, Rational(4));
  check.expect(2, 2, Rational(0));
  check.expect(2, 3, -a21);
  check.expect(3, 0, a41);
  check.expect(3, 2, Rational(-3));
  check.expect(3, 3, -a22);
  auto d = [](const JetSeries& x) { return x.derivative(); };
  auto ra = ricci_and_density(a21, a22, a31, a41, a42, d);
  r.rho = ra.rho;
  r.a = ra.a;
  return r;
}

BiSeries g_function(const SeriesMatrix& s, int k, int tau_order) {
  if (k < 2) throw Error("generating function needs weight at least 2");
  SeriesMatrix sd = derivative(s);
  ShiftedChart sc = shifted_chart(s, k, tau_order);
  int sd_s = sd(0, 0).order() - tau_order;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) sd_s = std::min(sd_s, sd(i, j).order() - tau_order);
  if (sd_s < 1) throw OrderError("curve jet too short for the generating function");
  std::array<std::array<BiSeries, 2>, 2> at_t0{{{BiSeries(0, JetSeries(0)), BiSeries(0, JetSeries(0))},
                                                {BiSeries(0, JetSeries(0)), BiSeries(0, JetSeries(0))}}};
  auto at_t1 = at_t0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      at_t0[i][j] = expand_shifted(sd(i, j), tau_order, sd_s);
      at_t1[i][j] = lift_tau(sd(i, j).truncate(tau_order), sd_s);
    }
  using M2 = std::array<std::array<BiSeries, 2>, 2>;
  auto mul = [](const M2& a, const M2& b) {
    M2 r = a;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
  };
  // (S(t0) - S(t1))^{-1} = adj / (s^(k-1) delta); the sign cancels in the trace.
  M2 prod = mul(mul(sc.adj, at_t0), mul(sc.adj, at_t1));
  BiSeries trace = prod[0][0] + prod[1][1];
  BiSeries d2 = sc.delta * sc.delta;
  BiSeries num = trace - d2.shift_up(2 * k - 4) * Rational(k);
  return num.shift_down(2 * k - 2) * d2.inverse();
}

JetSeries g_from_origin(const BiSeries& g) {
  int n = g.order();
  for (int m = 0; m <= g.order(); ++m) n = std::min(n, m + g[m].order());
  JetSeries r(n);
  for (int m = 0; m <= n; ++m) {
    Rational sign = m % 2 == 0 ? Rational(1) : Rational(-1);
    for (int i = 0; m + i <= n; ++i) r[m + i] += sign * g[m][i];
  }
  return r;
}

JetSeries schwarzian(const JetSeries& phi) {
  JetSeries d1 = phi.derivative();
  JetSeries d2 = d1.derivative();
  JetSeries d3 = d2.derivative();
  JetSeries inv = d1.inverse();
  JetSeries ratio = d2 * inv;
  return Rational(1, 2) * (d3 * inv) - Rational(3, 4) * (ratio * ratio);
}

JetSeries projective_parameter(const JetSeries& rho, int k) {
  int n = rho.order() + 3;
  JetSeries phi = JetSeries::variable(n, Rational(0), Rational(1));
  for (int it = 0; it <= n; ++it) {
    JetSeries d1 = phi.derivative();
    JetSeries d2 = d1.derivative();
    JetSeries ratio = d2 * d1.inverse();
    JetSeries rhs = Rational(2) * d1 *
                    (Rational(-3, k) * (d1 * d1) * compose(rho, phi) + Rational(3, 4) * (ratio * ratio));
    phi = rhs.truncate(n - 3).integral(Rational(0)).integral(Rational(1)).integral(Rational(0));
  }
  return phi;
}

Rational projective_density(const BiSeries& g, int k) {
  JetSeries phi = projective_parameter(g[0], k);
  JetSeries d1 = phi.derivative();
  JetSeries row = g_from_origin(g);
  JetSeries psi = phi.shift_down(1);
  JetSeries pole = (d1 * (psi * psi).inverse() - scalar(d1.order(), Rational(1))).shift_down(2);
  JetSeries total = d1 * compose(row, phi) + Rational(k) * pole;
  if (total.order() < 2) throw OrderError("generating function too short for the projective density");
  return total[2];
}

ReparametrizationCheck check_reparametrization(const SeriesMatrix& s, int k, const JetSeries& phi, int tau_order) {
  if (!is_zero(phi[0]) || sgn(phi[1]) <= 0) throw Error("reparametrization needs phi(0) = 0 and phi'(0) > 0");
  SeriesMatrix st = s.map([&phi](const JetSeries& x) { return compose(x, phi); });
  BiSeries g = g_function(s, k, tau_order);
  BiSeries gt = g_function(st, k, tau_order);
  JetSeries d1 = phi.derivative();
  ReparametrizationCheck c;
  c.diagonal = gt[0] - (d1 * d1) * compose(g[0], phi) - Rational(k, 3) * schwarzian(phi);
  JetSeries psi = phi.shift_down(1);
  JetSeries pole = (phi[1] * d1 * (psi * psi).inverse() - scalar(d1.order(), Rational(1))).shift_down(2);
  c.row = g_from_origin(gt) - phi[1] * d1 * compose(g_from_origin(g), phi) - Rational(k) * pole;
  return c;
}

bool OracleReport::consistent() const {
  return issues.empty() && weight == 4 && velocity_rank == 1;
}

OracleReport run_oracle(const Frame& frame, const CovectorPoint& pt, const OracleOptions& opt) {
  OracleReport rep;
  JacobiChart chart = jacobi_chart(frame, pt, opt);
  rep.weight = weight(chart.s);
  rep.velocity_rank = chart.velocity_rank;
  rep.velocity_sign = chart.velocity_sign;
  if (rep.weight != 4 || rep.velocity_rank != 1) {
    rep.issues.push_back("Jacobi curve has weight " + std::to_string(rep.weight) + " and velocity rank " +
                         std::to_string(rep.velocity_rank) + " (expected 4 and 1)");
    return rep;
  }

  auto record = [&rep](const std::string& path, const StructureReadout& r) {
    for (const auto& m : r.mismatches) rep.issues.push_back(path + ": " + m);
  };
  try {
    CanonicalFrame cf = canonical_frame(chart.s, opt.tau_order);
    StructureReadout normal = read_normal_form(structure_matrix({cf.e[0], cf.e[1], cf.f[0], cf.f[1]}));
    record("derivative-curve frame", normal);
    rep.rho_frame = normal.rho[0];
    rep.a_frame = normal.a[0];
    StructureReadout moving =
        read_moving_frame(structure_matrix({cf.e[0], cf.e[1], cf.f_vertical[0], cf.f_vertical[1]}));
    record("vertical completion", moving);
    rep.rho_moving = moving.rho[0];
    rep.a_moving = moving.a[0];
  } catch (const ConsistencyError& e) {
    rep.issues.push_back(std::string("canonical frame: ") + e.what());
  }
  try {
    BiSeries g = g_function(chart.s, 4, 2);
    rep.rho_g = g[0][0];
    rep.a_projective = projective_density(g, 4);
  } catch (const ConsistencyError& e) {
    rep.issues.push_back(std::string("generating function: ") + e.what());
  }

  if (rep.issues.empty()) {
    if (rep.rho_frame != rep.rho_g || rep.rho_moving != rep.rho_g)
      rep.issues.push_back("Ricci curvature differs between paths: " + rep.rho_frame.get_str() + ", " +
                           rep.rho_moving.get_str() + ", " + rep.rho_g.get_str());
    if (rep.a_frame != rep.a_projective || rep.a_moving != rep.a_projective)
      rep.issues.push_back("density differs between paths: " + rep.a_frame.get_str() + ", " +
                           rep.a_moving.get_str() + ", " + rep.a_projective.get_str());
  }
  return rep;
}

Rational oracle_density(const Frame& frame, const CovectorPoint& pt, const OracleOptions& opt) {
  OracleReport rep = run_oracle(frame, pt, opt);
  if (!rep.consistent()) {
    std::string msg = "oracle paths disagree";
    for (const auto& i : rep.issues) msg += "; " + i;
    throw ConsistencyError(msg);
  }
  return rep.a();
}

}  // namespace dist235
