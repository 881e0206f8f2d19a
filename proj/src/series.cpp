#include "dist235/series.hpp"

#include <sstream>

namespace dist235 {

JetSeries compose(const JetSeries& a, const JetSeries& b) {
  if (!is_zero(b[0])) throw Error("inner series of a composition must vanish at 0");
  int n = std::min(a.order(), b.order());
  JetSeries r = JetSeries::constant(n, a[n]);
  JetSeries inner = b.truncate(n);
  for (int k = n - 1; k >= 0; --k) {
    r = r * inner;
    r[0] += a[k];
  }
  return r;
}

std::pair<int, JetSeries> laurent_split(const JetSeries& a) {
  auto v = a.valuation();
  if (!v) throw OrderError("series vanishes to its full order; valuation unknown");
  return {*v, a.shift_down(*v)};
}

JetSeries rational_power(const JetSeries& f, const Rational& e) {
  if (f[0] != 1) throw Error("rational power needs constant term 1");
  int n = f.order();
  JetSeries g(n);
  g[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational acc(0);
    for (int k = 1; k <= m; ++k) {
      if (is_zero(f[k])) continue;
      acc += ((e + 1) * k - m) * f[k] * g[m - k];
    }
    g[m] = acc / m;
  }
  return g;
}

BiSeries expand_shifted(const JetSeries& f, int tau_order, int s_order) {
  if (f.order() < tau_order + s_order) throw OrderError("series too short for bivariate expansion");
  BiSeries b(s_order, JetSeries(tau_order));
  for (int j = 0; j <= s_order; ++j) {
    // binomial(i + j, i) built incrementally in i
    Integer binom = 1;
    for (int i = 0; i <= tau_order; ++i) {
      if (i > 0) {
        binom *= (i + j);
        binom /= i;
      }
      b[j][i] = f[i + j] * Rational(binom);
    }
  }
  return b;
}

BiSeries lift_tau(const JetSeries& f, int s_order) {
  BiSeries b(s_order, JetSeries(f.order()));
  b[0] = f;
  return b;
}

std::string to_string(const JetSeries& s, const std::string& var) {
  std::ostringstream out;
  bool first = true;
  for (int k = 0; k <= s.order(); ++k) {
    if (is_zero(s[k])) continue;
    if (!first) out << " + ";
    first = false;
    out << s[k].get_str();
    if (k == 1) out << "*" << var;
    if (k > 1) out << "*" << var << "^" << k;
  }
  if (first) out << "0";
  out << " + O(" << var << "^" << s.order() + 1 << ")";
  return out.str();
}

}  // namespace dist235
