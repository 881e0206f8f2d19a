#include "dist235/multijet.hpp"

#include <algorithm>
#include <vector>

#include "dist235/errors.hpp"

namespace dist235 {

Polynomial jet_multiply(const Polynomial& a, const Polynomial& b, unsigned order) {
  std::vector<Polynomial::Term> terms;
  for (const auto& s : a.terms()) {
    unsigned ds = s.mono.degree();
    if (ds > order) continue;
    for (const auto& t : b.terms()) {
      if (ds + t.mono.degree() > order) continue;
      terms.push_back({s.mono * t.mono, s.coeff * t.coeff});
    }
  }
  return Polynomial::from_terms(a.nvars(), std::move(terms));
}

Polynomial jet_at_point(const RationalFunction& f, std::span<const Rational> point, unsigned order) {
  Polynomial num = f.numerator().shift(point).truncate(order);
  if (f.is_polynomial()) {
    Rational d = f.denominator().constant_term();
    return num * (1 / d);
  }
  Polynomial den = f.denominator().shift(point).truncate(order);
  Rational d0 = den.constant_term();
  if (is_zero(d0)) throw PoleError("rational function has a pole at the expansion point");
  // 1/den = (1/d0) * sum_k (-e)^k with e = den/d0 - 1, which has no constant term.
  Polynomial minus_e = -(den * (1 / d0) - Polynomial::constant(den.nvars(), Rational(1)));
  Polynomial inv = Polynomial::constant(den.nvars(), Rational(1));
  Polynomial power = inv;
  for (unsigned k = 1; k <= order; ++k) {
    power = jet_multiply(power, minus_e, order);
    if (power.is_zero()) break;
    inv += power;
  }
  return jet_multiply(num, inv, order) * (1 / d0);
}

JetSeries evaluate_on_series(const Polynomial& p, std::span<const JetSeries> args) {
  if (args.size() != p.nvars()) throw Error("evaluate_on_series: wrong number of arguments");
  int order = args.front().order();
  for (const auto& a : args) order = std::min(order, a.order());
  JetSeries r(order);
  // powers[v][e] = args[v]^e, filled on demand
  std::vector<std::vector<JetSeries>> powers(args.size());
  auto power = [&](std::size_t v, unsigned e) -> const JetSeries& {
    auto& pv = powers[v];
    if (pv.empty()) pv.push_back(JetSeries::constant(order, Rational(1)));
    while (pv.size() <= e) pv.push_back(pv.back() * args[v].truncate(order));
    return pv[e];
  };
  for (const auto& t : p.terms()) {
    JetSeries m = JetSeries::constant(order, t.coeff);
    for (std::size_t v = 0; v < args.size(); ++v)
      if (t.mono.exp[v] != 0) m = m * power(v, t.mono.exp[v]);
    r += m;
  }
  return r;
}

JetSeries evaluate_on_series(const RationalFunction& f, std::span<const JetSeries> args) {
  JetSeries num = evaluate_on_series(f.numerator(), args);
  if (f.is_polynomial()) return num * (1 / f.denominator().constant_term());
  JetSeries den = evaluate_on_series(f.denominator(), args);
  if (is_zero(den[0])) throw PoleError("rational function has a pole along the curve");
  return num * den.inverse();
}

}  // namespace dist235
