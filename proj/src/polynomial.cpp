#include "dist235/polynomial.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "dist235/errors.hpp"

namespace dist235 {

bool grlex_greater(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
  return false;
}

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars > kMaxVars) throw Error("too many polynomial variables");
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (!dist235::is_zero(c)) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw Error("variable index out of range");
  Monomial m;
  m.exp[index] = 1;
  return monomial(nvars, m, Rational(1));
}

Polynomial Polynomial::monomial(std::size_t nvars, const Monomial& m, const Rational& c) {
  Polynomial p(nvars);
  if (!dist235::is_zero(c)) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && dist235::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && dist235::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
  return p;
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Rational(0);
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[var]);
  return d;
}

Monomial Polynomial::min_exponents() const {
  Monomial m;
  if (terms_.empty()) return m;
  m = terms_.front().mono;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = std::min(m.exp[i], t.mono.exp[i]);
  return m;
}

namespace {

template <bool Subtract>
std::vector<Polynomial::Term> merge(const std::vector<Polynomial::Term>& a,
                                    const std::vector<Polynomial::Term>& b) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlex_greater(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_greater(b[j].mono, a[i].mono)) {
      out.push_back({b[j].mono, Subtract ? Rational(-b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      Rational c = Subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (!is_zero(c)) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

void check_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) throw Error("polynomials live in different rings");
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_same_ring(*this, other);
  terms_ = merge<false>(terms_, other.terms_);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_same_ring(*this, other);
  terms_ = merge<true>(terms_, other.terms_);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars());
  if (b.size() == 1) {
    Polynomial p(a.nvars());
    p.terms_.reserve(a.size());
    for (const auto& t : a.terms_) p.terms_.push_back({t.mono * b.terms_[0].mono, t.coeff * b.terms_[0].coeff});
    return p;
  }
  if (a.size() == 1) return b * a;
  std::vector<Polynomial::Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) terms.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Polynomial::from_terms(a.nvars(), std::move(terms));
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (dist235::is_zero(c)) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw Error("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.exp[var] == 0) continue;
    Term d{t.mono, t.coeff * t.mono.exp[var]};
    --d.mono.exp[var];
    out.push_back(std::move(d));
  }
  // Differentiation may reorder terms under grlex, so resort.
  return from_terms(nvars_, std::move(out));
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() < nvars_) throw Error("evaluation point has too few coordinates");
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (unsigned e = 0; e < t.mono.exp[i]; ++e) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::extend(std::size_t new_nvars) const {
  if (new_nvars < nvars_) throw Error("cannot shrink polynomial ring");
  Polynomial p(new_nvars);
  p.terms_ = terms_;
  return p;
}

Polynomial Polynomial::truncate(unsigned max_degree) const {
  Polynomial p(nvars_);
  for (const auto& t : terms_)
    if (t.mono.degree() <= max_degree) p.terms_.push_back(t);
  return p;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Polynomial p = *this;
  Rational inv = 1 / terms_.front().coeff;
  return p *= inv;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
  Polynomial p(nvars_);
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!m.divides(t.mono)) throw Error("monomial does not divide polynomial");
    p.terms_.push_back({t.mono / m, t.coeff});
  }
  return p;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    Term s = t;
    s.mono.exp[var] = 0;
    buckets[t.mono.exp[var]].push_back(std::move(s));
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  // Removing one variable from grlex-sorted terms can break the order, so resort.
  for (auto& b : buckets) out.push_back(from_terms(nvars_, std::move(b)));
  return out;
}

Polynomial Polynomial::shift(std::span<const Rational> point) const {
  if (point.size() < nvars_) throw Error("shift point has too few coordinates");
  std::vector<std::vector<Polynomial>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    Polynomial lin = variable(nvars_, i) + constant(nvars_, point[i]);
    powers[i].push_back(constant(nvars_, Rational(1)));
    for (unsigned e = 1; e <= degree_in(i); ++e) powers[i].push_back(powers[i].back() * lin);
  }
  Polynomial result(nvars_);
  for (const auto& t : terms_) {
    Polynomial term = constant(nvars_, t.coeff);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.mono.exp[i] > 0) term *= powers[i][t.mono.exp[i]];
    result += term;
  }
  return result;
}

std::optional<Polynomial> exact_divide(const Polynomial& f, const Polynomial& g) {
  check_same_ring(f, g);
  if (g.is_zero()) throw ZeroDivisionError("division by the zero polynomial");
  const auto& lg = g.leading_term();
  if (g.size() == 1) {
    Polynomial q(f.nvars());
    std::vector<Polynomial::Term> terms;
    for (const auto& t : f.terms()) {
      if (!lg.mono.divides(t.mono)) return std::nullopt;
      terms.push_back({t.mono / lg.mono, t.coeff / lg.coeff});
    }
    return Polynomial::from_terms(f.nvars(), std::move(terms));
  }
  Polynomial r = f;
  std::vector<Polynomial::Term> quotient;
  while (!r.is_zero()) {
    const auto& lr = r.leading_term();
    if (!lg.mono.divides(lr.mono)) return std::nullopt;
    Monomial m = lr.mono / lg.mono;
    Rational c = lr.coeff / lg.coeff;
    quotient.push_back({m, c});
    r -= Polynomial::monomial(f.nvars(), m, c) * g;
  }
  return Polynomial::from_terms(f.nvars(), std::move(quotient));
}

namespace {

Polynomial gcd_nonzero(const Polynomial& f, const Polynomial& g);

Polynomial one_like(const Polynomial& p) { return Polynomial::constant(p.nvars(), Rational(1)); }

/// gcd of the coefficients of f with respect to `var`, folded into `acc`.
Polynomial fold_content(Polynomial acc, const Polynomial& f, std::size_t var) {
  for (const auto& c : f.coefficients_in(var)) {
    if (c.is_zero()) continue;
    acc = acc.is_zero() ? c.monic() : gcd_nonzero(acc, c);
    if (acc.is_constant()) break;
  }
  return acc;
}

Polynomial content_in(const Polynomial& f, std::size_t var) {
  return fold_content(Polynomial(f.nvars()), f, var);
}

Polynomial primitive_part(const Polynomial& f, std::size_t var) {
  Polynomial c = content_in(f, var);
  if (c.is_constant()) return f.monic();
  auto q = exact_divide(f, c);
  if (!q) throw ConsistencyError("content does not divide polynomial");
  return q->monic();
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  unsigned db = b.degree_in(var);
  Polynomial lcb = b.coefficients_in(var).back();
  Polynomial r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    unsigned dr = r.degree_in(var);
    Polynomial lcr = r.coefficients_in(var).back();
    Monomial shift;
    shift.exp[var] = static_cast<std::uint16_t>(dr - db);
    r = lcb * r - lcr * Polynomial::monomial(r.nvars(), shift, Rational(1)) * b;
  }
  return r;
}

using Dense = std::vector<Rational>;

void trim(Dense& p) {
  while (!p.empty() && dist235::is_zero(p.back())) p.pop_back();
}

/// Image of p under x_i -> vals[i] for all i != var, as a dense polynomial in var.
Dense univariate_image(const Polynomial& p, std::size_t var, const std::vector<Rational>& vals) {
  Dense out(p.degree_in(var) + 1, Rational(0));
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (i == var) continue;
      for (unsigned e = 0; e < t.mono.exp[i]; ++e) c *= vals[i];
    }
    out[t.mono.exp[var]] += c;
  }
  trim(out);
  return out;
}

unsigned dense_gcd_degree(Dense a, Dense b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    // a <- a mod b
    while (a.size() >= b.size()) {
      Rational f = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0u : static_cast<unsigned>(a.size() - 1);
}

/// Upper bound for the degree in `var` of gcd(f, g), from univariate images at
/// points where neither leading coefficient in `var` vanishes.
unsigned gcd_degree_bound(const Polynomial& f, const Polynomial& g, std::size_t var) {
  unsigned df = f.degree_in(var), dg = g.degree_in(var);
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<Rational> vals(f.nvars());
    for (std::size_t i = 0; i < vals.size(); ++i)
      vals[i] = Rational(static_cast<long>(3 + 5 * i + 11 * attempt), static_cast<long>(1 + 2 * attempt + i % 3)) *
                ((i + attempt) % 2 ? 1 : -1);
    Dense a = univariate_image(f, var, vals), b = univariate_image(g, var, vals);
    if (a.size() != df + 1 || b.size() != dg + 1) continue;
    return dense_gcd_degree(std::move(a), std::move(b));
  }
  return std::min(df, dg);
}

/// Scales p to integer coefficients with unit content.
Polynomial integer_primitive(const Polynomial& p) {
  Integer den(1), num(0);
  for (const auto& t : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  Polynomial q = p;
  q *= scale;
  return q;
}

Integer integer_content(const Polynomial& p) {
  Integer c(0);
  for (const auto& t : p.terms()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.coeff.get_num_mpz_t());
  return c;
}

Integer max_norm(const Polynomial& p) {
  Integer m(0);
  for (const auto& t : p.terms())
    if (abs(t.coeff.get_num()) > m) m = abs(t.coeff.get_num());
  return m;
}

/// p with x_var -> x, as a polynomial that no longer involves x_var.
Polynomial evaluate_var(const Polynomial& p, std::size_t var, const Integer& x) {
  std::vector<Integer> powers{Integer(1)};
  std::vector<Polynomial::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    unsigned e = t.mono.exp[var];
    while (powers.size() <= e) powers.push_back(powers.back() * x);
    Monomial m = t.mono;
    m.exp[var] = 0;
    terms.push_back({m, t.coeff * Rational(powers[e])});
  }
  return Polynomial::from_terms(p.nvars(), std::move(terms));
}

/// Reads each integer coefficient of h in balanced base x as a polynomial in x_var.
Polynomial interpolate_var(const Polynomial& h, std::size_t var, const Integer& x) {
  Integer half = x / 2;
  std::vector<Polynomial::Term> terms;
  for (const auto& t : h.terms()) {
    Integer c = t.coeff.get_num();
    for (std::uint16_t e = 0; c != 0; ++e) {
      Integer r = c % x;  // sign follows c
      if (r > half) r -= x;
      else if (r < -half) r += x;
      if (r != 0) {
        Monomial m = t.mono;
        m.exp[var] = e;
        terms.push_back({m, Rational(r)});
      }
      c = (c - r) / x;
    }
  }
  return Polynomial::from_terms(h.nvars(), std::move(terms));
}

/// Heuristic gcd of integer polynomials (Char, Geddes and Gonnet): evaluate one variable at a
/// large integer, recurse, and read the result back in base x. Accepted only if it divides both.
std::optional<Polynomial> heuristic_gcd(const Polynomial& f0, const Polynomial& g0) {
  std::size_t var = kMaxVars;
  for (std::size_t v = f0.nvars(); v-- > 0;)
    if (f0.involves(v) || g0.involves(v)) {
      var = v;
      break;
    }
  Integer cf = integer_content(f0), cg = integer_content(g0), common;
  mpz_gcd(common.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (var == kMaxVars) return Polynomial::constant(f0.nvars(), Rational(common));
  Polynomial f = f0, g = g0;
  f *= Rational(Integer(1), cf);
  g *= Rational(Integer(1), cg);

  Integer fn = max_norm(f), gn = max_norm(g);
  Integer b = 2 * std::min(fn, gn) + 29;
  Integer x = std::min(b, Integer(99 * sqrt(b)));
  Integer lf = abs(f.leading_term().coeff.get_num()), lg = abs(g.leading_term().coeff.get_num());
  x = std::max(x, Integer(2 * std::min(Integer(fn / lf), Integer(gn / lg)) + 2));
  for (int attempt = 0; attempt < 6; ++attempt) {
    Polynomial ff = evaluate_var(f, var, x), gg = evaluate_var(g, var, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      if (auto h = heuristic_gcd(ff, gg)) {
        Polynomial cand = interpolate_var(*h, var, x);
        if (!cand.is_zero()) {
          cand *= Rational(Integer(1), integer_content(cand));
          if (exact_divide(f, cand) && exact_divide(g, cand)) return cand * Polynomial::constant(f.nvars(), Rational(common));
        }
      }
    }
    x = 73794 * x * Integer(sqrt(Integer(sqrt(x)))) / 27011;
  }
  return std::nullopt;
}

Polynomial gcd_nonzero(const Polynomial& f0, const Polynomial& g0) {
  if (f0.is_constant() || g0.is_constant()) return one_like(f0);
  Monomial mf = f0.min_exponents(), mg = g0.min_exponents(), m;
  for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = std::min(mf.exp[i], mg.exp[i]);
  Polynomial mono = Polynomial::monomial(f0.nvars(), m, Rational(1));
  Polynomial f = f0.divide_monomial(mf).monic();
  Polynomial g = g0.divide_monomial(mg).monic();
  if (f.is_constant() || g.is_constant()) return mono;
  if (f == g) return f * mono;
  if (f.size() >= g.size()) {
    if (exact_divide(f, g)) return g * mono;
  } else if (exact_divide(g, f)) {
    return f * mono;
  }

  std::vector<std::size_t> shared;
  for (std::size_t v = 0; v < f.nvars(); ++v) {
    bool in_f = f.involves(v), in_g = g.involves(v);
    if (in_f != in_g) {
      Polynomial acc = in_f ? fold_content(g, f, v) : fold_content(f, g, v);
      return (acc * mono).monic();
    }
    if (in_f) shared.push_back(v);
  }
  if (shared.empty()) return mono;

  std::size_t var = kMaxVars;
  unsigned best = ~0u;
  for (std::size_t v : shared) {
    unsigned bound = gcd_degree_bound(f, g, v);
    if (bound == 0) {
      // The gcd does not involve v, so it divides every coefficient in v.
      Polynomial acc = fold_content(fold_content(Polynomial(f.nvars()), f, v), g, v);
      return (acc * mono).monic();
    }
    if (bound < best) {
      best = bound;
      var = v;
    }
  }

  if (auto h = heuristic_gcd(integer_primitive(f), integer_primitive(g))) return (*h * mono).monic();

  Polynomial cf = content_in(f, var), cg = content_in(g, var);
  Polynomial c = gcd_nonzero(cf, cg);
  Polynomial a = primitive_part(f, var), b = primitive_part(g, var);
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  while (true) {
    Polynomial r = pseudo_remainder(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      b = one_like(b);
      break;
    }
    a = std::move(b);
    b = primitive_part(r, var);
  }
  return (b * c * mono).monic();
}

}  // namespace

Polynomial gcd(const Polynomial& f, const Polynomial& g) {
  check_same_ring(f, g);
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  return gcd_nonzero(f, g);
}

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool unit = c == 1 && !t.mono.is_one();
    if (!unit) out << c.get_str();
    bool need_star = !unit;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (need_star) out << "*";
      need_star = true;
      if (i < names.size()) {
        out << names[i];
      } else {
        out << "x" << (i + 1);
      }
      if (t.mono.exp[i] > 1) out << "^" << t.mono.exp[i];
    }
  }
  return out.str();
}

}  // namespace dist235
