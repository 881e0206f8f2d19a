#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dist235/errors.hpp"
#include "dist235/rational.hpp"

namespace dist235 {

template <class T>
class Series;

inline Rational zero_like(const Rational&) { return Rational(0); }
inline bool is_unit(const Rational& r) { return sgn(r) != 0; }
inline Rational unit_inverse(const Rational& r) { return 1 / r; }
inline bool is_exact_zero(const Rational& r) { return sgn(r) == 0; }

/// Truncated power series sum_{k=0}^{order} c_k t^k. The coefficient type is
/// Rational for univariate jets or another Series for bivariate jets (outer
/// variable s, inner variable tau). Arithmetic truncates to the smaller order
/// of the operands, so results never claim precision they do not have.
template <class T>
class Series {
 public:
  Series(int order, const T& zero) : c_(static_cast<std::size_t>(check_order(order)) + 1, zero) {}
  /// The zero jet of order 0.
  Series()
    requires std::is_same_v<T, Rational>
      : c_(1, Rational(0)) {}
  explicit Series(int order)
    requires std::is_same_v<T, Rational>
      : c_(static_cast<std::size_t>(check_order(order)) + 1, Rational(0)) {}
  explicit Series(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw OrderError("series needs at least one coefficient");
  }

  static Series constant(int order, const T& value) {
    Series s(order, zero_like(value));
    s.c_[0] = value;
    return s;
  }
  /// The series t (needs a zero prototype for non-rational coefficients).
  static Series variable(int order, const T& zero, const T& one) {
    Series s(order, zero);
    if (order >= 1) s.c_[1] = one;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  T& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<T>& coeffs() const { return c_; }
  T zero() const { return zero_like(c_[0]); }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& x) { return is_exact_zero(x); });
  }
  /// Index of the first nonzero coefficient, or nullopt if zero to this order.
  std::optional<int> valuation() const {
    for (int k = 0; k <= order(); ++k)
      if (!is_exact_zero(c_[k])) return k;
    return std::nullopt;
  }

  Series truncate(int order) const {
    if (order > this->order()) throw OrderError("cannot raise the order of a truncated series");
    return Series(std::vector<T>(c_.begin(), c_.begin() + order + 1));
  }

  Series& operator+=(const Series& b) {
    resize_to(std::min(order(), b.order()));
    for (int k = 0; k <= order(); ++k) c_[k] += b.c_[k];
    return *this;
  }
  Series& operator-=(const Series& b) {
    resize_to(std::min(order(), b.order()));
    for (int k = 0; k <= order(); ++k) c_[k] -= b.c_[k];
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  Series operator-() const {
    Series r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Series operator*(const Series& a, const Series& b) {
    int n = std::min(a.order(), b.order());
    Series r(n, a.zero());
    for (int i = 0; i <= n; ++i) {
      if (is_exact_zero(a.c_[i])) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (is_exact_zero(b.c_[j])) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  Series& operator*=(const Series& b) { return *this = *this * b; }

  friend Series operator*(Series a, const Rational& r) {
    for (auto& x : a.c_) x = x * r;
    return a;
  }
  friend Series operator*(const Rational& r, Series a) { return std::move(a) * r; }
  /// Multiplication by a coefficient-type scalar (bivariate only).
  Series scaled(const T& v) const {
    Series r = *this;
    for (auto& x : r.c_) x = x * v;
    return r;
  }

  /// Multiplicative inverse; the constant term must be a unit.
  Series inverse() const {
    if (!is_unit(c_[0])) throw ZeroDivisionError("series inverse needs a unit constant term");
    Series r(order(), zero());
    T inv0 = unit_inverse(c_[0]);
    r.c_[0] = inv0;
    for (int n = 1; n <= order(); ++n) {
      T acc = zero();
      for (int k = 1; k <= n; ++k) {
        if (is_exact_zero(c_[k])) continue;
        acc += c_[k] * r.c_[n - k];
      }
      r.c_[n] = -(acc * inv0);
    }
    return r;
  }

  Series derivative() const {
    if (order() == 0) throw OrderError("derivative of an order-0 series carries no information");
    Series r(order() - 1, zero());
    for (int k = 0; k < order(); ++k) r.c_[k] = c_[k + 1] * Rational(k + 1);
    return r;
  }

  Series integral(const T& constant) const {
    Series r(order() + 1, zero());
    r.c_[0] = constant;
    for (int k = 0; k <= order(); ++k) r.c_[k + 1] = c_[k] * Rational(1, k + 1);
    return r;
  }

  /// Multiplies by t^k (known to k more orders).
  Series shift_up(int k) const {
    Series r(order() + k, zero());
    for (int i = 0; i <= order(); ++i) r.c_[i + k] = c_[i];
    return r;
  }
  /// Divides by t^k; the first k coefficients must vanish exactly.
  Series shift_down(int k) const {
    if (k > order()) throw OrderError("not enough coefficients to divide by t^" + std::to_string(k));
    for (int i = 0; i < k; ++i)
      if (!is_exact_zero(c_[i])) throw ConsistencyError("series not divisible by t^" + std::to_string(k));
    return Series(std::vector<T>(c_.begin() + k, c_.end()));
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw OrderError("negative truncation order");
    return order;
  }
  void resize_to(int n) {
    if (n < order()) c_.resize(static_cast<std::size_t>(n) + 1);
  }

  std::vector<T> c_;
};

template <class T>
Series<T> zero_like(const Series<T>& s) {
  return Series<T>(s.order(), s.zero());
}
template <class T>
bool is_unit(const Series<T>& s) {
  return is_unit(s[0]);
}
template <class T>
Series<T> unit_inverse(const Series<T>& s) {
  return s.inverse();
}
template <class T>
bool is_exact_zero(const Series<T>& s) {
  return s.is_zero();
}

using JetSeries = Series<Rational>;
/// Outer variable s, inner variable tau: coefficient k is the tau-series of s^k.
using BiSeries = Series<JetSeries>;

/// Composition a(b(t)); b must have zero constant term.
JetSeries compose(const JetSeries& a, const JetSeries& b);

/// Returns (k, u) with a = t^k * u and u(0) != 0. Throws OrderError if a is zero to its order.
std::pair<int, JetSeries> laurent_split(const JetSeries& a);

/// f^e for f(0) = 1 and rational e (binomial series).
JetSeries rational_power(const JetSeries& f, const Rational& e);

/// Bivariate expansion of f(tau + s), truncated at tau^{tau_order}, s^{s_order}.
/// Needs f.order() >= tau_order + s_order.
BiSeries expand_shifted(const JetSeries& f, int tau_order, int s_order);

/// The series in tau given by the s^k coefficient.
inline const JetSeries& s_coefficient(const BiSeries& b, int k) { return b[k]; }

/// Bivariate constant in s carrying a tau-series.
BiSeries lift_tau(const JetSeries& f, int s_order);

std::string to_string(const JetSeries& s, const std::string& var = "t");

}  // namespace dist235
