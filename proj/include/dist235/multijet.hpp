#pragma once

#include <span>

#include "dist235/polynomial.hpp"
#include "dist235/rational_function.hpp"
#include "dist235/series.hpp"

namespace dist235 {

/// Taylor polynomial of f at `point` in the local variables y = x - point,
/// truncated to total degree `order`. Throws PoleError if the denominator
/// vanishes at the point.
Polynomial jet_at_point(const RationalFunction& f, std::span<const Rational> point, unsigned order);

/// Product of two jets truncated to total degree `order`.
Polynomial jet_multiply(const Polynomial& a, const Polynomial& b, unsigned order);

/// p(args(t)) with one t-series per variable; the result has the smallest order among the arguments.
JetSeries evaluate_on_series(const Polynomial& p, std::span<const JetSeries> args);

/// f(args(t)); throws PoleError if the denominator vanishes at t = 0.
JetSeries evaluate_on_series(const RationalFunction& f, std::span<const JetSeries> args);

}  // namespace dist235
