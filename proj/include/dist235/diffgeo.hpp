#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "dist235/linalg.hpp"
#include "dist235/rational_function.hpp"

namespace dist235 {

/// Vector field sum_j v^j d/dx_j on R^n with rational coefficients.
class VectorField {
 public:
  explicit VectorField(std::size_t dim = 5);
  explicit VectorField(std::vector<RationalFunction> components);
  static VectorField coordinate(std::size_t dim, std::size_t index);

  std::size_t dim() const { return c_.size(); }
  const RationalFunction& operator[](std::size_t j) const { return c_[j]; }
  RationalFunction& operator[](std::size_t j) { return c_[j]; }
  const std::vector<RationalFunction>& components() const { return c_; }
  bool is_zero() const;

  /// Directional derivative V(f).
  RationalFunction apply(const RationalFunction& f) const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const RationalFunction& f, const VectorField& v);
  VectorField operator-() const;
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.c_ == b.c_; }

  std::vector<Rational> evaluate(std::span<const Rational> point) const;

 private:
  std::vector<RationalFunction> c_;
};

VectorField lie_bracket(const VectorField& v, const VectorField& w);

class OneForm {
 public:
  explicit OneForm(std::size_t dim = 5);
  explicit OneForm(std::vector<RationalFunction> components);
  static OneForm differential(const RationalFunction& f);
  static OneForm coordinate(std::size_t dim, std::size_t index);

  std::size_t dim() const { return c_.size(); }
  const RationalFunction& operator[](std::size_t j) const { return c_[j]; }
  RationalFunction& operator[](std::size_t j) { return c_[j]; }
  const std::vector<RationalFunction>& components() const { return c_; }

  RationalFunction operator()(const VectorField& v) const;

  OneForm& operator+=(const OneForm& o);
  OneForm& operator-=(const OneForm& o);
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator*(const RationalFunction& f, const OneForm& w);
  friend bool operator==(const OneForm& a, const OneForm& b) { return a.c_ == b.c_; }

 private:
  std::vector<RationalFunction> c_;
};

/// Two-form sum_{i<j} a_ij dx_i ^ dx_j; only the upper triangle is stored.
class TwoForm {
 public:
  explicit TwoForm(std::size_t dim = 5);

  std::size_t dim() const { return dim_; }
  /// Component a_ij for any i, j (antisymmetric, zero on the diagonal).
  RationalFunction component(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const RationalFunction& value);
  bool is_zero() const;

  RationalFunction operator()(const VectorField& v, const VectorField& w) const;

  TwoForm& operator+=(const TwoForm& o);
  TwoForm& operator-=(const TwoForm& o);
  friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
  friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
  friend TwoForm operator*(const RationalFunction& f, const TwoForm& w);
  friend bool operator==(const TwoForm& a, const TwoForm& b) { return a.upper_ == b.upper_; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const;
  std::size_t dim_;
  std::vector<RationalFunction> upper_;
};

TwoForm exterior_derivative(const OneForm& w);
TwoForm wedge(const OneForm& a, const OneForm& b);

enum class FrameTag { Raw, Adapted, StronglyAdapted, Cartan };

const char* frame_tag_name(FrameTag tag);

struct Frame {
  std::vector<VectorField> fields;  // X1..Xn
  FrameTag tag = FrameTag::Raw;

  std::size_t dim() const { return fields.size(); }
  /// Matrix whose column k holds the components of X_{k+1}.
  Matrix<RationalFunction> matrix() const;
  /// Throws DegeneracyError if the frame is singular at the point.
  void check_invertible_at(std::span<const Rational> point) const;
};

using Coframe = std::vector<OneForm>;

/// omega^i(X_k) = delta_ik as rational functions. Throws DegeneracyError for a singular frame.
Coframe dual_coframe(const Frame& frame);

/// c[j][i][k] (0-based) with [X_i, X_j] = sum_k c[j][i][k] X_k.
class StructuralFunctions {
 public:
  StructuralFunctions(std::size_t dim, std::size_t nvars);

  /// 1-based accessor matching c_{ji}^k.
  const RationalFunction& operator()(int j, int i, int k) const { return c_[at(j - 1, i - 1, k - 1)]; }
  RationalFunction& operator()(int j, int i, int k) { return c_[at(j - 1, i - 1, k - 1)]; }
  std::size_t dim() const { return dim_; }
  std::size_t nvars() const { return nvars_; }

 private:
  std::size_t at(std::size_t j, std::size_t i, std::size_t k) const { return (j * dim_ + i) * dim_ + k; }
  std::size_t dim_;
  std::size_t nvars_;
  std::vector<RationalFunction> c_;
};

StructuralFunctions structural_functions(const Frame& frame);
StructuralFunctions structural_functions(const Frame& frame, const Coframe& coframe);

struct GrowthVector {
  std::size_t d1 = 0, d2 = 0, d3 = 0;
  bool is_235() const { return d1 == 2 && d2 == 3 && d3 == 5; }
  std::string str() const;
};

/// Ranks of D, D^2 = D + [D,D], D^3 = D^2 + [D,D^2] at the point. Throws PoleError.
GrowthVector growth_vector(const VectorField& x1, const VectorField& x2, std::span<const Rational> point);

enum class AdaptedMode { Adapted, StronglyAdapted };

/// X3 = [X1,X2], X4 = [X1,X3], X5 = [X2,X3] (adapted) or [X3,X2] (strongly adapted).
Frame adapted_frame(const VectorField& x1, const VectorField& x2, AdaptedMode mode = AdaptedMode::Adapted);

/// X1 = d/dq, X2 = d/dx + p d/dy + q d/dp + F d/dz on coordinates (x, y, p, q, z).
std::array<VectorField, 2> monge_distribution(const RationalFunction& f);

}  // namespace dist235
