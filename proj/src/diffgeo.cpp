#include "dist235/diffgeo.hpp"

#include "dist235/errors.hpp"

namespace dist235 {

namespace {

std::size_t nvars_of(const std::vector<RationalFunction>& v) { return v.empty() ? 0 : v.front().nvars(); }

}  // namespace

VectorField::VectorField(std::size_t dim) : c_(dim, RationalFunction(dim)) {}

VectorField::VectorField(std::vector<RationalFunction> components) : c_(std::move(components)) {}

VectorField VectorField::coordinate(std::size_t dim, std::size_t index) {
  VectorField v(dim);
  v.c_[index] = RationalFunction::constant(dim, Rational(1));
  return v;
}

bool VectorField::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

RationalFunction VectorField::apply(const RationalFunction& f) const {
  RationalFunction out(f.nvars());
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    RationalFunction d = f.derivative(j);
    if (!d.is_zero()) out += c_[j] * d;
  }
  return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

VectorField operator*(const RationalFunction& f, const VectorField& v) {
  VectorField r = v;
  for (auto& x : r.c_) x = f * x;
  return r;
}

VectorField VectorField::operator-() const {
  VectorField r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

std::vector<Rational> VectorField::evaluate(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(x.evaluate(point));
  return out;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  std::vector<RationalFunction> out;
  out.reserve(v.dim());
  for (std::size_t k = 0; k < v.dim(); ++k) out.push_back(v.apply(w[k]) - w.apply(v[k]));
  return VectorField(std::move(out));
}

OneForm::OneForm(std::size_t dim) : c_(dim, RationalFunction(dim)) {}

OneForm::OneForm(std::vector<RationalFunction> components) : c_(std::move(components)) {}

OneForm OneForm::differential(const RationalFunction& f) {
  std::vector<RationalFunction> c;
  for (std::size_t j = 0; j < f.nvars(); ++j) c.push_back(f.derivative(j));
  return OneForm(std::move(c));
}

OneForm OneForm::coordinate(std::size_t dim, std::size_t index) {
  OneForm w(dim);
  w.c_[index] = RationalFunction::constant(dim, Rational(1));
  return w;
}

RationalFunction OneForm::operator()(const VectorField& v) const {
  RationalFunction out(nvars_of(c_));
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (!c_[j].is_zero() && !v[j].is_zero()) out += c_[j] * v[j];
  return out;
}

OneForm& OneForm::operator+=(const OneForm& o) {
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

OneForm& OneForm::operator-=(const OneForm& o) {
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

OneForm operator*(const RationalFunction& f, const OneForm& w) {
  OneForm r = w;
  for (auto& x : r.c_) x = f * x;
  return r;
}

TwoForm::TwoForm(std::size_t dim) : dim_(dim), upper_(dim * (dim - 1) / 2, RationalFunction(dim)) {}

std::size_t TwoForm::index(std::size_t i, std::size_t j) const {
  // i < j, row-major over the strict upper triangle
  return i * dim_ - i * (i + 1) / 2 + (j - i - 1);
}

RationalFunction TwoForm::component(std::size_t i, std::size_t j) const {
  if (i == j) return RationalFunction(upper_.empty() ? dim_ : upper_.front().nvars());
  if (i < j) return upper_[index(i, j)];
  return -upper_[index(j, i)];
}

void TwoForm::set(std::size_t i, std::size_t j, const RationalFunction& value) {
  if (i == j) throw Error("two-form diagonal is zero");
  if (i < j) {
    upper_[index(i, j)] = value;
  } else {
    upper_[index(j, i)] = -value;
  }
}

bool TwoForm::is_zero() const {
  for (const auto& x : upper_)
    if (!x.is_zero()) return false;
  return true;
}

RationalFunction TwoForm::operator()(const VectorField& v, const VectorField& w) const {
  RationalFunction out(upper_.front().nvars());
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const auto& a = upper_[index(i, j)];
      if (a.is_zero()) continue;
      RationalFunction m = v[i] * w[j] - v[j] * w[i];
      if (!m.is_zero()) out += a * m;
    }
  return out;
}

TwoForm& TwoForm::operator+=(const TwoForm& o) {
  for (std::size_t k = 0; k < upper_.size(); ++k) upper_[k] += o.upper_[k];
  return *this;
}

TwoForm& TwoForm::operator-=(const TwoForm& o) {
  for (std::size_t k = 0; k < upper_.size(); ++k) upper_[k] -= o.upper_[k];
  return *this;
}

TwoForm operator*(const RationalFunction& f, const TwoForm& w) {
  TwoForm r = w;
  for (auto& x : r.upper_) x = f * x;
  return r;
}

TwoForm exterior_derivative(const OneForm& w) {
  TwoForm out(w.dim());
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = i + 1; j < w.dim(); ++j) out.set(i, j, w[j].derivative(i) - w[i].derivative(j));
  return out;
}

TwoForm wedge(const OneForm& a, const OneForm& b) {
  TwoForm out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) out.set(i, j, a[i] * b[j] - a[j] * b[i]);
  return out;
}

const char* frame_tag_name(FrameTag tag) {
  switch (tag) {
    case FrameTag::Raw:
      return "raw";
    case FrameTag::Adapted:
      return "adapted";
    case FrameTag::StronglyAdapted:
      return "strongly-adapted";
    case FrameTag::Cartan:
      return "cartan";
  }
  return "raw";
}

Matrix<RationalFunction> Frame::matrix() const {
  std::size_t n = fields.size();
  std::size_t nv = nvars_of(fields.front().components());
  Matrix<RationalFunction> m(n, n, RationalFunction(nv));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) m(i, k) = fields[k][i];
  return m;
}

void Frame::check_invertible_at(std::span<const Rational> point) const {
  std::size_t n = fields.size();
  RationalMatrix m(n, n, Rational(0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) m(i, k) = fields[k][i].evaluate(point);
  if (rank(m) < n) throw DegeneracyError("frame is singular at the working point");
}

Coframe dual_coframe(const Frame& frame) {
  std::size_t n = frame.dim();
  std::size_t nv = nvars_of(frame.fields.front().components());
  Matrix<RationalFunction> inv = inverse(frame.matrix(), RationalFunction::constant(nv, Rational(1)));
  Coframe out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<RationalFunction> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(inv(i, j));
    out.emplace_back(std::move(row));
  }
  return out;
}

StructuralFunctions::StructuralFunctions(std::size_t dim, std::size_t nvars)
    : dim_(dim), nvars_(nvars), c_(dim * dim * dim, RationalFunction(nvars)) {}

StructuralFunctions structural_functions(const Frame& frame) {
  return structural_functions(frame, dual_coframe(frame));
}

StructuralFunctions structural_functions(const Frame& frame, const Coframe& coframe) {
  std::size_t n = frame.dim();
  StructuralFunctions c(n, nvars_of(frame.fields.front().components()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      VectorField b = lie_bracket(frame.fields[i], frame.fields[j]);
      for (std::size_t k = 0; k < n; ++k) {
        RationalFunction v = coframe[k](b);
        int I = static_cast<int>(i) + 1, J = static_cast<int>(j) + 1, K = static_cast<int>(k) + 1;
        c(J, I, K) = v;
        c(I, J, K) = -v;
      }
    }
  return c;
}

std::string GrowthVector::str() const {
  return "(" + std::to_string(d1) + "," + std::to_string(d2) + "," + std::to_string(d3) + ")";
}

namespace {

std::size_t rank_at(const std::vector<VectorField>& fields, std::span<const Rational> point) {
  std::size_t n = fields.front().dim();
  RationalMatrix m(fields.size(), n, Rational(0));
  for (std::size_t r = 0; r < fields.size(); ++r) {
    auto v = fields[r].evaluate(point);
    for (std::size_t j = 0; j < n; ++j) m(r, j) = v[j];
  }
  return rank(m);
}

}  // namespace

GrowthVector growth_vector(const VectorField& x1, const VectorField& x2, std::span<const Rational> point) {
  VectorField x3 = lie_bracket(x1, x2);
  std::vector<VectorField> span{x1, x2};
  GrowthVector g;
  g.d1 = rank_at(span, point);
  span.push_back(x3);
  g.d2 = rank_at(span, point);
  span.push_back(lie_bracket(x1, x3));
  span.push_back(lie_bracket(x2, x3));
  g.d3 = rank_at(span, point);
  return g;
}

Frame adapted_frame(const VectorField& x1, const VectorField& x2, AdaptedMode mode) {
  VectorField x3 = lie_bracket(x1, x2);
  VectorField x4 = lie_bracket(x1, x3);
  VectorField x5 = mode == AdaptedMode::Adapted ? lie_bracket(x2, x3) : lie_bracket(x3, x2);
  Frame f;
  f.fields = {x1, x2, x3, x4, x5};
  f.tag = mode == AdaptedMode::Adapted ? FrameTag::Adapted : FrameTag::StronglyAdapted;
  return f;
}

std::array<VectorField, 2> monge_distribution(const RationalFunction& f) {
  VectorField x1 = VectorField::coordinate(5, 3);
  VectorField x2 = VectorField::coordinate(5, 0);
  x2[1] = RationalFunction::variable(5, 2);
  x2[2] = RationalFunction::variable(5, 3);
  x2[4] = f;
  return {x1, x2};
}

}  // namespace dist235
