#pragma once
// Closed-form scalar fields over the real chart coordinates.
//
// A field is an immutable expression tree. Evaluating it at a point yields an
// exact second-order jet (value, gradient, Hessian) by forward propagation, so
// no finite differencing enters any identity check. Complex fields are pairs
// of real fields.

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace kaehler {

/// A point in the affine chart: real coordinates (x_1, y_1, ..., x_N, y_N).
template <int N>
struct Point {
  static constexpr int kDim = 2 * N;
  std::array<double, kDim> x{};

  std::complex<double> z(int i) const { return {x[2 * i], x[2 * i + 1]}; }
  double norm2() const {
    double s = 0.0;
    for (double c : x) s += c * c;
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

  static Point from_complex(const std::array<std::complex<double>, N>& zs) {
    Point p;
    for (int i = 0; i < N; ++i) {
      p.x[2 * i] = zs[i].real();
      p.x[2 * i + 1] = zs[i].imag();
    }
    return p;
  }
};

/// Real second-order jet of a real function of 2N variables.
template <int N>
struct RealJet {
  static constexpr int kDim = 2 * N;
  double v = 0.0;
  std::array<double, kDim> g{};
  std::array<double, kDim * kDim> h{};

  double hess(int a, int b) const { return h[a * kDim + b]; }

  static RealJet constant(double c) {
    RealJet r;
    r.v = c;
    return r;
  }
  static RealJet coordinate(const Point<N>& p, int k) {
    RealJet r;
    r.v = p.x[k];
    r.g[k] = 1.0;
    return r;
  }
};

template <int N>
RealJet<N> operator+(RealJet<N> a, const RealJet<N>& b) {
  a.v += b.v;
  for (int i = 0; i < 2 * N; ++i) a.g[i] += b.g[i];
  for (int i = 0; i < 4 * N * N; ++i) a.h[i] += b.h[i];
  return a;
}
template <int N>
RealJet<N> operator-(RealJet<N> a, const RealJet<N>& b) {
  a.v -= b.v;
  for (int i = 0; i < 2 * N; ++i) a.g[i] -= b.g[i];
  for (int i = 0; i < 4 * N * N; ++i) a.h[i] -= b.h[i];
  return a;
}
template <int N>
RealJet<N> operator*(const RealJet<N>& a, const RealJet<N>& b) {
  constexpr int D = 2 * N;
  RealJet<N> r;
  r.v = a.v * b.v;
  for (int i = 0; i < D; ++i) r.g[i] = a.v * b.g[i] + b.v * a.g[i];
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      r.h[i * D + j] = a.v * b.h[i * D + j] + b.v * a.h[i * D + j] + a.g[i] * b.g[j] +
                       b.g[i] * a.g[j];
  return r;
}
template <int N>
RealJet<N> scale(RealJet<N> a, double s) {
  a.v *= s;
  for (auto& c : a.g) c *= s;
  for (auto& c : a.h) c *= s;
  return a;
}

/// Compose a jet with a scalar function given f, f', f'' at the jet's value.
template <int N>
RealJet<N> compose(const RealJet<N>& a, double f, double df, double ddf) {
  constexpr int D = 2 * N;
  RealJet<N> r;
  r.v = f;
  for (int i = 0; i < D; ++i) r.g[i] = df * a.g[i];
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) r.h[i * D + j] = df * a.h[i * D + j] + ddf * a.g[i] * a.g[j];
  return r;
}

/// Complex-valued second-order jet (the user-facing jet type).
template <int N>
struct Jet2 {
  static constexpr int kDim = 2 * N;
  std::complex<double> value;
  std::array<std::complex<double>, kDim> grad{};
  std::array<std::complex<double>, kDim * kDim> hess{};

  std::complex<double> h(int a, int b) const { return hess[a * kDim + b]; }

  static Jet2 from_parts(const RealJet<N>& re, const RealJet<N>& im) {
    Jet2 j;
    j.value = {re.v, im.v};
    for (int i = 0; i < kDim; ++i) j.grad[i] = {re.g[i], im.g[i]};
    for (int i = 0; i < kDim * kDim; ++i) j.hess[i] = {re.h[i], im.h[i]};
    return j;
  }

  Jet2 conjugate() const {
    Jet2 j = *this;
    j.value = std::conj(j.value);
    for (auto& c : j.grad) c = std::conj(c);
    for (auto& c : j.hess) c = std::conj(c);
    return j;
  }
};

namespace expr {

enum class Fn { kLog, kExp, kSqrt, kSin, kCos, kAtanh, kAtan, kRecip };

template <int N>
struct Node {
  virtual ~Node() = default;
  virtual RealJet<N> eval(const Point<N>& p) const = 0;
  virtual double value(const Point<N>& p) const = 0;
};

template <int N>
using NodePtr = std::shared_ptr<const Node<N>>;

template <int N>
struct Constant final : Node<N> {
  double c;
  explicit Constant(double v) : c(v) {}
  RealJet<N> eval(const Point<N>&) const override { return RealJet<N>::constant(c); }
  double value(const Point<N>&) const override { return c; }
};

template <int N>
struct Coordinate final : Node<N> {
  int k;
  explicit Coordinate(int idx) : k(idx) {}
  RealJet<N> eval(const Point<N>& p) const override { return RealJet<N>::coordinate(p, k); }
  double value(const Point<N>& p) const override { return p.x[k]; }
};

template <int N>
struct Sum final : Node<N> {
  NodePtr<N> a, b;
  double sb;  // +1 for a+b, -1 for a-b
  Sum(NodePtr<N> l, NodePtr<N> r, double sign) : a(std::move(l)), b(std::move(r)), sb(sign) {}
  RealJet<N> eval(const Point<N>& p) const override {
    return sb > 0 ? a->eval(p) + b->eval(p) : a->eval(p) - b->eval(p);
  }
  double value(const Point<N>& p) const override { return a->value(p) + sb * b->value(p); }
};

template <int N>
struct Product final : Node<N> {
  NodePtr<N> a, b;
  Product(NodePtr<N> l, NodePtr<N> r) : a(std::move(l)), b(std::move(r)) {}
  RealJet<N> eval(const Point<N>& p) const override { return a->eval(p) * b->eval(p); }
  double value(const Point<N>& p) const override { return a->value(p) * b->value(p); }
};

template <int N>
struct Scaled final : Node<N> {
  NodePtr<N> a;
  double s;
  Scaled(NodePtr<N> arg, double factor) : a(std::move(arg)), s(factor) {}
  RealJet<N> eval(const Point<N>& p) const override { return scale(a->eval(p), s); }
  double value(const Point<N>& p) const override { return s * a->value(p); }
};

inline void apply(Fn fn, double x, double& f, double& df, double& ddf) {
  switch (fn) {
    case Fn::kLog:
      if (!(x > 0.0)) throw std::domain_error("log of non-positive argument");
      f = std::log(x);
      df = 1.0 / x;
      ddf = -1.0 / (x * x);
      return;
    case Fn::kExp:
      f = df = ddf = std::exp(x);
      return;
    case Fn::kSqrt:
      if (!(x > 0.0)) throw std::domain_error("sqrt jet at non-positive argument");
      f = std::sqrt(x);
      df = 0.5 / f;
      ddf = -0.25 / (f * x);
      return;
    case Fn::kSin:
      f = std::sin(x);
      df = std::cos(x);
      ddf = -f;
      return;
    case Fn::kCos:
      f = std::cos(x);
      df = -std::sin(x);
      ddf = -f;
      return;
    case Fn::kAtanh: {
      if (!(std::abs(x) < 1.0)) throw std::domain_error("atanh outside (-1, 1)");
      const double q = 1.0 / (1.0 - x * x);
      f = std::atanh(x);
      df = q;
      ddf = 2.0 * x * q * q;
      return;
    }
    case Fn::kAtan: {
      const double q = 1.0 / (1.0 + x * x);
      f = std::atan(x);
      df = q;
      ddf = -2.0 * x * q * q;
      return;
    }
    case Fn::kRecip:
      if (x == 0.0) throw std::domain_error("division by zero in field");
      f = 1.0 / x;
      df = -f * f;
      ddf = 2.0 * f * f * f;
      return;
  }
}

template <int N>
struct Unary final : Node<N> {
  Fn fn;
  NodePtr<N> a;
  Unary(Fn f, NodePtr<N> arg) : fn(f), a(std::move(arg)) {}
  RealJet<N> eval(const Point<N>& p) const override {
    const RealJet<N> j = a->eval(p);
    double f = 0.0, df = 0.0, ddf = 0.0;
    apply(fn, j.v, f, df, ddf);
    return compose(j, f, df, ddf);
  }
  double value(const Point<N>& p) const override {
    double f = 0.0, df = 0.0, ddf = 0.0;
    apply(fn, a->value(p), f, df, ddf);
    return f;
  }
};

}  // namespace expr

/// Real scalar field given as a closed-form expression in chart coordinates.
template <int N>
class ScalarField {
 public:
  ScalarField() : node_(std::make_shared<expr::Constant<N>>(0.0)) {}
  ScalarField(double c) : node_(std::make_shared<expr::Constant<N>>(c)) {}  // NOLINT
  explicit ScalarField(expr::NodePtr<N> n) : node_(std::move(n)) {}

  /// Real chart coordinate k (0..2N-1, ordered x_1, y_1, x_2, y_2, ...).
  static ScalarField coord(int k) {
    if (k < 0 || k >= 2 * N) throw std::out_of_range("coordinate index");
    return ScalarField(std::make_shared<expr::Coordinate<N>>(k));
  }
  /// |z|^2 = sum of squared real coordinates.
  static ScalarField norm2() {
    ScalarField s(0.0);
    for (int k = 0; k < 2 * N; ++k) s = s + coord(k) * coord(k);
    return s;
  }

  RealJet<N> jet(const Point<N>& p) const { return node_->eval(p); }
  double operator()(const Point<N>& p) const { return node_->value(p); }
  const expr::NodePtr<N>& node() const { return node_; }

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return ScalarField(std::make_shared<expr::Sum<N>>(a.node_, b.node_, 1.0));
  }
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return ScalarField(std::make_shared<expr::Sum<N>>(a.node_, b.node_, -1.0));
  }
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return ScalarField(std::make_shared<expr::Product<N>>(a.node_, b.node_));
  }
  friend ScalarField operator*(double s, const ScalarField& a) {
    return ScalarField(std::make_shared<expr::Scaled<N>>(a.node_, s));
  }
  friend ScalarField operator*(const ScalarField& a, double s) { return s * a; }
  friend ScalarField operator-(const ScalarField& a) { return -1.0 * a; }
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    return a * apply(expr::Fn::kRecip, b);
  }

  static ScalarField apply(expr::Fn fn, const ScalarField& a) {
    return ScalarField(std::make_shared<expr::Unary<N>>(fn, a.node_));
  }

 private:
  expr::NodePtr<N> node_;
};

template <int N>
ScalarField<N> log(const ScalarField<N>& a) {
  return ScalarField<N>::apply(expr::Fn::kLog, a);
}
template <int N>
ScalarField<N> exp(const ScalarField<N>& a) {
  return ScalarField<N>::apply(expr::Fn::kExp, a);
}
template <int N>
ScalarField<N> sqrt(const ScalarField<N>& a) {
  return ScalarField<N>::apply(expr::Fn::kSqrt, a);
}
template <int N>
ScalarField<N> sin(const ScalarField<N>& a) {
  return ScalarField<N>::apply(expr::Fn::kSin, a);
}
template <int N>
ScalarField<N> cos(const ScalarField<N>& a) {
  return ScalarField<N>::apply(expr::Fn::kCos, a);
}
template <int N>
ScalarField<N> atanh(const ScalarField<N>& a) {
  return ScalarField<N>::apply(expr::Fn::kAtanh, a);
}
template <int N>
ScalarField<N> atan(const ScalarField<N>& a) {
  return ScalarField<N>::apply(expr::Fn::kAtan, a);
}

/// Complex scalar field carried as a pair of real fields.
template <int N>
class ComplexField {
 public:
  ComplexField() = default;
  ComplexField(double c) : re_(c), im_(0.0) {}  // NOLINT
  ComplexField(std::complex<double> c) : re_(c.real()), im_(c.imag()) {}  // NOLINT
  ComplexField(ScalarField<N> re, ScalarField<N> im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit ComplexField(ScalarField<N> re) : re_(std::move(re)), im_(0.0) {}

  /// Holomorphic coordinate z_i (0-based).
  static ComplexField z(int i) {
    return {ScalarField<N>::coord(2 * i), ScalarField<N>::coord(2 * i + 1)};
  }
  static ComplexField zbar(int i) { return z(i).conj(); }

  const ScalarField<N>& re() const { return re_; }
  const ScalarField<N>& im() const { return im_; }
  ComplexField conj() const { return {re_, -im_}; }
  ComplexField real_part() const { return ComplexField(re_); }
  ComplexField imag_part() const { return ComplexField(im_); }
  /// |F|^2 as a real field.
  ComplexField abs2() const { return ComplexField(re_ * re_ + im_ * im_); }

  Jet2<N> jet(const Point<N>& p) const { return Jet2<N>::from_parts(re_.jet(p), im_.jet(p)); }
  std::complex<double> operator()(const Point<N>& p) const { return {re_(p), im_(p)}; }

  friend ComplexField operator+(const ComplexField& a, const ComplexField& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend ComplexField operator-(const ComplexField& a, const ComplexField& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend ComplexField operator-(const ComplexField& a) { return {-a.re_, -a.im_}; }
  friend ComplexField operator*(const ComplexField& a, const ComplexField& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend ComplexField operator*(std::complex<double> s, const ComplexField& a) {
    return {s.real() * a.re_ - s.imag() * a.im_, s.real() * a.im_ + s.imag() * a.re_};
  }
  friend ComplexField operator*(double s, const ComplexField& a) { return {s * a.re_, s * a.im_}; }
  friend ComplexField operator/(const ComplexField& a, const ComplexField& b) {
    const ScalarField<N> d = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
  }

 private:
  ScalarField<N> re_{0.0};
  ScalarField<N> im_{0.0};
};

/// exp of a complex field.
template <int N>
ComplexField<N> cexp(const ComplexField<N>& a) {
  const ScalarField<N> m = exp(a.re());
  return {m * cos(a.im()), m * sin(a.im())};
}

/// Integer power by repeated multiplication.
template <int N>
ComplexField<N> pow(const ComplexField<N>& a, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  ComplexField<N> r(1.0);
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

}  // namespace kaehler
