#pragma once
// Forward-mode dual numbers and a complex type over arbitrary real scalars.
//
// Dual<T, K> carries a value and K directional derivatives. Nesting
// Dual<Dual<double, K>, K> gives exact second derivatives. Cx<S> is a plain
// complex pair usable with any scalar S (std::complex is only specified for
// the built-in floating point types).

#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

namespace kaehler {

template <class T, int K>
struct Dual {
  T v{};
  std::array<T, K> d{};

  Dual() = default;
  Dual(double c) : v(c) {}  // NOLINT(implicit)
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  Dual(const T& c) : v(c) {}  // NOLINT(implicit)

  /// Independent variable number `k` with value `x`.
  static Dual variable(const T& x, int k) {
    Dual r(x);
    r.d[k] = T(1.0);
    return r;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int k = 0; k < K; ++k) d[k] += o.d[k];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int k = 0; k < K; ++k) d[k] -= o.d[k];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int k = 0; k < K; ++k) d[k] = d[k] * o.v + v * o.d[k];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const T inv = T(1.0) / o.v;
    v *= inv;
    for (int k = 0; k < K; ++k) d[k] = (d[k] - v * o.d[k]) * inv;
    return *this;
  }
};

template <class T>
struct is_dual : std::false_type {};
template <class T, int K>
struct is_dual<Dual<T, K>> : std::true_type {};

inline double value_of(double x) { return x; }
template <class T, int K>
double value_of(const Dual<T, K>& x) {
  return value_of(x.v);
}

template <class T, int K>
Dual<T, K> operator-(const Dual<T, K>& a) {
  Dual<T, K> r;
  r.v = -a.v;
  for (int k = 0; k < K; ++k) r.d[k] = -a.d[k];
  return r;
}
template <class T, int K>
Dual<T, K> operator+(Dual<T, K> a, const Dual<T, K>& b) {
  return a += b;
}
template <class T, int K>
Dual<T, K> operator-(Dual<T, K> a, const Dual<T, K>& b) {
  return a -= b;
}
template <class T, int K>
Dual<T, K> operator*(Dual<T, K> a, const Dual<T, K>& b) {
  return a *= b;
}
template <class T, int K>
Dual<T, K> operator/(Dual<T, K> a, const Dual<T, K>& b) {
  return a /= b;
}

// Mixed arithmetic with plain doubles.
template <class T, int K>
Dual<T, K> operator+(Dual<T, K> a, double b) {
  a.v += b;
  return a;
}
template <class T, int K>
Dual<T, K> operator+(double b, Dual<T, K> a) {
  a.v += b;
  return a;
}
template <class T, int K>
Dual<T, K> operator-(Dual<T, K> a, double b) {
  a.v -= b;
  return a;
}
template <class T, int K>
Dual<T, K> operator-(double b, const Dual<T, K>& a) {
  return Dual<T, K>(b) - a;
}
template <class T, int K>
Dual<T, K> operator*(Dual<T, K> a, double b) {
  a.v *= b;
  for (int k = 0; k < K; ++k) a.d[k] *= b;
  return a;
}
template <class T, int K>
Dual<T, K> operator*(double b, Dual<T, K> a) {
  return a * b;
}
template <class T, int K>
Dual<T, K> operator/(Dual<T, K> a, double b) {
  return a * (1.0 / b);
}
template <class T, int K>
Dual<T, K> operator/(double b, const Dual<T, K>& a) {
  return Dual<T, K>(b) / a;
}

template <class T, int K>
bool operator<(const Dual<T, K>& a, const Dual<T, K>& b) {
  return value_of(a) < value_of(b);
}

namespace detail {
// Apply a scalar function with known first derivative to a dual number.
template <class T, int K>
Dual<T, K> chain(const Dual<T, K>& a, const T& f, const T& df) {
  Dual<T, K> r;
  r.v = f;
  for (int k = 0; k < K; ++k) r.d[k] = df * a.d[k];
  return r;
}
}  // namespace detail

using std::atan;
using std::atanh;
using std::cos;
using std::exp;
using std::log;
using std::sin;
using std::sqrt;
using std::tanh;

template <class T, int K>
Dual<T, K> sqrt(const Dual<T, K>& a) {
  const T s = sqrt(a.v);
  return detail::chain(a, s, T(0.5) / s);
}
template <class T, int K>
Dual<T, K> exp(const Dual<T, K>& a) {
  const T e = exp(a.v);
  return detail::chain(a, e, e);
}
template <class T, int K>
Dual<T, K> log(const Dual<T, K>& a) {
  return detail::chain(a, log(a.v), T(1.0) / a.v);
}
template <class T, int K>
Dual<T, K> sin(const Dual<T, K>& a) {
  return detail::chain(a, sin(a.v), cos(a.v));
}
template <class T, int K>
Dual<T, K> cos(const Dual<T, K>& a) {
  return detail::chain(a, cos(a.v), -sin(a.v));
}
template <class T, int K>
Dual<T, K> atanh(const Dual<T, K>& a) {
  return detail::chain(a, atanh(a.v), T(1.0) / (T(1.0) - a.v * a.v));
}
template <class T, int K>
Dual<T, K> atan(const Dual<T, K>& a) {
  return detail::chain(a, atan(a.v), T(1.0) / (T(1.0) + a.v * a.v));
}
template <class T, int K>
Dual<T, K> tanh(const Dual<T, K>& a) {
  const T t = tanh(a.v);
  return detail::chain(a, t, T(1.0) - t * t);
}

/// Complex number over an arbitrary real scalar.
template <class S>
struct Cx {
  S re{};
  S im{};

  Cx() = default;
  Cx(const S& r) : re(r), im(0.0) {}  // NOLINT(implicit)
  Cx(const S& r, const S& i) : re(r), im(i) {}
  template <class U = S, class = std::enable_if_t<!std::is_same_v<U, double>>>
  Cx(double r) : re(r), im(0.0) {}  // NOLINT(implicit)

  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cx& operator-=(const Cx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
};

template <class S>
Cx<S> operator+(Cx<S> a, const Cx<S>& b) {
  return a += b;
}
template <class S>
Cx<S> operator-(Cx<S> a, const Cx<S>& b) {
  return a -= b;
}
template <class S>
Cx<S> operator-(const Cx<S>& a) {
  return {-a.re, -a.im};
}
template <class S>
Cx<S> operator*(const Cx<S>& a, const Cx<S>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class S>
Cx<S> operator*(const Cx<S>& a, const S& s) {
  return {a.re * s, a.im * s};
}
template <class S>
Cx<S> operator*(const S& s, const Cx<S>& a) {
  return {a.re * s, a.im * s};
}
template <class S, class = std::enable_if_t<!std::is_same_v<S, double>>>
Cx<S> operator*(const Cx<S>& a, double s) {
  return {a.re * s, a.im * s};
}
template <class S, class = std::enable_if_t<!std::is_same_v<S, double>>>
Cx<S> operator*(double s, const Cx<S>& a) {
  return {a.re * s, a.im * s};
}
template <class S>
Cx<S> operator/(const Cx<S>& a, const S& s) {
  return {a.re / s, a.im / s};
}
template <class S>
Cx<S> conj(const Cx<S>& a) {
  return {a.re, -a.im};
}
template <class S>
S abs2(const Cx<S>& a) {
  return a.re * a.re + a.im * a.im;
}

/// The imaginary unit times `a`.
template <class S>
Cx<S> times_i(const Cx<S>& a) {
  return {-a.im, a.re};
}

template <class S>
std::complex<double> to_std(const Cx<S>& a) {
  return {value_of(a.re), value_of(a.im)};
}

}  // namespace kaehler
