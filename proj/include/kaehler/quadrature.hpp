#pragma once
// Product quadrature over the star parametrization of a surface and over the
// enclosed star-shaped domain, with precomputed node caches, a deterministic
// parallel node map and pairwise summation.
//
// Latitude and radial axes use Gauss-Legendre; longitude axes are periodic
// and use the trapezoid rule, which is spectrally accurate there.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "kaehler/hypersurface.hpp"

namespace kaehler {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, std::vector<std::pair<int, double>> hist = {})
      : std::runtime_error(what), history(std::move(hist)) {}
  std::vector<std::pair<int, double>> history;  // (order, error estimate)
};

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre nodes on [a, b] by Newton iteration on P_n.
inline Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0) {
  if (n < 1) throw std::invalid_argument("quadrature order must be positive");
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  // Returns (P_n(t), P_n'(t)).
  auto legendre = [n](double t) {
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (t * p1 - p0) / (t * t - 1.0)};
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(t);
      const double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    const double dp = legendre(t).second;
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    r.x[i] = mid - half * t;
    r.x[n - 1 - i] = mid + half * t;
    r.w[i] = r.w[n - 1 - i] = half * w;
  }
  return r;
}

/// Trapezoid rule for a periodic integrand on [a, b).
inline Rule1D periodic_trapezoid(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("quadrature order must be positive");
  Rule1D r;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    r.x.push_back(a + (i + 0.5) * h);
    r.w.push_back(h);
  }
  return r;
}

struct QuadratureOrders {
  int lat = 24;
  int lon = 16;
  int radial = 24;

  QuadratureOrders halved() const {
    return {std::max(1, lat / 2), std::max(1, lon / 2), std::max(1, radial / 2)};
  }
  QuadratureOrders doubled() const { return {2 * lat, 2 * lon, 2 * radial}; }
};

/// Product rule over the angle box of S^{2N-1}.
template <int N>
struct AngleRule {
  std::vector<std::array<double, 2 * N - 1>> theta;
  std::vector<double> w;
};

template <int N>
AngleRule<N> angle_rule(int lat_order, int lon_order) {
  constexpr int K = 2 * N - 1;
  std::array<Rule1D, K> axes;
  for (int i = 0; i < N - 1; ++i) axes[i] = gauss_legendre(lat_order, 0.0, std::numbers::pi / 2);
  for (int i = N - 1; i < K; ++i) axes[i] = periodic_trapezoid(lon_order, 0.0, 2 * std::numbers::pi);
  AngleRule<N> r;
  std::array<int, K> idx{};
  while (true) {
    std::array<double, K> th;
    double w = 1.0;
    for (int i = 0; i < K; ++i) {
      th[i] = axes[i].x[idx[i]];
      w *= axes[i].w[idx[i]];
    }
    r.theta.push_back(th);
    r.w.push_back(w);
    int i = K - 1;
    while (i >= 0 && ++idx[i] == int(axes[i].x.size())) idx[i--] = 0;
    if (i < 0) break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Threads and deterministic reduction.

/// Requested thread count; 0 means the KAEHLER_THREADS environment variable
/// or else the hardware concurrency.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KAEHLER_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = fn(i) for i < count, computed on `threads` workers. Results do
/// not depend on the thread count.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn, int threads) {
  std::vector<T> out(count);
  const std::size_t nt = std::min<std::size_t>(std::max(1, threads), std::max<std::size_t>(1, count));
  if (nt <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += nt) out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class T>
T pairwise_sum(const T* v, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = v[0];
    for (std::size_t i = 1; i < n; ++i) acc += v[i];
    return acc;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

// ---------------------------------------------------------------------------
// Node caches.

struct IntegralResult {
  cplx value = 0.0;
  double error_estimate = 0.0;
  std::size_t node_count = 0;
  QuadratureOrders orders;
};

/// Surface nodes with their frames and weights (rule weight times area density).
template <int N>
struct SurfaceNodes {
  std::vector<BoundaryFrame<N>> frames;
  std::vector<double> weights;
  QuadratureOrders orders;

  template <class Fn>
  cplx integrate(Fn&& fn, int threads) const {
    auto vals = parallel_map<cplx>(frames.size(), [&](std::size_t i) { return weights[i] * cplx(fn(frames[i])); },
                                   threads);
    return pairwise_sum(vals);
  }
};

template <int N>
SurfaceNodes<N> surface_nodes(const SpaceForm<N>& space, const Hypersurface<N>& s,
                              const QuadratureOrders& q, int threads) {
  if (!s.parametrized) throw GeometryError("surface integrals need a parametrized surface");
  const auto rule = angle_rule<N>(q.lat, q.lon);
  SurfaceNodes<N> out;
  out.orders = q;
  out.weights.resize(rule.w.size());
  out.frames = parallel_map<BoundaryFrame<N>>(
      rule.w.size(),
      [&](std::size_t i) {
        out.weights[i] = rule.w[i] * area_density(space, s, rule.theta[i]);
        return frame_at(space, s, param_point(s, rule.theta[i]), 1e-9);
      },
      threads);
  return out;
}

template <int N>
struct VolumeNodes {
  std::vector<Point<N>> points;
  std::vector<double> weights;
  QuadratureOrders orders;

  template <class Fn>
  cplx integrate(Fn&& fn, int threads) const {
    auto vals = parallel_map<cplx>(points.size(), [&](std::size_t i) { return weights[i] * cplx(fn(points[i])); },
                                   threads);
    return pairwise_sum(vals);
  }
};

/// Nodes for the star-shaped domain bounded by a parametrized surface.
template <int N>
VolumeNodes<N> volume_nodes(const SpaceForm<N>& space, const Hypersurface<N>& s,
                            const QuadratureOrders& q, int threads) {
  if (!s.parametrized) throw GeometryError("volume integrals need a parametrized boundary");
  const auto rule = angle_rule<N>(q.lat, q.lon);
  const auto rad = gauss_legendre(q.radial, 0.0, 1.0);
  const std::size_t na = rule.w.size(), nr = rad.x.size();
  VolumeNodes<N> out;
  out.orders = q;
  out.weights.resize(na * nr);
  out.points = parallel_map<Point<N>>(
      na * nr,
      [&](std::size_t i) {
        const std::size_t ia = i / nr, ir = i % nr;
        const double t = rad.x[ir];
        Point<N> p = param_point(s, rule.theta[ia]);
        for (auto& c : p.x) c *= t;
        space.validate(p);
        out.weights[i] = rule.w[ia] * rad.w[ir] * volume_density(space, s, t, rule.theta[ia]);
        return p;
      },
      threads);
  return out;
}

/// Integration at orders q and q/2; the difference is the error estimate.
template <int N>
struct SurfaceQuadrature {
  SurfaceNodes<N> fine, coarse;

  SurfaceQuadrature(const SpaceForm<N>& space, const Hypersurface<N>& s, const QuadratureOrders& q,
                    int threads)
      : fine(surface_nodes(space, s, q, threads)), coarse(surface_nodes(space, s, q.halved(), threads)) {}

  template <class Fn>
  IntegralResult integrate(Fn&& fn, int threads) const {
    IntegralResult r;
    r.value = fine.integrate(fn, threads);
    r.error_estimate = std::abs(r.value - coarse.integrate(fn, threads));
    r.node_count = fine.frames.size();
    r.orders = fine.orders;
    return r;
  }
};

template <int N>
struct VolumeQuadrature {
  VolumeNodes<N> fine, coarse;

  VolumeQuadrature(const SpaceForm<N>& space, const Hypersurface<N>& s, const QuadratureOrders& q,
                   int threads)
      : fine(volume_nodes(space, s, q, threads)), coarse(volume_nodes(space, s, q.halved(), threads)) {}

  template <class Fn>
  IntegralResult integrate(Fn&& fn, int threads) const {
    IntegralResult r;
    r.value = fine.integrate(fn, threads);
    r.error_estimate = std::abs(r.value - coarse.integrate(fn, threads));
    r.node_count = fine.points.size();
    r.orders = fine.orders;
    return r;
  }
};

template <int N, class Fn>
IntegralResult surface_integral(const SpaceForm<N>& space, const Hypersurface<N>& s, Fn&& fn,
                                const QuadratureOrders& q, int threads = 1) {
  return SurfaceQuadrature<N>(space, s, q, threads).integrate(fn, threads);
}

template <int N, class Fn>
IntegralResult volume_integral(const SpaceForm<N>& space, const Hypersurface<N>& s, Fn&& fn,
                               const QuadratureOrders& q, int threads = 1) {
  return VolumeQuadrature<N>(space, s, q, threads).integrate(fn, threads);
}

struct Convergence {
  IntegralResult result;
  std::vector<std::pair<int, double>> history;  // (lat order, error estimate)
};

/// Doubles the orders until the error estimate drops to tol or the latitude
/// order would exceed max_lat; the latter throws with the history.
template <class Op>
Convergence converge(Op&& op, QuadratureOrders start, double tol, int max_lat = 128) {
  Convergence c;
  for (QuadratureOrders q = start; q.lat <= max_lat; q = q.doubled()) {
    c.result = op(q);
    c.history.push_back({q.lat, c.result.error_estimate});
    if (c.result.error_estimate <= tol) return c;
  }
  throw QuadratureError("quadrature did not reach tolerance " + std::to_string(tol), c.history);
}

}  // namespace kaehler
