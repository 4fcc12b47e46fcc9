#pragma once
// Shared helpers for the unit tests: seeded generators of chart points and
// tangent vectors.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "kaehler/ambient.hpp"

namespace kt {

using kaehler::cplx;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return (eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    // Box-Muller on the portable uniform, so streams match across platforms.
    const double u = 1.0 - uniform(), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
  }

  /// Uniformly oriented point with |z| in [0, rmax).
  template <int N>
  kaehler::Point<N> point(double rmax) {
    kaehler::Point<N> p;
    double s = 0.0;
    for (auto& c : p.x) {
      c = normal();
      s += c * c;
    }
    const double r = rmax * uniform();
    for (auto& c : p.x) c *= r / std::sqrt(s);
    return p;
  }

  /// Random point well inside the chart of the given space.
  template <int N>
  kaehler::Point<N> chart_point(const kaehler::SpaceForm<N>& space) {
    return point<N>(space.kappa() < 0 ? 0.9 : 2.0);
  }

  template <int N>
  kaehler::TangentVec<N> real_vec() {
    kaehler::TangentVec<N> v;
    for (auto& c : v.c) c = normal();
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

/// Riemann tensor from exact second derivatives of the chart metric (nested
/// duals), in the convention of kaehler::curvature: R(u,v,u,v) is the
/// sectional curvature of an orthonormal pair.
template <int N>
double riemann_ad(const kaehler::SpaceForm<N>& space, const kaehler::Point<N>& p, const kaehler::TangentVec<N>& v1,
                  const kaehler::TangentVec<N>& v2, const kaehler::TangentVec<N>& v3,
                  const kaehler::TangentVec<N>& v4) {
  constexpr int D = 2 * N;
  using D1 = kaehler::Dual<double, D>;
  using D2 = kaehler::Dual<D1, D>;
  kaehler::SVec<D2, N> x;
  for (int a = 0; a < D; ++a) {
    x[a] = D2::variable(D1::variable(p.x[a], a), a);
  }
  const auto G2 = kaehler::real_metric<N>(space.kappa(), x);
  std::vector<double> G(D * D), dG(D * D * D), ddG(D * D * D * D);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      const auto& g = G2[a * D + b];
      G[a * D + b] = g.v.v;
      for (int c = 0; c < D; ++c) {
        dG[(c * D + a) * D + b] = g.v.d[c];
        for (int e = 0; e < D; ++e) ddG[((c * D + e) * D + a) * D + b] = g.d[c].d[e];
      }
    }
  Eigen::MatrixXd Gm(D, D);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) Gm(a, b) = G[a * D + b];
  const Eigen::MatrixXd Gi = Gm.inverse();
  auto d1 = [&](int c, int a, int b) { return dG[(c * D + a) * D + b]; };
  auto d2 = [&](int c, int e, int a, int b) { return ddG[((c * D + e) * D + a) * D + b]; };
  // lowered Christoffel [bc, a] and Gamma^a_bc
  std::vector<double> gam(D * D * D);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c) {
        double acc = 0;
        for (int e = 0; e < D; ++e) acc += Gi(a, e) * (d1(b, e, c) + d1(c, e, b) - d1(e, b, c));
        gam[(a * D + b) * D + c] = 0.5 * acc;
      }
  auto Gam = [&](int a, int b, int c) { return gam[(a * D + b) * D + c]; };
  double acc = 0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          const double w = v1[a].real() * v2[b].real() * v3[c].real() * v4[d].real();
          if (w == 0.0) continue;
          double R = 0.5 * (d2(b, c, a, d) + d2(a, d, b, c) - d2(a, c, b, d) - d2(b, d, a, c));
          for (int e = 0; e < D; ++e)
            for (int f = 0; f < D; ++f)
              R += G[e * D + f] * (Gam(e, b, c) * Gam(f, a, d) - Gam(e, a, c) * Gam(f, b, d));
          acc += w * R;
        }
  return acc;
}

}  // namespace kt
