#pragma once
// Tangential operators on a hypersurface: the CR derivatives f_a = X_a f and
// f_abar = conj(X_a) f, the Kohn Laplacian from the unitary frame, the
// divergence of T, and the submanifold relations for the surface Laplacian.
//
// A boundary function is an ambient field F; all derivatives are taken along
// frame fields, which are tangent, so only f = F|Sigma matters.

#include <array>
#include <cmath>
#include <complex>

#include "kaehler/hypersurface.hpp"
#include "kaehler/jets.hpp"
#include "kaehler/quadrature.hpp"
#include "kaehler/report.hpp"

namespace kaehler {

/// U(V F) = U^b (d_b V^a) F_a + U^b V^a F_ab.
template <int N>
cplx second_along(const Jet2<N>& j, const TangentVec<N>& u, const VecField<N>& V) {
  constexpr int D = 2 * N;
  cplx acc = directional(j, V.along(u));
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) acc += u[b] * V.v[a] * j.h(a, b);
  return acc;
}

/// f_abar = conj(X_a) F.
template <int N>
std::array<cplx, N - 1> dbar_b(const BoundaryFrame<N>& f, const Jet2<N>& j) {
  std::array<cplx, N - 1> out{};
  for (int al = 0; al < N - 1; ++al) out[al] = directional(j, f.X[al].v.conjugate());
  return out;
}

/// f_a = X_a F.
template <int N>
std::array<cplx, N - 1> d_b(const BoundaryFrame<N>& f, const Jet2<N>& j) {
  std::array<cplx, N - 1> out{};
  for (int al = 0; al < N - 1; ++al) out[al] = directional(j, f.X[al].v);
  return out;
}

/// Kohn Laplacian from the frame formula
///   X_a conj(X_a) f - <nabla_{X_a} conj(X_a), X_b> conj(X_b) f + i Pi(T, X_a) conj(X_a) f.
template <int N>
cplx kohn_laplacian(const BoundaryFrame<N>& f, const Jet2<N>& j) {
  constexpr int M = N - 1;
  const auto fbar = dbar_b(f, j);
  const cplx I(0, 1);
  cplx acc = 0.0;
  for (int al = 0; al < M; ++al) {
    const VecField<N> Xb = f.X[al].conjugate();
    acc += second_along(j, f.X[al].v, Xb);
    const TangentVec<N> nab = f.cov(f.X[al].v, Xb);
    for (int be = 0; be < M; ++be) acc -= f.pair(nab, f.X[be].v) * fbar[be];
    acc += I * f.Pi_TX[al] * fbar[al];
  }
  return acc;
}

/// Divergence of T on the surface:
/// <nabla_T T, T> + sum <nabla_{X_a} T, conj X_a> + <nabla_{conj X_a} T, X_a>.
template <int N>
double div_T(const BoundaryFrame<N>& f) {
  cplx acc = f.pair(f.cov(f.T.v, f.T), f.T.v);
  for (int al = 0; al < N - 1; ++al) {
    const auto& X = f.X[al].v;
    acc += f.pair(f.cov(X, f.T), X.conjugate()) + f.pair(f.cov(X.conjugate(), f.T), X);
  }
  return acc.real();
}

/// Surface Laplacian from the ambient extension:
/// Delta_Sigma f = Delta F - D^2F(nu, nu) - H nu F.
template <int N>
cplx surface_laplacian(const BoundaryFrame<N>& f, const Jet2<N>& j) {
  return laplace_beltrami(f.mj, j) - covariant_hessian(f.mj, j, f.nu.v, f.nu.v) -
         f.H * directional(j, f.nu.v);
}

/// Intrinsic Hessian D^2 f(T, T) = D^2F(T, T) - alpha nu F.
template <int N>
cplx surface_hessian_TT(const BoundaryFrame<N>& f, const Jet2<N>& j) {
  return covariant_hessian(f.mj, j, f.T.v, f.T.v) - f.alpha * directional(j, f.nu.v);
}

/// Both sides of 2 box_b f = Delta_Sigma f - D^2 f(T,T) + i[2 Pi(T,X_a) f_abar - H_b T f].
template <int N>
std::pair<cplx, cplx> compare_sides(const BoundaryFrame<N>& f, const Jet2<N>& j) {
  const cplx I(0, 1);
  const auto fbar = dbar_b(f, j);
  cplx pit = 0.0;
  for (int al = 0; al < N - 1; ++al) pit += f.Pi_TX[al] * fbar[al];
  const cplx lhs = 2.0 * kohn_laplacian(f, j);
  const cplx rhs = surface_laplacian(f, j) - surface_hessian_TT(f, j) +
                   I * (2.0 * pit - f.H_b * directional(j, f.T.v));
  return {lhs, rhs};
}

template <int N>
double compare_residual(const BoundaryFrame<N>& f, const Jet2<N>& j) {
  const auto [l, r] = compare_sides(f, j);
  return std::abs(l - r);
}

/// Kohn Laplacian with the second tangential derivative X_a(conj(X_a) F)
/// taken by central differences along parameter curves (step h, one
/// Richardson step); cross-check for the AD path on parametrized surfaces.
template <int N>
cplx kohn_laplacian_fd(const SpaceForm<N>& space, const Hypersurface<N>& s, const ComplexField<N>& F,
                       const std::array<double, 2 * N - 1>& th, double h = 1e-3) {
  constexpr int K = 2 * N - 1;
  constexpr int M = N - 1;
  const BoundaryFrame<N> f = frame_at(space, s, param_point(s, th));
  const Jet2<N> j = F.jet(f.p);
  const auto E = param_jacobian(s, th);
  // u(theta) = conj(X_a) F at the surface point with parameter theta.
  auto u = [&](const std::array<double, K>& t, int al) {
    const auto g = frame_at(space, s, param_point(s, t));
    return directional(F.jet(g.p), g.X[al].v.conjugate());
  };
  // Parameter-space components of a tangent vector: E c = v (least squares, exact for tangent v).
  auto param_components = [&](const TangentVec<N>& v) {
    Eigen::Matrix<cplx, 2 * N, 1> rhs;
    for (int a = 0; a < 2 * N; ++a) rhs(a) = v[a];
    const Eigen::Matrix<cplx, 2 * N, K> Ec = E.template cast<cplx>();
    return Eigen::Matrix<cplx, K, 1>(Ec.colPivHouseholderQr().solve(rhs));
  };
  const cplx I(0, 1);
  const auto fbar = dbar_b(f, j);
  cplx acc = 0.0;
  for (int al = 0; al < M; ++al) {
    const auto c = param_components(f.X[al].v);
    cplx d = 0.0;
    for (int i = 0; i < K; ++i) {
      auto diff = [&](double step) {
        auto tp = th, tm = th;
        tp[i] += step;
        tm[i] -= step;
        return (u(tp, al) - u(tm, al)) / (2 * step);
      };
      d += c(i) * (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
    }
    acc += d;
    const TangentVec<N> nab = f.cov(f.X[al].v, f.X[al].conjugate());
    for (int be = 0; be < M; ++be) acc -= f.pair(nab, f.X[be].v) * fbar[be];
    acc += I * f.Pi_TX[al] * fbar[al];
  }
  return acc;
}

/// Integration by parts for the Kohn Laplacian:
/// int sum f_abar conj(g_abar) = -int (box_b f) conj(g).
template <int N>
ResidualReport duality_check(const SurfaceQuadrature<N>& sq, const ComplexField<N>& F,
                             const ComplexField<N>& G, double tol, int threads = 1) {
  auto lhs_fn = [&](const BoundaryFrame<N>& f) {
    const auto a = dbar_b(f, F.jet(f.p));
    const auto b = dbar_b(f, G.jet(f.p));
    cplx acc = 0.0;
    for (int al = 0; al < N - 1; ++al) acc += a[al] * std::conj(b[al]);
    return acc;
  };
  auto rhs_fn = [&](const BoundaryFrame<N>& f) {
    return -kohn_laplacian(f, F.jet(f.p)) * std::conj(G(f.p));
  };
  auto scale_fn = [&](const BoundaryFrame<N>& f) {
    const auto a = dbar_b(f, F.jet(f.p));
    const auto b = dbar_b(f, G.jet(f.p));
    double acc = std::abs(kohn_laplacian(f, F.jet(f.p)) * G(f.p));
    for (int al = 0; al < N - 1; ++al) acc += std::abs(a[al] * b[al]);
    return acc;
  };
  const auto L = sq.integrate(lhs_fn, threads);
  const auto R = sq.integrate(rhs_fn, threads);
  const auto S = sq.integrate(scale_fn, threads);
  auto r = equality_report("kohn-duality", "Kohn Laplacian integration by parts", L.value, R.value, tol,
                           S.value.real());
  r.lat = L.orders.lat;
  r.lon = L.orders.lon;
  r.nodes = L.node_count;
  r.quad_error = std::max(L.error_estimate, R.error_estimate);
  return r;
}

}  // namespace kaehler
