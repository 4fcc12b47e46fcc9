#pragma once
// Scalar-field calculus on a space form: complex Hessian, the complex
// Laplacian box F = h^{i jbar} F_{i jbar}, |D^{1,1}F|^2, |dbar F|^2 and the
// real covariant Hessian used by the boundary operators.
//
// On a Kaehler manifold the mixed Christoffel symbols vanish, so the (1,1)
// part of the covariant Hessian is the raw mixed partial d_i dbar_j F.

#include <complex>

#include "kaehler/ambient.hpp"
#include "kaehler/field.hpp"

namespace kaehler {

template <int N>
struct ComplexHessian {
  HermitianMat<N> F;  // F_{i jbar} in the coordinate frame
  HermitianMat<N> h;  // metric h_{i jbar} at the same point
  HermitianMat<N> hinv;

  /// Trace against the metric: box F.
  cplx trace() const { return (hinv * F).trace(); }
  /// Squared Hermitian norm, independent of the unitary frame.
  double norm2() const { return (F * hinv * F.adjoint() * hinv).trace().real(); }
};

template <int N>
ComplexHessian<N> complex_hessian(const SpaceForm<N>& space, const Jet2<N>& j, const Point<N>& p) {
  ComplexHessian<N> H;
  H.F = wirtinger(j).F_ijbar;
  H.h = metric(space, p);
  H.hinv = H.h.inverse();
  return H;
}

template <int N>
ComplexHessian<N> complex_hessian(const SpaceForm<N>& space, const ComplexField<N>& F,
                                  const Point<N>& p) {
  return complex_hessian(space, F.jet(p), p);
}

template <int N>
cplx box(const SpaceForm<N>& space, const ComplexField<N>& F, const Point<N>& p) {
  return complex_hessian(space, F, p).trace();
}

template <int N>
double d11_norm2(const SpaceForm<N>& space, const ComplexField<N>& F, const Point<N>& p) {
  return complex_hessian(space, F, p).norm2();
}

/// |dbar F|^2 = v^* conj(h^{-1}) v with v_i = dF/dzbar_i.
template <int N>
double dbar_norm2(const HermitianMat<N>& hinv, const Jet2<N>& j) {
  const auto w = wirtinger(j);
  Eigen::Matrix<cplx, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = w.F_ibar[i];
  return (v.adjoint() * hinv.conjugate() * v)(0, 0).real();
}

template <int N>
double dbar_norm2(const SpaceForm<N>& space, const ComplexField<N>& F, const Point<N>& p) {
  return dbar_norm2<N>(metric(space, p).inverse(), F.jet(p));
}

/// Directional derivative dF(u) for a complexified vector u.
template <int N>
cplx directional(const Jet2<N>& j, const TangentVec<N>& u) {
  cplx acc = 0.0;
  for (int a = 0; a < 2 * N; ++a) acc += j.grad[a] * u[a];
  return acc;
}

/// Covariant Hessian D^2F(u, v) = u^a v^b (F_ab - Gamma^c_ab F_c).
template <int N>
cplx covariant_hessian(const MetricJet<N>& mj, const Jet2<N>& j, const TangentVec<N>& u,
                       const TangentVec<N>& v) {
  constexpr int D = 2 * N;
  cplx acc = 0.0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      cplx hab = j.h(a, b);
      for (int c = 0; c < D; ++c) hab -= mj.Gamma(c, a, b) * j.grad[c];
      acc += u[a] * v[b] * hab;
    }
  return acc;
}

/// Laplace-Beltrami operator G^{ab}(F_ab - Gamma^c_ab F_c).
template <int N>
cplx laplace_beltrami(const MetricJet<N>& mj, const Jet2<N>& j) {
  constexpr int D = 2 * N;
  cplx acc = 0.0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      cplx hab = j.h(a, b);
      for (int c = 0; c < D; ++c) hab -= mj.Gamma(c, a, b) * j.grad[c];
      acc += mj.Ginv(a, b) * hab;
    }
  return acc;
}

template <int N>
cplx laplace_beltrami(const SpaceForm<N>& space, const ComplexField<N>& F, const Point<N>& p) {
  return laplace_beltrami(metric_jet(space, p), F.jet(p));
}

/// Metric gradient G^{-1} dF as a complexified vector.
template <int N>
TangentVec<N> gradient(const MetricJet<N>& mj, const Jet2<N>& j) {
  TangentVec<N> g;
  for (int a = 0; a < 2 * N; ++a) {
    cplx acc = 0.0;
    for (int b = 0; b < 2 * N; ++b) acc += mj.Ginv(a, b) * j.grad[b];
    g[a] = acc;
  }
  return g;
}

}  // namespace kaehler
