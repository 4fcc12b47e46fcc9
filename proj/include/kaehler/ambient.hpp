#pragma once
// Complex space forms in a single affine chart: flat C^N (kappa = 0), the ball
// model of CH^N (kappa = -1) and the affine chart of CP^N (kappa = +1).
//
// Conventions. The Hermitian metric is h_{ij} = (1/2) d_i dbar_j phi for the
// Kaehler potential phi, and the real Riemannian metric is
// g(u, v) = 2 Re sum h_{ij} u^i conj(v^j) on (1,0)-components. This makes the
// flat model Euclidean and the holomorphic sectional curvature 4 kappa.
// The complex-bilinear pairing of two complexified vectors u, v (components
// over the real coordinate basis) is u^T G v.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kaehler/dual.hpp"
#include "kaehler/field.hpp"

namespace kaehler {

/// Raised when a point leaves the chart domain or the metric degenerates.
class ChartError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using cplx = std::complex<double>;

template <int N>
using HermitianMat = Eigen::Matrix<cplx, N, N>;

/// Complexified tangent vector: 2N complex components over (d/dx_i, d/dy_i).
template <int N>
struct TangentVec {
  static constexpr int kDim = 2 * N;
  std::array<cplx, kDim> c{};

  cplx& operator[](int a) { return c[a]; }
  const cplx& operator[](int a) const { return c[a]; }

  /// Coefficient of d/dz_i: c_{x_i} + i c_{y_i}.
  cplx holo(int i) const { return c[2 * i] + cplx(0, 1) * c[2 * i + 1]; }
  /// Coefficient of d/dzbar_i: c_{x_i} - i c_{y_i}.
  cplx antiholo(int i) const { return c[2 * i] - cplx(0, 1) * c[2 * i + 1]; }

  /// Complex structure: (a, b) -> (-b, a) on each (x_i, y_i) block.
  TangentVec J() const {
    TangentVec r;
    for (int i = 0; i < N; ++i) {
      r.c[2 * i] = -c[2 * i + 1];
      r.c[2 * i + 1] = c[2 * i];
    }
    return r;
  }
  TangentVec conjugate() const {
    TangentVec r;
    for (int a = 0; a < kDim; ++a) r.c[a] = std::conj(c[a]);
    return r;
  }

  /// The (1,0) vector d/dz_i = (d/dx_i - i d/dy_i) / 2.
  static TangentVec dz(int i) {
    TangentVec r;
    r.c[2 * i] = 0.5;
    r.c[2 * i + 1] = cplx(0, -0.5);
    return r;
  }
  static TangentVec real_basis(int a) {
    TangentVec r;
    r.c[a] = 1.0;
    return r;
  }
  /// Real vector from its (1,0)-components v^i = a_i + i b_i.
  static TangentVec from_holo(const std::array<cplx, N>& v) {
    TangentVec r;
    for (int i = 0; i < N; ++i) {
      r.c[2 * i] = v[i].real();
      r.c[2 * i + 1] = v[i].imag();
    }
    return r;
  }

  friend TangentVec operator+(TangentVec a, const TangentVec& b) {
    for (int k = 0; k < kDim; ++k) a.c[k] += b.c[k];
    return a;
  }
  friend TangentVec operator-(TangentVec a, const TangentVec& b) {
    for (int k = 0; k < kDim; ++k) a.c[k] -= b.c[k];
    return a;
  }
  friend TangentVec operator*(cplx s, TangentVec a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
};

template <int N>
class SpaceForm {
  static_assert(N >= 2, "complex dimension must be at least 2");

 public:
  static constexpr int kDim = 2 * N;
  /// Margin kept from the chart boundary when validating inputs.
  static constexpr double kChartMargin = 1e-8;

  explicit SpaceForm(int kappa, double cp_max_radius = 1e3) : kappa_(kappa), cp_max_(cp_max_radius) {
    if (kappa < -1 || kappa > 1) throw std::invalid_argument("kappa must be -1, 0 or +1");
  }
  static SpaceForm flat() { return SpaceForm(0); }
  static SpaceForm hyperbolic() { return SpaceForm(-1); }
  static SpaceForm projective() { return SpaceForm(1); }

  int kappa() const { return kappa_; }
  static constexpr int n() { return N; }
  static constexpr int m() { return N - 1; }

  /// Euclidean bound on |z| in the chart (1 for the ball model).
  double chart_bound() const {
    if (kappa_ < 0) return 1.0;
    if (kappa_ > 0) return cp_max_;
    return std::numeric_limits<double>::infinity();
  }

  std::string name() const {
    switch (kappa_) {
      case -1:
        return "ch";
      case 1:
        return "cp";
      default:
        return "flat";
    }
  }

  void validate(const Point<N>& p) const {
    for (double c : p.x)
      if (!std::isfinite(c)) throw ChartError("non-finite chart coordinate");
    const double r = p.norm();
    if (kappa_ != 0 && r >= chart_bound() - kChartMargin)
      throw ChartError("point outside the chart domain (|z| = " + std::to_string(r) + ")");
  }

  /// Chart radius |z| of the geodesic sphere of radius r about the origin.
  double chart_radius(double r) const {
    if (kappa_ < 0) return std::tanh(r);
    if (kappa_ > 0) return std::tan(r);
    return r;
  }

 private:
  int kappa_;
  double cp_max_;
};

// ---------------------------------------------------------------------------
// Potentials and the canonical function Phi.

template <int N>
double potential(const SpaceForm<N>& space, const Point<N>& p) {
  space.validate(p);
  const double s = p.norm2();
  switch (space.kappa()) {
    case -1:
      return -std::log(1.0 - s);
    case 1:
      return std::log(1.0 + s);
    default:
      return s;
  }
}

/// The Kaehler potential as an expression field (for the AD cross-check).
template <int N>
ScalarField<N> potential_field(const SpaceForm<N>& space) {
  const auto s = ScalarField<N>::norm2();
  switch (space.kappa()) {
    case -1:
      return -log(1.0 - s);
    case 1:
      return log(1.0 + s);
    default:
      return s;
  }
}

/// The function Phi with complex Hessian equal to the metric: |z|^2/2 (flat),
/// log cosh r (CH) and -log cos r (CP). In every chart this is phi / 2.
template <int N>
ScalarField<N> phi_field(const SpaceForm<N>& space) {
  return 0.5 * potential_field(space);
}

/// Geodesic distance to the chart origin.
template <int N>
double dist_to_center(const SpaceForm<N>& space, const Point<N>& p) {
  space.validate(p);
  const double r = p.norm();
  if (space.kappa() < 0) return std::atanh(r);
  if (space.kappa() > 0) return std::atan(r);
  return r;
}

/// Distance to the origin as an expression field (singular at the origin).
template <int N>
ScalarField<N> dist_field(const SpaceForm<N>& space) {
  const auto r = sqrt(ScalarField<N>::norm2());
  if (space.kappa() < 0) return atanh(r);
  if (space.kappa() > 0) return atan(r);
  return r;
}

// ---------------------------------------------------------------------------
// Metric, generic over the scalar type so it can be differentiated.

template <class S, int N>
using SVec = std::array<S, 2 * N>;
template <class S, int N>
using SMat = std::array<S, 4 * N * N>;

/// Real metric G_ab (row-major 2N x 2N) at chart coordinates x.
template <int N, class S>
SMat<S, N> real_metric(int kappa, const SVec<S, N>& x) {
  constexpr int D = 2 * N;
  S s(0.0);
  for (int a = 0; a < D; ++a) s += x[a] * x[a];
  const S w = 1.0 + double(kappa) * s;
  const S inv_w = 1.0 / w;
  const S k_w2 = double(kappa) * inv_w * inv_w;
  SMat<S, N> G{};
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const S& xi = x[2 * i];
      const S& yi = x[2 * i + 1];
      const S& xj = x[2 * j];
      const S& yj = x[2 * j + 1];
      // 2 Re h_ij and 2 Im h_ij.
      S re = -k_w2 * (xi * xj + yi * yj);
      if (i == j) re += inv_w;
      const S im = -k_w2 * (xi * yj - yi * xj);
      G[(2 * i) * D + 2 * j] = re;
      G[(2 * i + 1) * D + 2 * j + 1] = re;
      G[(2 * i) * D + 2 * j + 1] = im;
      G[(2 * i + 1) * D + 2 * j] = -im;
    }
  }
  return G;
}

/// Solve G y = b for a small dense system (Gaussian elimination, partial
/// pivoting on the value part).
template <class S, int D>
std::array<S, D> solve_dense(std::array<S, D * D> A, std::array<S, D> b) {
  for (int c = 0; c < D; ++c) {
    int piv = c;
    for (int r = c + 1; r < D; ++r)
      if (std::abs(value_of(A[r * D + c])) > std::abs(value_of(A[piv * D + c]))) piv = r;
    if (std::abs(value_of(A[piv * D + c])) < 1e-300) throw ChartError("singular metric");
    if (piv != c) {
      for (int k = 0; k < D; ++k) std::swap(A[c * D + k], A[piv * D + k]);
      std::swap(b[c], b[piv]);
    }
    for (int r = c + 1; r < D; ++r) {
      const S f = A[r * D + c] / A[c * D + c];
      for (int k = c; k < D; ++k) A[r * D + k] -= f * A[c * D + k];
      b[r] -= f * b[c];
    }
  }
  std::array<S, D> y{};
  for (int r = D - 1; r >= 0; --r) {
    S acc = b[r];
    for (int k = r + 1; k < D; ++k) acc -= A[r * D + k] * y[k];
    y[r] = acc / A[r * D + r];
  }
  return y;
}

/// Metric data at a point: G, its inverse, first derivatives and the real
/// Levi-Civita Christoffel symbols Gamma^a_{bc}.
template <int N>
struct MetricJet {
  static constexpr int kDim = 2 * N;
  Eigen::Matrix<double, kDim, kDim> G;
  Eigen::Matrix<double, kDim, kDim> Ginv;
  std::array<double, kDim * kDim * kDim> dG{};     // dG[c][a][b] = d_c G_ab
  std::array<double, kDim * kDim * kDim> gamma{};  // gamma[a][b][c] = Gamma^a_bc

  double d(int c, int a, int b) const { return dG[(c * kDim + a) * kDim + b]; }
  double Gamma(int a, int b, int c) const { return gamma[(a * kDim + b) * kDim + c]; }
};

template <int N>
MetricJet<N> metric_jet(const SpaceForm<N>& space, const Point<N>& p) {
  constexpr int D = 2 * N;
  using Ad = Dual<double, D>;
  SVec<Ad, N> x;
  for (int a = 0; a < D; ++a) x[a] = Ad::variable(p.x[a], a);
  const auto G = real_metric<N>(space.kappa(), x);
  MetricJet<N> mj;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      mj.G(a, b) = G[a * D + b].v;
      for (int c = 0; c < D; ++c) mj.dG[(c * D + a) * D + b] = G[a * D + b].d[c];
    }
  mj.Ginv = mj.G.inverse();
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c) {
        double acc = 0.0;
        for (int e = 0; e < D; ++e)
          acc += mj.Ginv(a, e) * (mj.d(b, e, c) + mj.d(c, e, b) - mj.d(e, b, c));
        mj.gamma[(a * D + b) * D + c] = 0.5 * acc;
      }
  return mj;
}

/// Hermitian metric h_{ij} in closed form.
template <int N>
HermitianMat<N> metric(const SpaceForm<N>& space, const Point<N>& p) {
  space.validate(p);
  const double s = p.norm2();
  const double k = space.kappa();
  const double w = 1.0 + k * s;
  HermitianMat<N> h;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      h(i, j) = 0.5 * ((i == j ? 1.0 / w : 0.0) - k * std::conj(p.z(i)) * p.z(j) / (w * w));
  if (h.llt().info() != Eigen::Success) throw ChartError("metric lost positive definiteness");
  return h;
}

/// Real coordinate representation of a Hermitian matrix pairing, as used by
/// the real metric: G = [[2 Re h, 2 Im h], [-2 Im h, 2 Re h]] blockwise.
template <int N>
Eigen::Matrix<double, 2 * N, 2 * N> real_form(const HermitianMat<N>& h) {
  Eigen::Matrix<double, 2 * N, 2 * N> G;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      G(2 * i, 2 * j) = 2.0 * h(i, j).real();
      G(2 * i + 1, 2 * j + 1) = 2.0 * h(i, j).real();
      G(2 * i, 2 * j + 1) = 2.0 * h(i, j).imag();
      G(2 * i + 1, 2 * j) = -2.0 * h(i, j).imag();
    }
  return G;
}

// ---------------------------------------------------------------------------
// Wirtinger derivatives of a jet.

/// Coordinate-frame Wirtinger data of a jet: F_i = dF/dz_i, F_ibar =
/// dF/dzbar_i and the mixed second derivatives F_{i jbar}.
template <int N>
struct Wirtinger {
  std::array<cplx, N> F_i{};
  std::array<cplx, N> F_ibar{};
  HermitianMat<N> F_ijbar;  // not Hermitian for complex F; same storage shape
};

template <int N>
Wirtinger<N> wirtinger(const Jet2<N>& j) {
  const cplx I(0, 1);
  Wirtinger<N> w;
  for (int i = 0; i < N; ++i) {
    w.F_i[i] = 0.5 * (j.grad[2 * i] - I * j.grad[2 * i + 1]);
    w.F_ibar[i] = 0.5 * (j.grad[2 * i] + I * j.grad[2 * i + 1]);
  }
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      const int xi = 2 * i, yi = 2 * i + 1, xk = 2 * k, yk = 2 * k + 1;
      w.F_ijbar(i, k) =
          0.25 * (j.h(xi, xk) + j.h(yi, yk) + I * (j.h(xi, yk) - j.h(yi, xk)));
    }
  return w;
}

/// Metric obtained by second-order AD of the potential (cross-check path).
template <int N>
HermitianMat<N> metric_from_potential(const SpaceForm<N>& space, const Point<N>& p) {
  space.validate(p);
  const RealJet<N> phi = potential_field(space).jet(p);
  return 0.5 * wirtinger(Jet2<N>::from_parts(phi, RealJet<N>{})).F_ijbar;
}

/// Holomorphic Christoffel symbols Gamma^k_{ij} = h^{k lbar} d_i h_{j lbar},
/// returned as gamma[k][i][j].
template <int N>
std::array<std::array<std::array<cplx, N>, N>, N> christoffel(const SpaceForm<N>& space,
                                                                const Point<N>& p) {
  space.validate(p);
  const MetricJet<N> mj = metric_jet(space, p);
  const cplx I(0, 1);
  // d_a h_{jl} = (d_a G[x_j][x_l] + i d_a G[x_j][y_l]) / 2.
  auto dh = [&](int a, int j, int l) {
    return 0.5 * (mj.d(a, 2 * j, 2 * l) + I * mj.d(a, 2 * j, 2 * l + 1));
  };
  const HermitianMat<N> h = metric(space, p);
  const HermitianMat<N> W = h.transpose().inverse();
  std::array<std::array<std::array<cplx, N>, N>, N> g{};
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        cplx acc = 0.0;
        for (int l = 0; l < N; ++l) {
          const cplx d_i = 0.5 * (dh(2 * i, j, l) - I * dh(2 * i + 1, j, l));
          acc += W(k, l) * d_i;
        }
        g[k][i][j] = acc;
      }
  return g;
}

/// Covariant derivative of a constant-coefficient vector field v along u at
/// p, i.e. Gamma(u, v), for complexified vectors.
template <int N>
TangentVec<N> gamma_apply(const MetricJet<N>& mj, const TangentVec<N>& u, const TangentVec<N>& v) {
  constexpr int D = 2 * N;
  TangentVec<N> r;
  for (int a = 0; a < D; ++a) {
    cplx acc = 0.0;
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c) acc += mj.Gamma(a, b, c) * u[b] * v[c];
    r[a] = acc;
  }
  return r;
}

/// Complex-bilinear pairing u^T G v.
template <int N>
cplx pairing(const Eigen::Matrix<double, 2 * N, 2 * N>& G, const TangentVec<N>& u,
             const TangentVec<N>& v) {
  cplx acc = 0.0;
  for (int a = 0; a < 2 * N; ++a)
    for (int b = 0; b < 2 * N; ++b) acc += u[a] * G(a, b) * v[b];
  return acc;
}

// ---------------------------------------------------------------------------
// Curvature.

/// Riemann tensor of a complex space form in closed form:
/// R(v1,v2,v3,v4) = kappa [<v1,v3><v2,v4> - <v1,v4><v2,v3> + <v1,Jv3><v2,Jv4>
///                          - <v1,Jv4><v2,Jv3> + 2<v1,Jv2><v3,Jv4>].
/// With this convention R(u,v,u,v) is the sectional curvature of an
/// orthonormal pair.
template <int N>
cplx curvature(const SpaceForm<N>& space, const Point<N>& p, const TangentVec<N>& v1,
               const TangentVec<N>& v2, const TangentVec<N>& v3, const TangentVec<N>& v4) {
  space.validate(p);
  const auto G = real_form(metric(space, p));
  auto ip = [&](const TangentVec<N>& a, const TangentVec<N>& b) { return pairing<N>(G, a, b); };
  const double k = space.kappa();
  return k * (ip(v1, v3) * ip(v2, v4) - ip(v1, v4) * ip(v2, v3) + ip(v1, v3.J()) * ip(v2, v4.J()) -
              ip(v1, v4.J()) * ip(v2, v3.J()) + 2.0 * ip(v1, v2.J()) * ip(v3, v4.J()));
}

/// Riemann tensor R^a_{bcd} from central differences of the Christoffel
/// symbols with one Richardson step; R(v1,v2,v3,v4) = <R(v1,v2)v4, v3>.
template <int N>
cplx curvature_from_metric(const SpaceForm<N>& space, const Point<N>& p, const TangentVec<N>& v1,
                           const TangentVec<N>& v2, const TangentVec<N>& v3,
                           const TangentVec<N>& v4, double step = 1e-4) {
  constexpr int D = 2 * N;
  space.validate(p);
  const MetricJet<N> mj = metric_jet(space, p);
  // dgamma[c][a][b][d] = d_c Gamma^a_{bd}
  std::array<double, D * D * D * D> dgam{};
  for (int c = 0; c < D; ++c) {
    Point<N> pp = p, pm = p, pp2 = p, pm2 = p;
    pp.x[c] += step;
    pm.x[c] -= step;
    pp2.x[c] += 0.5 * step;
    pm2.x[c] -= 0.5 * step;
    const auto gp = metric_jet(space, pp), gm = metric_jet(space, pm);
    const auto gp2 = metric_jet(space, pp2), gm2 = metric_jet(space, pm2);
    for (int idx = 0; idx < D * D * D; ++idx) {
      const double d1 = (gp.gamma[idx] - gm.gamma[idx]) / (2.0 * step);
      const double d2 = (gp2.gamma[idx] - gm2.gamma[idx]) / step;
      dgam[c * D * D * D + idx] = (4.0 * d2 - d1) / 3.0;
    }
  }
  auto dG = [&](int c, int a, int b, int d) { return dgam[((c * D + a) * D + b) * D + d]; };
  cplx acc = 0.0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          double R = dG(c, a, d, b) - dG(d, a, c, b);
          for (int e = 0; e < D; ++e)
            R += mj.Gamma(a, c, e) * mj.Gamma(e, d, b) - mj.Gamma(a, d, e) * mj.Gamma(e, c, b);
          if (R == 0.0) continue;
          cplx lowered = 0.0;
          for (int f = 0; f < D; ++f) lowered += mj.G(a, f) * v3[f];
          acc += lowered * R * v4[b] * v1[c] * v2[d];
        }
  return acc;
}

// ---------------------------------------------------------------------------
// Geodesics through the homogeneous models.

/// Point reached at time t along the geodesic from p with initial velocity v
/// (real vector). Flat: affine; CP: great circle in the unit sphere of
/// C^{N+1}; CH: the analogous curve in the indefinite model C^{N,1}.
template <int N>
Point<N> geodesic(const SpaceForm<N>& space, const Point<N>& p, const TangentVec<N>& v, double t) {
  space.validate(p);
  for (const auto& c : v.c)
    if (std::abs(c.imag()) > 1e-14) throw std::invalid_argument("geodesic needs a real vector");
  if (space.kappa() == 0) {
    Point<N> q = p;
    for (int a = 0; a < 2 * N; ++a) q.x[a] += t * v[a].real();
    return q;
  }
  const double k = space.kappa();
  // Hermitian form of signature (1, N) or (N+1, 0): <a,b> = k a0 conj(b0) + sum ai conj(bi).
  auto form = [&](const std::array<cplx, N + 1>& a, const std::array<cplx, N + 1>& b) {
    cplx acc = k * a[0] * std::conj(b[0]);
    for (int i = 1; i <= N; ++i) acc += a[i] * std::conj(b[i]);
    return acc;
  };
  std::array<cplx, N + 1> zeta{}, dzeta{};
  zeta[0] = 1.0;
  for (int i = 0; i < N; ++i) {
    zeta[i + 1] = p.z(i);
    dzeta[i + 1] = v.holo(i);
  }
  const double nrm = std::sqrt(std::abs(form(zeta, zeta).real()));
  std::array<cplx, N + 1> xi{}, eta{};
  for (int i = 0; i <= N; ++i) xi[i] = zeta[i] / nrm;
  // Horizontal projection; <xi, xi> = k.
  const cplx c = form(dzeta, xi) / k;
  for (int i = 0; i <= N; ++i) eta[i] = (dzeta[i] - c * xi[i]) / nrm;
  const double speed = std::sqrt(form(eta, eta).real());
  std::array<cplx, N + 1> gam{};
  if (speed == 0.0) return p;
  const double ct = k > 0 ? std::cos(speed * t) : std::cosh(speed * t);
  const double st = k > 0 ? std::sin(speed * t) : std::sinh(speed * t);
  for (int i = 0; i <= N; ++i) gam[i] = ct * xi[i] + st * eta[i] / speed;
  if (std::abs(gam[0]) < 1e-300) throw ChartError("geodesic leaves the affine chart");
  std::array<cplx, N> zs{};
  for (int i = 0; i < N; ++i) zs[i] = gam[i + 1] / gam[0];
  Point<N> q = Point<N>::from_complex(zs);
  space.validate(q);
  return q;
}

/// Metric norm of a real tangent vector.
template <int N>
double metric_norm(const SpaceForm<N>& space, const Point<N>& p, const TangentVec<N>& v) {
  const auto G = real_form(metric(space, p));
  return std::sqrt(std::abs(pairing<N>(G, v, v.conjugate())));
}

}  // namespace kaehler
