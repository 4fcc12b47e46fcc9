#pragma once
// Real hypersurfaces of a space form.
//
// Every surface carries an implicit description rho (nu points where rho
// increases). Spheres and chart ellipsoids also carry a star-shaped
// parametrization z_j = scale_j * omega_j(theta) over Hopf-type angles of the
// unit sphere S^{2N-1}, which is what the quadrature integrates over.
//
// Frames are built from rho by forward-mode AD in the chart coordinates, so
// each frame vector comes with its first derivatives. The normal is extended
// off the surface by the same normalized-gradient formula on nearby level
// sets; only tangential derivatives of the frame are ever consumed.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kaehler/ambient.hpp"
#include "kaehler/dual.hpp"
#include "kaehler/field.hpp"
#include "kaehler/jets.hpp"

namespace kaehler {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SurfaceKind { kSphere, kTube, kEllipsoid, kLevelSet };

template <int N>
struct Hypersurface {
  SurfaceKind kind = SurfaceKind::kLevelSet;
  ScalarField<N> rho;
  double a = 0.0;                 // sphere / tube radius
  int k = 0;                      // tube core dimension
  bool parametrized = false;      // star parametrization available
  std::array<double, 2 * N> scales{};  // real chart semi-axes of the star parametrization

  std::string tag() const {
    switch (kind) {
      case SurfaceKind::kSphere:
        return "sphere(" + std::to_string(a) + ")";
      case SurfaceKind::kTube:
        return "tube(" + std::to_string(k) + "," + std::to_string(a) + ")";
      case SurfaceKind::kEllipsoid: {
        std::string s = "ellipsoid(";
        for (int a = 0; a < 2 * N; ++a) s += (a ? "," : "") + std::to_string(scales[a]);
        return s + ")";
      }
      default:
        return "levelset";
    }
  }
};

/// Geodesic sphere of radius a about the chart origin, rho = r - a.
template <int N>
Hypersurface<N> sphere(const SpaceForm<N>& space, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  if (space.kappa() > 0 && a >= std::numbers::pi / 2)
    throw std::invalid_argument("radius must be < pi/2 in CP");
  const double R = space.chart_radius(a);
  if (R >= space.chart_bound() - SpaceForm<N>::kChartMargin)
    throw std::invalid_argument("sphere leaves the chart");
  Hypersurface<N> s;
  s.kind = SurfaceKind::kSphere;
  s.a = a;
  s.rho = dist_field(space) - a;
  s.parametrized = true;
  s.scales.fill(R);
  return s;
}

/// Tube of radius a about the totally geodesic CP^k = {z_{k+1} = ... = z_N = 0}
/// (1-based), via sin^2 d = |w|^2 / (1 + |z|^2) with w the last N-k
/// coordinates.
template <int N>
Hypersurface<N> tube(const SpaceForm<N>& space, int k, double a) {
  if (space.kappa() != 1) throw std::invalid_argument("tubes are only defined in CP");
  if (k < 0 || k > N - 1) throw std::invalid_argument("tube core dimension must satisfy 0 <= k <= m");
  if (!(a > 0.0) || a >= std::numbers::pi / 2)
    throw std::invalid_argument("tube radius must lie in (0, pi/2)");
  ScalarField<N> w2(0.0);
  for (int j = k; j < N; ++j)
    w2 = w2 + ScalarField<N>::coord(2 * j) * ScalarField<N>::coord(2 * j) +
         ScalarField<N>::coord(2 * j + 1) * ScalarField<N>::coord(2 * j + 1);
  const double s = std::sin(a);
  Hypersurface<N> t;
  t.kind = SurfaceKind::kTube;
  t.a = a;
  t.k = k;
  t.rho = w2 / (1.0 + ScalarField<N>::norm2()) - s * s;
  if (k == 0) {
    t.parametrized = true;
    t.scales.fill(space.chart_radius(a));
  }
  return t;
}

/// Chart ellipsoid sum x_a^2 / s_a^2 = 1 with one semi-axis per real coordinate.
template <int N>
Hypersurface<N> real_ellipsoid(const SpaceForm<N>& space, const std::array<double, 2 * N>& semi) {
  ScalarField<N> q(0.0);
  double amax = 0.0;
  for (int a = 0; a < 2 * N; ++a) {
    if (!(semi[a] > 0.0)) throw std::invalid_argument("ellipsoid semi-axes must be positive");
    amax = std::max(amax, semi[a]);
    q = q + (1.0 / (semi[a] * semi[a])) * (ScalarField<N>::coord(a) * ScalarField<N>::coord(a));
  }
  if (amax >= space.chart_bound() - SpaceForm<N>::kChartMargin)
    throw std::invalid_argument("ellipsoid leaves the chart");
  Hypersurface<N> e;
  e.kind = SurfaceKind::kEllipsoid;
  e.rho = q - 1.0;
  e.parametrized = true;
  e.scales = semi;
  return e;
}

/// Chart ellipsoid sum |z_j|^2 / a_j^2 = 1.
template <int N>
Hypersurface<N> ellipsoid(const SpaceForm<N>& space, const std::array<double, N>& semi) {
  std::array<double, 2 * N> s;
  for (int j = 0; j < N; ++j) s[2 * j] = s[2 * j + 1] = semi[j];
  return real_ellipsoid(space, s);
}

template <int N>
Hypersurface<N> level_set(const ScalarField<N>& rho) {
  Hypersurface<N> s;
  s.rho = rho;
  return s;
}

// ---------------------------------------------------------------------------
// Star parametrization over the angle box.

/// Number of angles: N-1 latitudes eta in [0, pi/2] then N longitudes xi in
/// [0, 2 pi].
template <int N>
constexpr int kAngles = 2 * N - 1;

template <int N>
std::array<double, 2 * N - 1> angle_box_upper() {
  std::array<double, 2 * N - 1> u{};
  for (int i = 0; i < N - 1; ++i) u[i] = std::numbers::pi / 2;
  for (int i = N - 1; i < 2 * N - 1; ++i) u[i] = 2 * std::numbers::pi;
  return u;
}

template <class T, int N>
SVec<T, N> star_map(const std::array<double, 2 * N>& scales, const std::array<T, 2 * N - 1>& th) {
  std::array<T, N> r;
  T prod(1.0);
  for (int j = 0; j < N - 1; ++j) {
    r[j] = prod * cos(th[j]);
    prod = prod * sin(th[j]);
  }
  r[N - 1] = prod;
  SVec<T, N> x;
  for (int j = 0; j < N; ++j) {
    const T& xi = th[N - 1 + j];
    x[2 * j] = scales[2 * j] * r[j] * cos(xi);
    x[2 * j + 1] = scales[2 * j + 1] * r[j] * sin(xi);
  }
  return x;
}

template <int N>
Point<N> param_point(const Hypersurface<N>& s, const std::array<double, 2 * N - 1>& th) {
  if (!s.parametrized) throw GeometryError("surface has no parametrization");
  Point<N> p;
  p.x = star_map<double, N>(s.scales, th);
  return p;
}

/// Tangent images E (2N x (2N-1)) of the parametrization and |det[P, E]|.
template <int N>
Eigen::Matrix<double, 2 * N, 2 * N - 1> param_jacobian(const Hypersurface<N>& s,
                                                     const std::array<double, 2 * N - 1>& th) {
  constexpr int K = 2 * N - 1;
  using Ad = Dual<double, K>;
  std::array<Ad, K> t;
  for (int i = 0; i < K; ++i) t[i] = Ad::variable(th[i], i);
  const auto x = star_map<Ad, N>(s.scales, t);
  Eigen::Matrix<double, 2 * N, K> E;
  for (int a = 0; a < 2 * N; ++a)
    for (int i = 0; i < K; ++i) E(a, i) = x[a].d[i];
  return E;
}

/// Riemannian area density sqrt(det E^T G E) at the parameter point.
template <int N>
double area_density(const SpaceForm<N>& space, const Hypersurface<N>& s,
                    const std::array<double, 2 * N - 1>& th) {
  const auto E = param_jacobian(s, th);
  const auto G = metric_jet(space, param_point(s, th)).G;
  const double det = (E.transpose() * G * E).determinant();
  if (!(det > 0.0)) throw GeometryError("rank-deficient parametrization");
  return std::sqrt(det);
}

/// Volume density of (t, theta) -> t P(theta) at radial fraction t.
template <int N>
double volume_density(const SpaceForm<N>& space, const Hypersurface<N>& s, double t,
                      const std::array<double, 2 * N - 1>& th) {
  const auto E = param_jacobian(s, th);
  const Point<N> P = param_point(s, th);
  Eigen::Matrix<double, 2 * N, 2 * N> M;
  for (int a = 0; a < 2 * N; ++a) {
    M(a, 0) = P.x[a];
    for (int i = 0; i < 2 * N - 1; ++i) M(a, i + 1) = E(a, i);
  }
  Point<N> x = P;
  for (auto& c : x.x) c *= t;
  const double sqrt_g = std::sqrt(metric_jet(space, x).G.determinant());
  return std::pow(t, 2 * N - 1) * std::abs(M.determinant()) * sqrt_g;
}

/// Unit normal and mean curvature from the parametrization alone (second
/// derivatives by nested AD); cross-check for the implicit frame.
template <int N>
struct ParamGeometry {
  TangentVec<N> nu;
  double H = 0.0;
  double area = 0.0;
};

template <int N>
ParamGeometry<N> param_geometry(const SpaceForm<N>& space, const Hypersurface<N>& s,
                                const std::array<double, 2 * N - 1>& th) {
  constexpr int K = 2 * N - 1;
  constexpr int D = 2 * N;
  using Ad = Dual<double, K>;
  using Ad2 = Dual<Ad, K>;
  std::array<Ad2, K> t;
  for (int i = 0; i < K; ++i) {
    t[i] = Ad2::variable(Ad::variable(th[i], i), i);
  }
  const auto x = star_map<Ad2, N>(s.scales, t);
  Eigen::Matrix<double, D, K> E;
  std::array<Eigen::Matrix<double, D, 1>, K * K> E2;
  for (int a = 0; a < D; ++a)
    for (int i = 0; i < K; ++i) {
      E(a, i) = x[a].d[i].v;
      for (int j = 0; j < K; ++j) E2[i * K + j](a) = x[a].d[i].d[j];
    }
  Point<N> p;
  for (int a = 0; a < D; ++a) p.x[a] = x[a].v.v;
  space.validate(p);
  const MetricJet<N> mj = metric_jet(space, p);
  // Covector annihilating the tangent images: cofactor expansion.
  Eigen::Matrix<double, D, 1> c;
  for (int a = 0; a < D; ++a) {
    Eigen::Matrix<double, D - 1, K> minor;
    for (int b = 0, r = 0; b < D; ++b) {
      if (b == a) continue;
      minor.row(r++) = E.row(b);
    }
    c(a) = ((a % 2) ? -1.0 : 1.0) * minor.determinant();
  }
  Eigen::Matrix<double, D, 1> n = mj.Ginv * c;
  n /= std::sqrt(n.dot(mj.G * n));
  // Orient outward: same side as the gradient of rho.
  const auto jr = s.rho.jet(p);
  double side = 0.0;
  for (int a = 0; a < D; ++a) side += jr.g[a] * n(a);
  if (side < 0) n = -n;
  const Eigen::Matrix<double, K, K> I = E.transpose() * mj.G * E;
  Eigen::Matrix<double, K, K> Pi;
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      Eigen::Matrix<double, D, 1> acc = E2[i * K + j];
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
          for (int e = 0; e < D; ++e) acc(a) += mj.Gamma(a, b, e) * E(b, i) * E(e, j);
      Pi(i, j) = -n.dot(mj.G * acc);
    }
  ParamGeometry<N> g;
  for (int a = 0; a < D; ++a) g.nu[a] = n(a);
  g.H = (I.inverse() * Pi).trace();
  g.area = std::sqrt(I.determinant());
  return g;
}

// ---------------------------------------------------------------------------
// Frames.

/// A vector field along the surface with its chart derivatives d[b] = d_b V.
template <int N>
struct VecField {
  TangentVec<N> v;
  std::array<TangentVec<N>, 2 * N> d{};

  /// Componentwise derivative u^b d_b V.
  TangentVec<N> along(const TangentVec<N>& u) const {
    TangentVec<N> r;
    for (int b = 0; b < 2 * N; ++b)
      for (int a = 0; a < 2 * N; ++a) r[a] += u[b] * d[b][a];
    return r;
  }
  VecField conjugate() const {
    VecField r;
    r.v = v.conjugate();
    for (int b = 0; b < 2 * N; ++b) r.d[b] = d[b].conjugate();
    return r;
  }
};

template <int N>
struct BoundaryFrame {
  static constexpr int M = N - 1;
  using MatM = Eigen::Matrix<cplx, M, M>;

  Point<N> p;
  MetricJet<N> mj;
  VecField<N> nu;
  VecField<N> T;
  TangentVec<N> Z;
  std::array<VecField<N>, M> X;
  MatM Pi_HH;      // Pi(X_a, conj X_b)
  MatM Pi_HH_hol;  // Pi(conj X_a, conj X_b)
  std::array<cplx, M> Pi_TX{};
  double alpha = 0.0;
  double H = 0.0;
  double H_b = 0.0;

  /// Complex-bilinear pairing u^T G v.
  cplx pair(const TangentVec<N>& u, const TangentVec<N>& v) const { return pairing<N>(mj.G, u, v); }
  /// Hermitian product u^T G conj(v).
  cplx herm(const TangentVec<N>& u, const TangentVec<N>& v) const {
    return pairing<N>(mj.G, u, v.conjugate());
  }
  /// Covariant derivative of the frame field V along u.
  TangentVec<N> cov(const TangentVec<N>& u, const VecField<N>& V) const {
    return V.along(u) + gamma_apply(mj, u, V.v);
  }
  /// Shape operator A u = nabla_u nu.
  TangentVec<N> shape(const TangentVec<N>& u) const { return cov(u, nu); }
  cplx Pi(const TangentVec<N>& u, const TangentVec<N>& v) const { return pair(shape(u), v); }
};

namespace detail {

template <class S, int N>
struct FrameCore {
  SVec<S, N> nu;
  std::array<std::array<Cx<S>, 2 * N>, N - 1> X;
};

template <class S, int N>
Cx<S> herm(const SMat<S, N>& G, const std::array<Cx<S>, 2 * N>& u,
           const std::array<Cx<S>, 2 * N>& v) {
  constexpr int D = 2 * N;
  Cx<S> acc;
  for (int a = 0; a < D; ++a) {
    Cx<S> Gv;
    for (int b = 0; b < D; ++b) Gv += conj(v[b]) * G[a * D + b];
    acc += u[a] * Gv;
  }
  return acc;
}

/// Normal and unitary (1,0) frame from the gradient of rho. Seeds d/dz_k are
/// chosen greedily by largest projected norm, which keeps Gram-Schmidt well
/// conditioned on every patch.
template <class S, int N>
FrameCore<S, N> frame_core(int kappa, const SVec<S, N>& x, const SVec<S, N>& drho) {
  constexpr int D = 2 * N;
  const SMat<S, N> G = real_metric<N>(kappa, x);
  const auto up = solve_dense<S, D>(G, drho);
  S n2(0.0);
  for (int a = 0; a < D; ++a) n2 += drho[a] * up[a];
  if (!(value_of(n2) > 1e-16)) throw GeometryError("degenerate gradient of the defining function");
  const S inv = 1.0 / sqrt(n2);
  FrameCore<S, N> out;
  for (int a = 0; a < D; ++a) out.nu[a] = up[a] * inv;
  // Z = (nu - i J nu) / sqrt 2.
  std::array<Cx<S>, D> Z;
  for (int i = 0; i < N; ++i) {
    const S& nx = out.nu[2 * i];
    const S& ny = out.nu[2 * i + 1];
    // J nu = (-ny, nx)
    Z[2 * i] = Cx<S>(nx, ny) * S(std::numbers::sqrt2 / 2);
    Z[2 * i + 1] = Cx<S>(ny, -nx) * S(std::numbers::sqrt2 / 2);
  }
  std::array<bool, N> used{};
  for (int al = 0; al < N - 1; ++al) {
    double best = -1.0;
    std::array<Cx<S>, D> pick{};
    S pick_n2(0.0);
    int pick_k = -1;
    for (int k = 0; k < N; ++k) {
      if (used[k]) continue;
      std::array<Cx<S>, D> W{};
      W[2 * k] = Cx<S>(S(0.5), S(0.0));
      W[2 * k + 1] = Cx<S>(S(0.0), S(-0.5));
      const Cx<S> cz = herm<S, N>(G, W, Z);
      for (int a = 0; a < D; ++a) W[a] -= cz * Z[a];
      for (int be = 0; be < al; ++be) {
        const Cx<S> cb = herm<S, N>(G, W, out.X[be]);
        for (int a = 0; a < D; ++a) W[a] -= cb * out.X[be][a];
      }
      const S wn = herm<S, N>(G, W, W).re;
      if (value_of(wn) > best) {
        best = value_of(wn);
        pick = W;
        pick_n2 = wn;
        pick_k = k;
      }
    }
    if (best < 1e-12) throw GeometryError("Gram-Schmidt pivot below threshold");
    used[pick_k] = true;
    const S s = 1.0 / sqrt(pick_n2);
    for (int a = 0; a < D; ++a) out.X[al][a] = pick[a] * s;
  }
  return out;
}

}  // namespace detail

/// Full boundary frame at a point of the surface.
template <int N>
BoundaryFrame<N> frame_at(const SpaceForm<N>& space, const Hypersurface<N>& s, const Point<N>& p,
                          double on_surface_tol = 1e-8) {
  constexpr int D = 2 * N;
  constexpr int M = N - 1;
  using Ad = Dual<double, D>;
  space.validate(p);
  const RealJet<N> jr = s.rho.jet(p);
  if (std::abs(jr.v) > on_surface_tol * std::max(1.0, p.norm()))
    throw GeometryError("point is not on the surface (rho = " + std::to_string(jr.v) + ")");
  SVec<Ad, N> x, g;
  for (int a = 0; a < D; ++a) {
    x[a] = Ad::variable(p.x[a], a);
    g[a] = Ad(jr.g[a]);
    for (int b = 0; b < D; ++b) g[a].d[b] = jr.hess(a, b);
  }
  const auto core = detail::frame_core<Ad, N>(space.kappa(), x, g);

  BoundaryFrame<N> f;
  f.p = p;
  f.mj = metric_jet(space, p);
  for (int a = 0; a < D; ++a) {
    f.nu.v[a] = core.nu[a].v;
    for (int b = 0; b < D; ++b) f.nu.d[b][a] = core.nu[a].d[b];
  }
  f.T.v = f.nu.v.J();
  for (int b = 0; b < D; ++b) f.T.d[b] = f.nu.d[b].J();
  const double r2 = std::numbers::sqrt2 / 2;
  f.Z = r2 * (f.nu.v - cplx(0, 1) * f.T.v);
  for (int al = 0; al < M; ++al)
    for (int a = 0; a < D; ++a) {
      const auto& c = core.X[al][a];
      f.X[al].v[a] = cplx(c.re.v, c.im.v);
      for (int b = 0; b < D; ++b) f.X[al].d[b][a] = cplx(c.re.d[b], c.im.d[b]);
    }

  f.alpha = f.Pi(f.T.v, f.T.v).real();
  f.H_b = 0.0;
  for (int al = 0; al < M; ++al) {
    f.Pi_TX[al] = f.Pi(f.T.v, f.X[al].v);
    for (int be = 0; be < M; ++be) {
      f.Pi_HH(al, be) = f.Pi(f.X[al].v, f.X[be].v.conjugate());
      f.Pi_HH_hol(al, be) = f.Pi(f.X[al].v.conjugate(), f.X[be].v.conjugate());
    }
    f.H_b += 2.0 * f.Pi_HH(al, al).real();
  }
  f.H = f.alpha + f.H_b;
  return f;
}

/// Levi form L(X_a, X_b) = 2 Pi(X_a, conj X_b).
template <int N>
cplx levi_form(const BoundaryFrame<N>& f, int i, int j) {
  return 2.0 * f.Pi_HH(i, j);
}

/// Metric norm of A T - alpha T.
template <int N>
double hopf_residual(const BoundaryFrame<N>& f) {
  const auto r = f.shape(f.T.v) - cplx(f.alpha) * f.T.v;
  return std::sqrt(std::abs(f.herm(r, r)));
}

/// Real orthonormal basis of T Sigma: T, then e_a = sqrt2 Re X_a and
/// J e_a = -sqrt2 Im X_a.
template <int N>
std::array<TangentVec<N>, 2 * N - 1> tangent_basis(const BoundaryFrame<N>& f) {
  std::array<TangentVec<N>, 2 * N - 1> b;
  b[0] = f.T.v;
  for (int al = 0; al < N - 1; ++al) {
    TangentVec<N> e, je;
    for (int a = 0; a < 2 * N; ++a) {
      e[a] = std::numbers::sqrt2 * f.X[al].v[a].real();
      je[a] = -std::numbers::sqrt2 * f.X[al].v[a].imag();
    }
    b[1 + 2 * al] = e;
    b[2 + 2 * al] = je;
  }
  return b;
}

/// Matrix of the shape operator in tangent_basis (symmetric up to noise).
template <int N>
Eigen::Matrix<double, 2 * N - 1, 2 * N - 1> shape_matrix(const BoundaryFrame<N>& f) {
  const auto b = tangent_basis(f);
  Eigen::Matrix<double, 2 * N - 1, 2 * N - 1> S;
  for (int i = 0; i < 2 * N - 1; ++i)
    for (int j = 0; j < 2 * N - 1; ++j) S(i, j) = f.Pi(b[i], b[j]).real();
  return S;
}

struct EigenCluster {
  double value = 0.0;
  int multiplicity = 0;
};

struct ShapeSpectrum {
  std::vector<double> eigenvalues;  // sorted ascending
  std::vector<EigenCluster> clusters;
  double t_eigenvalue = 0.0;        // eigenvalue whose eigenvector best aligns with T
  double t_overlap = 0.0;
  double asymmetry = 0.0;           // |S - S^T| before symmetrization
};

template <int N>
ShapeSpectrum shape_spectrum(const BoundaryFrame<N>& f, double cluster_tol = 1e-6) {
  constexpr int K = 2 * N - 1;
  const auto S = shape_matrix(f);
  ShapeSpectrum out;
  out.asymmetry = (S - S.transpose()).norm();
  const Eigen::Matrix<double, K, K> Ssym = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, K, K>> es(Ssym);
  for (int i = 0; i < K; ++i) out.eigenvalues.push_back(es.eigenvalues()(i));
  for (int i = 0; i < K; ++i) {
    const double ov = std::abs(es.eigenvectors()(0, i));
    if (ov > out.t_overlap) {
      out.t_overlap = ov;
      out.t_eigenvalue = es.eigenvalues()(i);
    }
  }
  for (double v : out.eigenvalues) {
    if (!out.clusters.empty() && std::abs(v - out.clusters.back().value) <= cluster_tol) {
      auto& c = out.clusters.back();
      c.value = (c.value * c.multiplicity + v) / (c.multiplicity + 1);
      ++c.multiplicity;
    } else {
      out.clusters.push_back({v, 1});
    }
  }
  return out;
}

template <int N>
ShapeSpectrum shape_spectrum(const SpaceForm<N>& space, const Hypersurface<N>& s, const Point<N>& p) {
  return shape_spectrum(frame_at(space, s, p));
}

// ---------------------------------------------------------------------------
// Sampling points on surfaces (deterministic for a given seed).

/// Point of a tube from a core point z' (first k coordinates) and a unit
/// direction in the remaining N-k coordinates.
template <int N>
Point<N> tube_point(const Hypersurface<N>& t, const std::vector<cplx>& core,
                    const std::vector<cplx>& dir) {
  double c2 = 0.0, d2 = 0.0;
  for (const auto& c : core) c2 += std::norm(c);
  for (const auto& d : dir) d2 += std::norm(d);
  const double w = std::tan(t.a) * std::sqrt(1.0 + c2) / std::sqrt(d2);
  std::array<cplx, N> z{};
  for (int j = 0; j < t.k; ++j) z[j] = core[j];
  for (int j = t.k; j < N; ++j) z[j] = w * dir[j - t.k];
  return Point<N>::from_complex(z);
}

template <int N>
std::vector<Point<N>> sample_surface(const Hypersurface<N>& s, int count, std::uint64_t seed,
                                     double core_scale = 1.0) {
  std::mt19937_64 eng(seed);
  auto uni = [&] { return (eng() >> 11) * 0x1.0p-53; };
  auto gauss = [&] {
    const double u = 1.0 - uni(), v = uni();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  };
  std::vector<Point<N>> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (s.kind == SurfaceKind::kTube) {
      std::vector<cplx> core(s.k), dir(N - s.k);
      for (auto& c : core) c = core_scale * cplx(gauss(), gauss());
      for (auto& d : dir) d = cplx(gauss(), gauss());
      pts.push_back(tube_point(s, core, dir));
    } else if (s.parametrized) {
      // Uniform direction on the unit sphere pushed through the scales.
      Point<N> p;
      double n2 = 0.0;
      for (auto& c : p.x) {
        c = gauss();
        n2 += c * c;
      }
      for (int a = 0; a < 2 * N; ++a) p.x[a] *= s.scales[a] / std::sqrt(n2);
      pts.push_back(p);
    } else {
      // Level sets star-shaped about the origin: bisect rho along a random ray.
      Point<N> u;
      double n2 = 0.0;
      for (auto& c : u.x) {
        c = gauss();
        n2 += c * c;
      }
      for (auto& c : u.x) c /= std::sqrt(n2);
      auto at = [&](double t) {
        Point<N> p = u;
        for (auto& c : p.x) c *= t;
        return p;
      };
      if (!(s.rho(at(0.0)) < 0.0)) throw GeometryError("level set sampling needs rho < 0 at the origin");
      double lo = 0.0, hi = 0.125;
      while (s.rho(at(hi)) <= 0.0) {
        lo = hi;
        hi *= 2;
        if (hi > 1e3) throw GeometryError("level set does not cross the sampling ray");
      }
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (s.rho(at(mid)) <= 0.0 ? lo : hi) = mid;
      }
      pts.push_back(at(0.5 * (lo + hi)));
    }
  }
  return pts;
}

}  // namespace kaehler
