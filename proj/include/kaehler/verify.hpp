#pragma once
// The check suites. Each check turns one identity or inequality into a
// ResidualReport; checks that need a hypothesis the geometry does not meet
// report "hypothesis failed" or "not applicable" instead of failing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kaehler/boundary.hpp"
#include "kaehler/quadrature.hpp"
#include "kaehler/report.hpp"

namespace kaehler {

struct Tolerances {
  double identity = 1e-5;
  double duality = 1e-6;
  double div_t = 1e-8;
  double compare = 1e-7;
  double spectrum = 1e-8;
  double tube_spectrum = 1e-6;
  double alpha_constant = 1e-8;
  double minkowski = 1e-6;
  double inequality = 1e-6;
  double codazzi = 1e-7;
  double quadratic = 1e-8;
  double berndt = 1e-12;
  double hessian = 1e-8;
  double equality_case = 1e-7;
  double extension = 1e-5;
};

/// Space, surface and quadrature settings, with node caches built on first use.
template <int N>
class Domain {
 public:
  Domain(SpaceForm<N> space, Hypersurface<N> surface, QuadratureOrders orders = {}, int threads = 1)
      : space_(space), surface_(std::move(surface)), orders_(orders), threads_(std::max(1, threads)) {}

  const SpaceForm<N>& space() const { return space_; }
  const Hypersurface<N>& surface() const { return surface_; }
  const QuadratureOrders& orders() const { return orders_; }
  int threads() const { return threads_; }
  bool integrable() const { return surface_.parametrized; }

  const SurfaceQuadrature<N>& surface_rule() const {
    if (!sq_) sq_ = std::make_shared<SurfaceQuadrature<N>>(space_, surface_, orders_, threads_);
    return *sq_;
  }
  const VolumeQuadrature<N>& volume_rule() const {
    if (!vq_) vq_ = std::make_shared<VolumeQuadrature<N>>(space_, surface_, orders_, threads_);
    return *vq_;
  }

 private:
  SpaceForm<N> space_;
  Hypersurface<N> surface_;
  QuadratureOrders orders_;
  int threads_;
  mutable std::shared_ptr<SurfaceQuadrature<N>> sq_;
  mutable std::shared_ptr<VolumeQuadrature<N>> vq_;
};

inline ResidualReport status_report(std::string id, std::string anchor, Status s, std::string note) {
  ResidualReport r;
  r.check_id = std::move(id);
  r.anchor = std::move(anchor);
  r.status = s;
  r.note = std::move(note);
  return r;
}

inline void attach(ResidualReport& r, const IntegralResult& a, const IntegralResult& b) {
  r.lat = a.orders.lat;
  r.lon = a.orders.lon;
  r.radial = a.orders.radial;
  r.nodes = std::max(a.node_count, b.node_count);
  r.quad_error = std::max(a.error_estimate, b.error_estimate);
}

// ---------------------------------------------------------------------------
// Test fields.

/// Random polynomial of degree <= 2 in z and zbar with complex normal
/// coefficients drawn from `eng`.
template <int N>
ComplexField<N> random_polynomial(std::mt19937_64& eng) {
  using CF = ComplexField<N>;
  auto uni = [&] { return (eng() >> 11) * 0x1.0p-53; };
  auto coef = [&] { return cplx(2 * uni() - 1, 2 * uni() - 1); };
  CF f(coef());
  for (int i = 0; i < N; ++i) f = f + coef() * CF::z(i) + coef() * CF::zbar(i);
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j)
      f = f + coef() * (CF::z(i) * CF::z(j)) + coef() * (CF::zbar(i) * CF::zbar(j));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) f = f + coef() * (CF::z(i) * CF::zbar(j));
  return f;
}

template <int N>
struct NamedField {
  std::string name;
  ComplexField<N> field;
};

constexpr int kBatterySize = 12;

/// The fixed test battery for the integral identity: holomorphic,
/// antiholomorphic, mixed and radial fields, two of them random.
template <int N>
std::vector<NamedField<N>> identity_battery(std::uint64_t seed = 7) {
  using CF = ComplexField<N>;
  const CF z1 = CF::z(0), z2 = CF::z(1), zn = CF::z(N - 1);
  const CF w1 = z1.conj(), w2 = z2.conj();
  const ScalarField<N> r2 = ScalarField<N>::norm2();
  std::mt19937_64 eng(seed);
  std::vector<NamedField<N>> b;
  b.push_back({"z1", z1});
  b.push_back({"z1^2 z2", z1 * z1 * z2});
  b.push_back({"1/(z1-2)", CF(1.0) / (z1 - CF(2.0))});
  b.push_back({"conj(z2)", w2});
  b.push_back({"conj(z1)^2 conj(zn)", w1 * w1 * zn.conj()});
  b.push_back({"|z1|^2 + Re z2", z1 * w1 + z2.real_part()});
  b.push_back({"z1 conj(z2) + z2", z1 * w2 + z2});
  b.push_back({"|z|^4", CF(r2 * r2)});
  b.push_back({"exp(-|z|^2)", CF(exp(-r2))});
  b.push_back({"exp(z1 + conj(z2))", cexp(z1 + w2)});
  b.push_back({"random quadratic A", random_polynomial<N>(eng)});
  b.push_back({"random quadratic B", random_polynomial<N>(eng)});
  return b;
}

// ---------------------------------------------------------------------------
// Integral identity.

/// The four boundary terms: conj(Zbar F) K, Z F conj(K), sqrt2 Pi(Xbar_a,
/// Xbar_b) f_a conj(f_bbar) and H_b |Zbar F|^2 / sqrt2, where
/// K = box_b f - i Pi(T, X_a) f_abar.
template <int N>
std::array<cplx, 4> identity_boundary_terms(const BoundaryFrame<N>& f, const Jet2<N>& j) {
  constexpr int M = N - 1;
  const double r2 = std::numbers::sqrt2;
  const auto fb = dbar_b(f, j);
  const auto fa = d_b(f, j);
  cplx K = kohn_laplacian(f, j);
  for (int al = 0; al < M; ++al) K -= cplx(0, 1) * f.Pi_TX[al] * fb[al];
  const cplx zbF = directional(j, f.Z.conjugate());
  const cplx zF = directional(j, f.Z);
  cplx pi_term = 0.0;
  for (int al = 0; al < M; ++al)
    for (int be = 0; be < M; ++be) pi_term += f.Pi_HH_hol(al, be) * fa[al] * std::conj(fb[be]);
  return {std::conj(zbF) * K, zF * std::conj(K), r2 * pi_term, f.H_b * std::norm(zbF) / r2};
}

/// sqrt2 int_Omega (|box F|^2 - |D^{1,1}F|^2) against the boundary terms,
/// for a field given through its jets. The relative denominator also carries
/// the absolute term integrals and the boundary Dirichlet energy, so fields
/// with vanishing sides are judged against their own size.
template <int N, class JetFn>
ResidualReport check_main_identity_jets(const Domain<N>& d, const std::string& name, JetFn&& jet, double tol) {
  const std::string id = "main-identity/" + name;
  const std::string anchor = "integral identity for |box F|^2 - |D^{1,1}F|^2";
  if (!d.integrable()) return status_report(id, anchor, Status::kNotApplicable, "surface has no parametrization");
  const double r2 = std::numbers::sqrt2;
  const auto& vq = d.volume_rule();
  const auto& sq = d.surface_rule();
  const int th = d.threads();
  const auto L = vq.integrate(
      [&](const Point<N>& p) {
        const auto H = complex_hessian(d.space(), jet(p), p);
        return cplx(r2 * (std::norm(H.trace()) - H.norm2()), r2 * (std::norm(H.trace()) + H.norm2()));
      },
      th);
  const auto R = sq.integrate(
      [&](const BoundaryFrame<N>& f) {
        const auto t = identity_boundary_terms(f, jet(f.p));
        return t[0] + t[1] + t[2] + t[3];
      },
      th);
  const auto Rs = sq.integrate(
      [&](const BoundaryFrame<N>& f) {
        const Jet2<N> j = jet(f.p);
        const auto t = identity_boundary_terms(f, j);
        const auto g = gradient(f.mj, j);
        return std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]) + std::abs(t[3]) + std::abs(f.herm(g, g));
      },
      th);
  // The volume integrand is real; its imaginary slot carries the scale.
  auto r = equality_report(id, anchor, L.value.real(), R.value, tol, L.value.imag() + Rs.value.real());
  attach(r, L, R);
  return r;
}

template <int N>
ResidualReport check_main_identity(const Domain<N>& d, const NamedField<N>& F, double tol) {
  return check_main_identity_jets(d, F.name, [&](const Point<N>& p) { return F.field.jet(p); }, tol);
}

template <int N>
std::vector<ResidualReport> identity_suite(const Domain<N>& d, const Tolerances& tol) {
  std::vector<ResidualReport> out;
  for (const auto& F : identity_battery<N>()) out.push_back(check_main_identity(d, F, tol.identity));
  return out;
}

// ---------------------------------------------------------------------------
// Inequalities.

template <int N>
double min_hb(const Domain<N>& d) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto* nodes : {&d.surface_rule().fine, &d.surface_rule().coarse})
    for (const auto& f : nodes->frames) lo = std::min(lo, f.H_b);
  return lo;
}

inline void flag_equality(ResidualReport& r) {
  r.note = std::abs(r.abs_residual) <= r.tolerance ? "equality" : "strict";
}

/// int_Sigma 1/H_b >= (m+1)/m |Omega|.
template <int N>
ResidualReport check_inv_hb(const Domain<N>& d, double tol) {
  const std::string id = "inverse-hb";
  const std::string anchor = "inverse Hermitian mean curvature inequality";
  if (!d.integrable()) return status_report(id, anchor, Status::kNotApplicable, "surface has no parametrization");
  const double c = min_hb(d);
  if (!(c > 0.0))
    return status_report(id, anchor, Status::kHypothesisFailed, "min H_b = " + std::to_string(c) + " <= 0");
  const double m = N - 1;
  const auto I = d.surface_rule().integrate([](const BoundaryFrame<N>& f) { return 1.0 / f.H_b; }, d.threads());
  const auto V = d.volume_rule().integrate([](const Point<N>&) { return 1.0; }, d.threads());
  auto r = margin_report(id, anchor, I.value.real(), (m + 1) / m * V.value.real(), tol);
  attach(r, I, V);
  flag_equality(r);
  return r;
}

/// m |Sigma| >= c (m+1) |Omega| with c the minimum of H_b over the nodes.
template <int N>
ResidualReport check_iso(const Domain<N>& d, double tol) {
  const std::string id = "isoperimetric";
  const std::string anchor = "isoperimetric inequality under H_b >= c > 0";
  if (!d.integrable()) return status_report(id, anchor, Status::kNotApplicable, "surface has no parametrization");
  const double c = min_hb(d);
  if (!(c > 0.0))
    return status_report(id, anchor, Status::kHypothesisFailed, "min H_b = " + std::to_string(c) + " <= 0");
  const double m = N - 1;
  const auto A = d.surface_rule().integrate([](const BoundaryFrame<N>&) { return 1.0; }, d.threads());
  const auto V = d.volume_rule().integrate([](const Point<N>&) { return 1.0; }, d.threads());
  auto r = margin_report(id, anchor, m * A.value.real(), c * (m + 1) * V.value.real(), tol);
  attach(r, A, V);
  flag_equality(r);
  return r;
}

/// Equality case on geodesic balls, where F = Phi - Phi|Sigma
/// solves box F = m+1, F|Sigma = 0: chi H_b = 2m, Pi(X_a, conj X_b) = delta / chi,
/// Pi(T, X_a) = 0, and A - JAJ = (c/m) I on the contact distribution.
template <int N>
std::vector<ResidualReport> check_equality_case(const SpaceForm<N>& space, const Hypersurface<N>& s,
                                                double tol, int samples = 50, std::uint64_t seed = 11) {
  const std::string anchor = "equality case: chi c = 2m and umbilic Levi form";
  const std::vector<std::string> ids = {"equality-chi-c", "equality-levi", "equality-torsion",
                                        "equality-a-jaj", "equality-box-f"};
  std::vector<ResidualReport> out;
  if (s.kind != SurfaceKind::kSphere) {
    for (const auto& id : ids) out.push_back(status_report(id, anchor, Status::kNotApplicable, "needs a geodesic ball"));
    return out;
  }
  constexpr int M = N - 1;
  const double m = M;
  const auto Phi = phi_field(space);
  double e_chi = 0, e_levi = 0, e_tor = 0, e_jaj = 0, e_box = 0;
  const auto pts = sample_surface(s, samples, seed);
  for (const auto& p : pts) {
    const auto f = frame_at(space, s, p);
    const RealJet<N> ph = Phi.jet(p);
    double chi = 0.0;
    for (int a = 0; a < 2 * N; ++a) chi += ph.g[a] * f.nu.v[a].real();
    e_chi = std::max(e_chi, std::abs(chi * f.H_b - 2 * m));
    for (int al = 0; al < M; ++al) {
      e_tor = std::max(e_tor, std::abs(f.Pi_TX[al]));
      for (int be = 0; be < M; ++be)
        e_levi = std::max(e_levi, std::abs(f.Pi_HH(al, be) - (al == be ? 1.0 / chi : 0.0)));
    }
    // <Au, v> + <AJu, Jv> = (c/m) <u, v> on the contact basis.
    const auto b = tangent_basis(f);
    for (int i = 1; i < 2 * N - 1; ++i)
      for (int k = 1; k < 2 * N - 1; ++k) {
        const cplx lhs = f.Pi(b[i], b[k]) + f.Pi(b[i].J(), b[k].J());
        const cplx rhs = (f.H_b / m) * f.pair(b[i], b[k]);
        e_jaj = std::max(e_jaj, std::abs(lhs - rhs));
      }
    // Interior check that D^{1,1}Phi = I, at the same direction scaled in.
    Point<N> q = p;
    for (auto& c : q.x) c *= 0.5;
    e_box = std::max(e_box, std::abs(complex_hessian(space, ComplexField<N>(Phi), q).trace() - (m + 1)));
  }
  const double errs[] = {e_chi, e_levi, e_tor, e_jaj, e_box};
  for (int i = 0; i < 5; ++i) out.push_back(pointwise_report(ids[i], anchor, errs[i], tol, pts.size()));
  return out;
}

template <int N>
std::vector<ResidualReport> inequality_suite(const Domain<N>& d, const Tolerances& tol) {
  std::vector<ResidualReport> out{check_inv_hb(d, tol.inequality), check_iso(d, tol.inequality)};
  for (auto& r : check_equality_case(d.space(), d.surface(), tol.equality_case)) out.push_back(std::move(r));
  return out;
}

// ---------------------------------------------------------------------------
// Minkowski formula.

/// 2m |Sigma| = int H_b <grad Phi, nu> for closed Hopf surfaces.
template <int N>
ResidualReport check_minkowski(const Domain<N>& d, double tol, double hopf_tol = 1e-7) {
  const std::string id = "minkowski";
  const std::string anchor = "Minkowski formula for Hopf hypersurfaces";
  if (!d.integrable()) return status_report(id, anchor, Status::kNotApplicable, "surface has no parametrization");
  double hopf = 0.0;
  for (const auto& f : d.surface_rule().fine.frames) hopf = std::max(hopf, hopf_residual(f));
  if (hopf > hopf_tol)
    return status_report(id, anchor, Status::kHypothesisFailed, "not Hopf: |AT - alpha T| = " + std::to_string(hopf));
  const auto Phi = phi_field(d.space());
  const double m = N - 1;
  const auto A = d.surface_rule().integrate([](const BoundaryFrame<N>&) { return 1.0; }, d.threads());
  const auto R = d.surface_rule().integrate(
      [&](const BoundaryFrame<N>& f) {
        const RealJet<N> ph = Phi.jet(f.p);
        double chi = 0.0;
        for (int a = 0; a < 2 * N; ++a) chi += ph.g[a] * f.nu.v[a].real();
        return f.H_b * chi;
      },
      d.threads());
  auto r = equality_report(id, anchor, 2 * m * A.value, R.value, tol);
  attach(r, A, R);
  return r;
}

// ---------------------------------------------------------------------------
// Closed forms on space forms.

/// cot_kappa(r): 1/r, coth r, cot r.
inline double cot_kappa(int kappa, double r) {
  if (kappa < 0) return 1.0 / std::tanh(r);
  if (kappa > 0) return 1.0 / std::tan(r);
  return 1.0 / r;
}

/// Eigenvalues of D^2 r: 0 on grad r, 2 cot_kappa(2r) on J grad r and
/// cot_kappa(r) on the complement.
template <int N>
ResidualReport check_hessian_r(const SpaceForm<N>& space, const std::vector<Point<N>>& pts, double tol) {
  const std::string id = "hessian-distance";
  const std::string anchor = "Hessian of the distance function";
  constexpr int D = 2 * N;
  const auto r_field = dist_field(space);
  double err = 0.0;
  std::size_t used = 0;
  for (const auto& p : pts) {
    const double r = dist_to_center(space, p);
    if (r < 0.05) continue;
    ++used;
    const auto mj = metric_jet(space, p);
    const RealJet<N> jr = r_field.jet(p);
    const Jet2<N> j = Jet2<N>::from_parts(jr, RealJet<N>::constant(0.0));
    // G-orthonormal basis: grad r, J grad r, then the complement.
    std::array<TangentVec<N>, D> e;
    e[0] = gradient(mj, j);
    e[1] = e[0].J();
    int n = 2;
    for (int a = 0; a < D && n < D; ++a) {
      TangentVec<N> v = TangentVec<N>::real_basis(a);
      for (int b = 0; b < n; ++b) v = v - pairing<N>(mj.G, v, e[b]) * e[b];
      const double len = std::sqrt(std::abs(pairing<N>(mj.G, v, v)));
      if (len < 1e-6) continue;
      e[n++] = cplx(1.0 / len) * v;
    }
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) {
        double expect = 0.0;
        if (a == b && a == 1) expect = 2 * cot_kappa(space.kappa(), 2 * r);
        if (a == b && a >= 2) expect = cot_kappa(space.kappa(), r);
        err = std::max(err, std::abs(covariant_hessian(mj, j, e[a], e[b]) - expect));
      }
  }
  return pointwise_report(id, anchor, err, tol, used);
}

/// Closed-form principal curvatures of spheres and tubes, ascending.
template <int N>
std::vector<double> closed_form_spectrum(const SpaceForm<N>& space, const Hypersurface<N>& s) {
  constexpr int m = N - 1;
  const int kap = space.kappa();
  std::vector<double> ev;
  if (s.kind == SurfaceKind::kSphere || (s.kind == SurfaceKind::kTube && s.k == 0)) {
    ev.push_back(2 * cot_kappa(kap, 2 * s.a));
    for (int i = 0; i < 2 * m; ++i) ev.push_back(cot_kappa(kap, s.a));
  } else if (s.kind == SurfaceKind::kTube) {
    ev.push_back(2 / std::tan(2 * s.a));
    for (int i = 0; i < 2 * (m - s.k); ++i) ev.push_back(1 / std::tan(s.a));
    for (int i = 0; i < 2 * s.k; ++i) ev.push_back(-std::tan(s.a));
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

template <int N>
std::vector<Point<N>> surface_samples(const Hypersurface<N>& s, int count, std::uint64_t seed) {
  return sample_surface(s, count, seed, 0.7);
}

/// Shape operator spectrum against the closed forms, the Hopf property and
/// constancy of alpha on the sample points.
template <int N>
std::vector<ResidualReport> spectra_suite(const SpaceForm<N>& space, const Hypersurface<N>& s, const Tolerances& tol,
                                          int samples = 50, std::uint64_t seed = 13) {
  std::vector<ResidualReport> out;
  const auto pts = surface_samples(s, samples, seed);
  double hopf = 0.0, amin = std::numeric_limits<double>::infinity(), amax = -amin;
  for (const auto& p : pts) {
    const auto f = frame_at(space, s, p);
    hopf = std::max(hopf, hopf_residual(f));
    amin = std::min(amin, f.alpha);
    amax = std::max(amax, f.alpha);
  }
  const auto expect = closed_form_spectrum(space, s);
  const std::string anchor = "principal curvatures of geodesic spheres and tubes";
  if (expect.empty()) {
    out.push_back(status_report("shape-spectrum", anchor, Status::kNotApplicable, "no closed form for this surface"));
  } else {
    double err = 0.0;
    for (const auto& p : pts) {
      const auto sp = shape_spectrum(space, s, p);
      for (std::size_t i = 0; i < expect.size(); ++i) err = std::max(err, std::abs(sp.eigenvalues[i] - expect[i]));
    }
    const double t = (s.kind == SurfaceKind::kTube && s.k > 0) ? tol.tube_spectrum : tol.spectrum;
    out.push_back(pointwise_report("shape-spectrum", anchor, err, t, pts.size()));
  }
  if (hopf <= 1e-7) {
    out.push_back(pointwise_report("alpha-constant", "alpha is constant on Hopf hypersurfaces", amax - amin,
                                   tol.alpha_constant, pts.size()));
  } else {
    out.push_back(status_report("alpha-constant", "alpha is constant on Hopf hypersurfaces",
                                Status::kHypothesisFailed, "not Hopf: |AT - alpha T| = " + std::to_string(hopf)));
  }
  // Hessian of r at random chart points of the ambient space.
  std::mt19937_64 eng(seed + 1);
  auto uni = [&] { return (eng() >> 11) * 0x1.0p-53; };
  std::vector<Point<N>> amb;
  const double rmax = space.kappa() < 0 ? 0.9 : 2.0;
  for (int i = 0; i < samples; ++i) {
    Point<N> p;
    double n2 = 0.0;
    for (auto& c : p.x) {
      c = 2 * uni() - 1;
      n2 += c * c;
    }
    const double rad = rmax * (0.1 + 0.9 * uni());
    for (auto& c : p.x) c *= rad / std::sqrt(n2);
    amb.push_back(p);
  }
  out.push_back(check_hessian_r(space, amb, tol.hessian));
  return out;
}

// ---------------------------------------------------------------------------
// Rigidity constituents on Hopf surfaces with constant principal curvatures.

/// phi in tangent_basis: phi T = 0, phi e_a = J e_a, phi J e_a = -e_a.
template <int N>
Eigen::Matrix<double, 2 * N - 1, 2 * N - 1> phi_matrix() {
  Eigen::Matrix<double, 2 * N - 1, 2 * N - 1> P = Eigen::Matrix<double, 2 * N - 1, 2 * N - 1>::Zero();
  for (int al = 0; al < N - 1; ++al) {
    P(2 + 2 * al, 1 + 2 * al) = 1.0;
    P(1 + 2 * al, 2 + 2 * al) = -1.0;
  }
  return P;
}

template <int N>
std::vector<ResidualReport> rigidity_suite(const SpaceForm<N>& space, const Hypersurface<N>& s, const Tolerances& tol,
                                           int samples = 50, std::uint64_t seed = 17) {
  constexpr int K = 2 * N - 1;
  const double m = N - 1;
  const int kap = space.kappa();
  const bool sphere_like = s.kind == SurfaceKind::kSphere || (s.kind == SurfaceKind::kTube && s.k == 0);
  const bool tube = s.kind == SurfaceKind::kTube && s.k > 0;
  const std::string a_cod = "Codazzi relation for Hopf hypersurfaces";
  const std::string a_qr = "quadratic relation for contact principal curvatures";
  const std::string a_fb = "product relation for distinct contact principal curvatures";
  const std::string a_cmp = "comparison bounds alpha > 2 and lambda > 1";
  std::vector<ResidualReport> out;
  if (!sphere_like && !tube) {
    for (auto id : {"codazzi", "quadratic-relation", "berndt-product", "comparison-alpha", "comparison-lambda"})
      out.push_back(status_report(id, a_cod, Status::kNotApplicable, "needs a sphere or tube"));
    return out;
  }
  const auto P = phi_matrix<N>();
  const auto pts = surface_samples(s, samples, seed);
  double e_cod = 0, e_qr = 0, e_fb = 0;
  double amin = std::numeric_limits<double>::infinity(), lmin = amin;
  for (const auto& p : pts) {
    const auto f = frame_at(space, s, p);
    const Eigen::Matrix<double, K, K> S = shape_matrix(f);
    const Eigen::Matrix<double, K, K> C = S * P * S - 0.5 * f.alpha * (S * P + P * S) - kap * P;
    e_cod = std::max(e_cod, C.cwiseAbs().maxCoeff());
    const auto sp = shape_spectrum(f);
    // Contact eigenvalues: everything but the one aligned with T.
    std::vector<double> contact;
    bool skipped = false;
    for (double v : sp.eigenvalues) {
      if (!skipped && std::abs(v - sp.t_eigenvalue) < 1e-9) {
        skipped = true;
        continue;
      }
      contact.push_back(v);
    }
    amin = std::min(amin, f.alpha);
    for (double l : contact) lmin = std::min(lmin, l);
    if (sphere_like) {
      const double c = f.H_b;
      for (double l : contact) e_qr = std::max(e_qr, std::abs(l * (c / m - l) - f.alpha * c / (2 * m) - kap));
    } else {
      e_fb = std::max(e_fb, std::abs(contact.front() * contact.back() + kap));
    }
  }
  const std::size_t n = pts.size();
  out.push_back(pointwise_report("codazzi", a_cod, e_cod, tol.codazzi, n));
  if (sphere_like) {
    out.push_back(pointwise_report("quadratic-relation", a_qr, e_qr, tol.quadratic, n));
    out.push_back(status_report("berndt-product", a_fb, Status::kNotApplicable, "contact eigenvalues coincide"));
  } else {
    out.push_back(status_report("quadratic-relation", a_qr, Status::kNotApplicable, "A - JAJ is not a multiple of I"));
    out.push_back(pointwise_report("berndt-product", a_fb, e_fb, tol.berndt, n));
  }
  if (kap < 0 && sphere_like) {
    auto ra = margin_report("comparison-alpha", a_cmp, amin, 2.0, 0.0);
    auto rl = margin_report("comparison-lambda", a_cmp, lmin, 1.0, 0.0);
    // Strict inequalities.
    if (!(amin > 2.0)) ra.status = Status::kFail;
    if (!(lmin > 1.0)) rl.status = Status::kFail;
    ra.samples = rl.samples = n;
    out.push_back(ra);
    out.push_back(rl);
  } else {
    out.push_back(status_report("comparison-alpha", a_cmp, Status::kNotApplicable, "stated for CH spheres"));
    out.push_back(status_report("comparison-lambda", a_cmp, Status::kNotApplicable, "stated for CH spheres"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boundary operators.

template <int N>
std::vector<ResidualReport> boundary_suite(const Domain<N>& d, const Tolerances& tol, int samples = 50,
                                           int pairs = 20, std::uint64_t seed = 19) {
  std::vector<ResidualReport> out;
  const auto& space = d.space();
  const auto& s = d.surface();
  const auto pts = surface_samples(s, samples, seed);
  std::mt19937_64 eng(seed);
  std::vector<ComplexField<N>> fields;
  for (int i = 0; i < 4; ++i) fields.push_back(random_polynomial<N>(eng));
  double e_div = 0.0, e_cmp = 0.0;
  for (const auto& p : pts) {
    const auto f = frame_at(space, s, p);
    e_div = std::max(e_div, std::abs(div_T(f)));
    for (const auto& F : fields) e_cmp = std::max(e_cmp, compare_residual(f, F.jet(p)));
  }
  out.push_back(pointwise_report("div-t", "T is divergence free on the surface", e_div, tol.div_t, pts.size()));
  out.push_back(pointwise_report("compare", "surface Laplacian against the Kohn Laplacian", e_cmp, tol.compare,
                                 pts.size()));
  const std::string da = "Kohn Laplacian integration by parts";
  if (!d.integrable()) {
    out.push_back(status_report("kohn-duality", da, Status::kNotApplicable, "surface has no parametrization"));
    return out;
  }
  // Worst of the randomized pairs.
  ResidualReport worst;
  for (int i = 0; i < pairs; ++i) {
    const auto F = random_polynomial<N>(eng);
    const auto G = random_polynomial<N>(eng);
    auto r = duality_check(d.surface_rule(), F, G, tol.duality, d.threads());
    if (i == 0 || r.residual > worst.residual) worst = r;
  }
  worst.samples = pairs;
  out.push_back(worst);
  return out;
}

}  // namespace kaehler
