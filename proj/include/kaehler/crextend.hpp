#pragma once
// Harmonic extension of boundary data on the flat unit ball by the Poisson
// kernel, and the checks showing that CR data extend holomorphically: the
// energy identity int |D^{1,1}F|^2 = -1/2 int H_b |Zbar F|^2 for harmonic F
// with CR boundary values, and the interior size of dbar F.
//
// Derivatives of F come from differentiating the kernel in x.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "kaehler/verify.hpp"

namespace kaehler {

template <int N>
class PoissonExtension {
 public:
  static constexpr double kGuard = 0.9;

  /// Nodes of the order (lat, lon) rule on the unit sphere, weighted by the data.
  PoissonExtension(const ComplexField<N>& data, int lat = 32, int lon = 32, int threads = 1) {
    const SpaceForm<N> flat(0);
    const auto S = sphere(flat, 1.0);
    const auto rule = angle_rule<N>(lat, lon);
    nodes_ = parallel_map<Node>(
        rule.w.size(),
        [&](std::size_t i) {
          const Point<N> p = param_point(S, rule.theta[i]);
          return Node{p.x, rule.w[i] * area_density(flat, S, rule.theta[i]) * data(p)};
        },
        threads);
    double fact = 1.0;
    for (int k = 2; k < N; ++k) fact *= k;
    omega_ = 2 * std::pow(std::numbers::pi, N) / fact;
  }

  std::size_t node_count() const { return nodes_.size(); }

  /// F and its first two derivatives at an interior point with |x| <= 0.9.
  Jet2<N> jet(const Point<N>& x) const {
    constexpr int D = 2 * N;
    if (!(x.norm() <= kGuard + 1e-12))
      throw std::domain_error("Poisson extension is only evaluated for |x| <= 0.9");
    const double u = 1.0 - x.norm2();
    std::array<double, D> du;
    for (int a = 0; a < D; ++a) du[a] = -2.0 * x.x[a];
    Jet2<N> j;
    j.value = 0.0;
    for (const auto& nd : nodes_) {
      std::array<double, D> d;
      double s = 0.0;
      for (int a = 0; a < D; ++a) {
        d[a] = x.x[a] - nd.zeta[a];
        s += d[a] * d[a];
      }
      double sn = s;
      for (int k = 1; k < N; ++k) sn *= s;
      const double q = 1.0 / sn;
      const double q1 = -2.0 * N * q / s;
      const double q2 = 4.0 * N * (N + 1) * q / (s * s);
      std::array<double, D> qa;
      for (int a = 0; a < D; ++a) qa[a] = q1 * d[a];
      j.value += u * q * nd.wf;
      for (int a = 0; a < D; ++a) {
        j.grad[a] += (du[a] * q + u * qa[a]) * nd.wf;
        for (int b = a; b < D; ++b) {
          double k = du[a] * qa[b] + du[b] * qa[a] + u * q2 * d[a] * d[b];
          if (a == b) k += -2.0 * q + u * q1;
          j.hess[a * D + b] += k * nd.wf;
        }
      }
    }
    j.value /= omega_;
    for (auto& g : j.grad) g /= omega_;
    for (int a = 0; a < D; ++a)
      for (int b = a; b < D; ++b) {
        j.hess[a * D + b] /= omega_;
        j.hess[b * D + a] = j.hess[a * D + b];
      }
    return j;
  }

  cplx operator()(const Point<N>& x) const { return jet(x).value; }

 private:
  struct Node {
    std::array<double, 2 * N> zeta;
    cplx wf;
  };
  std::vector<Node> nodes_;
  double omega_ = 1.0;
};

struct ExtensionSettings {
  int kernel_lat = 32;
  int kernel_lon = 32;
  double inner_radius = 0.5;                // ball on which the energy identity is evaluated
  QuadratureOrders inner_orders{6, 6, 6};
  int cr_samples = 50;
  int grid_points = 64;
  double cr_tol = 1e-8;
  std::uint64_t seed = 23;
  int threads = 1;
};

/// Largest |dbar_b f| over sample points of the unit sphere.
template <int N>
double cr_residual(const ComplexField<N>& data, int samples, std::uint64_t seed) {
  const SpaceForm<N> flat(0);
  const auto S = sphere(flat, 1.0);
  double worst = 0.0;
  for (const auto& p : sample_surface(S, samples, seed)) {
    const auto f = frame_at(flat, S, p);
    for (const auto& c : dbar_b(f, data.jet(p))) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

/// Deterministic interior points with |x| <= r.
template <int N>
std::vector<Point<N>> interior_grid(int count, double r, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  auto uni = [&] { return (eng() >> 11) * 0x1.0p-53; };
  std::vector<Point<N>> pts{Point<N>{}};
  while (int(pts.size()) < count) {
    Point<N> p;
    for (auto& c : p.x) c = 2 * uni() - 1;
    if (p.norm() > 1.0) continue;
    for (auto& c : p.x) c *= r;
    pts.push_back(p);
  }
  return pts;
}

/// Holomorphy of the extension and the energy identity for one boundary datum.
/// CR data: max |dbar F| on the interior grid and both sides of the energy
/// identity must be below tol. Non-CR data: the holomorphy report is
/// "hypothesis failed" with the measured |dbar F|, the energy identity is
/// "not applicable", and the full integral identity is checked instead.
template <int N>
std::vector<ResidualReport> extension_checks(const NamedField<N>& data, double tol, const ExtensionSettings& cfg = {}) {
  const SpaceForm<N> flat(0);
  const PoissonExtension<N> ext(data.field, cfg.kernel_lat, cfg.kernel_lon, cfg.threads);
  const double cr = cr_residual(data.field, cfg.cr_samples, cfg.seed);
  const bool is_cr = cr <= cfg.cr_tol;

  const auto grid = interior_grid<N>(cfg.grid_points, cfg.inner_radius, cfg.seed + 1);
  const auto hinv = metric(flat, Point<N>{}).inverse();
  const auto dbar = parallel_map<double>(
      grid.size(), [&](std::size_t i) { return std::sqrt(dbar_norm2<N>(hinv, ext.jet(grid[i]))); }, cfg.threads);
  const double worst = *std::max_element(dbar.begin(), dbar.end());

  std::vector<ResidualReport> out;
  const std::string h_anchor = "harmonic extension of CR data is holomorphic";
  auto h = pointwise_report("holomorphy/" + data.name, h_anchor, worst, tol, grid.size());
  h.note = "dbar_b residual " + std::to_string(cr);
  if (!is_cr) h.status = Status::kHypothesisFailed;
  out.push_back(h);

  const Domain<N> inner(flat, sphere(flat, cfg.inner_radius), cfg.inner_orders, cfg.threads);
  auto jet = [&](const Point<N>& p) { return ext.jet(p); };
  const std::string e_id = "energy-identity/" + data.name;
  const std::string e_anchor = "energy identity for harmonic extensions of CR data";
  if (!is_cr) {
    out.push_back(status_report(e_id, e_anchor, Status::kNotApplicable, "boundary data are not CR"));
    out.push_back(check_main_identity_jets(inner, "extension of " + data.name, jet, 1e-5));
    return out;
  }
  const auto L = inner.volume_rule().integrate(
      [&](const Point<N>& p) { return complex_hessian(flat, jet(p), p).norm2(); }, cfg.threads);
  const auto R = inner.surface_rule().integrate(
      [&](const BoundaryFrame<N>& f) { return -0.5 * f.H_b * std::norm(directional(jet(f.p), f.Z.conjugate())); },
      cfg.threads);
  ResidualReport e;
  e.check_id = e_id;
  e.anchor = e_anchor;
  e.lhs = L.value;
  e.rhs = R.value;
  e.abs_residual = std::abs(L.value - R.value);
  e.residual = std::max(std::abs(L.value), std::abs(R.value));
  e.tolerance = tol;
  e.kind = ResidualKind::kAbsolute;
  e.status = e.residual <= tol ? Status::kPass : Status::kFail;
  attach(e, L, R);
  out.push_back(e);
  return out;
}

/// Boundary data for the extension demonstration: three CR restrictions and
/// the non-CR control conj(z1).
template <int N>
std::vector<NamedField<N>> extension_battery() {
  using CF = ComplexField<N>;
  const CF z1 = CF::z(0), z2 = CF::z(1);
  return {{"z1^2 z2", z1 * z1 * z2},
          {"1/(z1-2)", CF(1.0) / (z1 - CF(2.0))},
          {"z2^3", z2 * z2 * z2},
          {"conj(z1)", z1.conj()}};
}

template <int N>
std::vector<ResidualReport> extension_suite(const Tolerances& tol, const ExtensionSettings& cfg = {}) {
  std::vector<ResidualReport> out;
  for (const auto& d : extension_battery<N>())
    for (auto& r : extension_checks(d, tol.extension, cfg)) out.push_back(std::move(r));
  return out;
}

}  // namespace kaehler
