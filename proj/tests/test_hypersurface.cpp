#include <gtest/gtest.h>

#include <cmath>

#include "kaehler/hypersurface.hpp"
#include "support.hpp"

using namespace kaehler;
using P2 = Point<2>;

namespace {

constexpr double kPi = std::numbers::pi;

double coth(double x) { return 1.0 / std::tanh(x); }
double cot(double x) { return 1.0 / std::tan(x); }

template <int N>
void expect_frame_invariants(const BoundaryFrame<N>& f) {
  EXPECT_NEAR(std::abs(f.pair(f.nu.v, f.nu.v) - 1.0), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(f.pair(f.T.v, f.T.v) - 1.0), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(f.pair(f.nu.v, f.T.v)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(f.herm(f.Z, f.Z) - 1.0), 0.0, 1e-10);
  for (int a = 0; a < N - 1; ++a) {
    EXPECT_NEAR(std::abs(f.herm(f.X[a].v, f.Z)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(f.pair(f.X[a].v, f.nu.v)), 0.0, 1e-10);
    for (int b = 0; b < N - 1; ++b)
      EXPECT_NEAR(std::abs(f.herm(f.X[a].v, f.X[b].v) - (a == b ? 1.0 : 0.0)), 0.0, 1e-10);
  }
  EXPECT_LT((f.Pi_HH - f.Pi_HH.adjoint()).norm(), 1e-10);
  EXPECT_LT((f.Pi_HH_hol - f.Pi_HH_hol.transpose()).norm(), 1e-10);
  for (int a = 0; a < N - 1; ++a)
    EXPECT_NEAR(std::abs(f.Pi_TX[a] - f.Pi(f.X[a].v, f.T.v)), 0.0, 1e-10);
  cplx tr = 0.0;
  for (int a = 0; a < N - 1; ++a) tr += levi_form(f, a, a);
  EXPECT_NEAR(std::abs(tr - f.H_b), 0.0, 1e-10);
}

}  // namespace

TEST(Sphere, ChartRadius) {
  EXPECT_NEAR(sphere(SpaceForm<2>::flat(), 1.0).scales[0], 1.0, 1e-15);
  EXPECT_NEAR(sphere(SpaceForm<2>::hyperbolic(), 0.5).scales[0], 0.46211715726000974, 1e-15);
  EXPECT_NEAR(sphere(SpaceForm<2>::projective(), kPi / 4).scales[1], 1.0, 1e-15);
  EXPECT_THROW(sphere(SpaceForm<2>::projective(), 2.0), std::invalid_argument);
  EXPECT_THROW(sphere(SpaceForm<2>::flat(), -1.0), std::invalid_argument);
  EXPECT_THROW(tube(SpaceForm<2>::hyperbolic(), 1, 0.3), std::invalid_argument);
}

TEST(Frame, FlatUnitSphere) {
  const auto s = SpaceForm<2>::flat();
  const auto S = sphere(s, 1.0);
  for (const auto& p : sample_surface(S, 20, 1)) {
    const auto f = frame_at(s, S, p);
    expect_frame_invariants(f);
    EXPECT_NEAR(f.H, 3.0, 1e-12);
    EXPECT_NEAR(f.alpha, 1.0, 1e-12);
    EXPECT_NEAR(f.H_b, 2.0, 1e-12);
    EXPECT_NEAR(levi_form(f, 0, 0).real(), 2.0, 1e-12);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(f.nu.v[i] - p.x[i]), 0.0, 1e-12);
  }
}

TEST(Frame, SphereSpectraInAllSpaces) {
  struct Case {
    int kappa;
    double a, alpha, lambda;
  };
  const Case cases[] = {{-1, 0.5, 2 * coth(1.0), coth(0.5)},
                        {1, kPi / 6, 2 * cot(kPi / 3), cot(kPi / 6)},
                        {0, 0.8, 1 / 0.8, 1 / 0.8},
                        {-1, 1.3, 2 * coth(2.6), coth(1.3)}};
  EXPECT_NEAR(2 * coth(1.0), 2.626071, 1e-6);
  EXPECT_NEAR(coth(0.5), 2.163953, 1e-6);
  EXPECT_NEAR(2 * cot(kPi / 3), 1.154701, 1e-6);
  for (const auto& c : cases) {
    const SpaceForm<2> s(c.kappa);
    const auto S = sphere(s, c.a);
    for (const auto& p : sample_surface(S, 25, 2)) {
      const auto f = frame_at(s, S, p);
      expect_frame_invariants(f);
      EXPECT_NEAR(f.alpha, c.alpha, 1e-8);
      EXPECT_LE(hopf_residual(f), 1e-9);
      const auto sp = shape_spectrum(f);
      EXPECT_EQ(sp.clusters.size(), c.kappa == 0 ? 1u : 2u);
      EXPECT_NEAR(sp.t_eigenvalue, c.alpha, 1e-8);
      std::vector<double> expect{c.alpha, c.lambda, c.lambda};
      std::sort(expect.begin(), expect.end());
      for (int i = 0; i < 3; ++i) EXPECT_NEAR(sp.eigenvalues[i], expect[i], 1e-8);
      EXPECT_NEAR(f.H_b, 2 * c.lambda, 1e-8);
      EXPECT_GT(levi_form(f, 0, 0).real(), 0.0);
    }
  }
}

TEST(Frame, ImplicitAndParametrizedAgree) {
  kt::Gen gen(30);
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm<2> s(kappa);
    for (const auto& S : {sphere(s, 0.6), ellipsoid(s, {0.5, 0.7})}) {
      for (int t = 0; t < 50; ++t) {
        std::array<double, 3> th{gen.uniform(0.05, kPi / 2 - 0.05), gen.uniform(0, 2 * kPi),
                                 gen.uniform(0, 2 * kPi)};
        const auto p = param_point(S, th);
        const auto f = frame_at(s, S, p);
        const auto g = param_geometry(s, S, th);
        for (int a = 0; a < 4; ++a) EXPECT_NEAR(std::abs(f.nu.v[a] - g.nu[a]), 0.0, 1e-8);
        EXPECT_NEAR(f.H, g.H, 1e-8);
        EXPECT_NEAR(g.area, area_density(s, S, th), 1e-12);
      }
    }
  }
}

TEST(Frame, EllipsoidIsNotHopfButPseudoconvex) {
  const auto s = SpaceForm<2>::flat();
  const auto E = ellipsoid(s, {1.0, 2.0});
  const auto p = param_point(E, {0.7, 0.3, 1.1});
  const auto f = frame_at(s, E, p);
  expect_frame_invariants(f);
  EXPECT_GT(hopf_residual(f), 1e-3);
  EXPECT_GT(levi_form(f, 0, 0).real(), 0.0);
  EXPECT_LT(shape_spectrum(f).asymmetry, 1e-10);
}

TEST(Frame, RejectsPointsOffTheSurface) {
  const auto s = SpaceForm<2>::flat();
  EXPECT_THROW(frame_at(s, sphere(s, 1.0), P2{{0.5, 0, 0, 0}}), GeometryError);
}

TEST(Frame, AlphaIsConstantOnHopfSurfaces) {
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm<2> s(kappa);
    const auto S = sphere(s, 0.7);
    double lo = 1e300, hi = -1e300;
    for (const auto& p : sample_surface(S, 200, 3)) {
      const double a = frame_at(s, S, p).alpha;
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    EXPECT_LE(hi - lo, 1e-7);
  }
}

TEST(Frame, ContactSplittingOnSpheres) {
  // A - JAJ = (c/m) I on the contact distribution, c = H_b.
  const SpaceForm<2> s(-1);
  const auto S = sphere(s, 0.5);
  for (const auto& p : sample_surface(S, 20, 4)) {
    const auto f = frame_at(s, S, p);
    const auto b = tangent_basis(f);
    for (int i = 1; i < 3; ++i)
      for (int j = 1; j < 3; ++j) {
        const cplx ajaj = f.pair(f.shape(b[i]), b[j]) + f.pair(f.shape(b[i].J()), b[j].J());
        EXPECT_NEAR(std::abs(ajaj - (i == j ? f.H_b : 0.0)), 0.0, 1e-8);
      }
  }
}

TEST(Tube, PointOnTubeAndSphereConsistency) {
  const SpaceForm<2> cp(1);
  const double a = 0.6;
  const auto t0 = tube(cp, 0, a);
  const auto sp = sphere(cp, a);
  for (const auto& p : sample_surface(t0, 20, 5)) {
    EXPECT_NEAR(dist_to_center(cp, p), a, 1e-12);
    const auto f = frame_at(cp, t0, p);
    const auto g = frame_at(cp, sp, p);
    EXPECT_NEAR(f.alpha, g.alpha, 1e-10);
    EXPECT_NEAR(f.H, g.H, 1e-10);
  }
  // k = 1 in CP^2: sphere of chart radius cot a in the chart of the dual point.
  const auto t1 = tube(cp, 1, a);
  for (const auto& p : sample_surface(t1, 20, 6, 2.0)) {
    const cplx z1 = p.z(0), z2 = p.z(1);
    EXPECT_NEAR(std::abs(t1.rho(p)), 0.0, 1e-12);
    EXPECT_NEAR(std::hypot(std::abs(1.0 / z2), std::abs(z1 / z2)), cot(a), 1e-10);
    const auto f = frame_at(cp, t1, p);
    expect_frame_invariants(f);
    EXPECT_LE(hopf_residual(f), 1e-9);
  }
}

TEST(Tube, CP3OverCP1Spectrum) {
  const SpaceForm<3> cp(1);
  const double a = 0.4;
  const auto t = tube(cp, 1, a);
  for (const auto& p : sample_surface(t, 20, 7)) {
    const auto f = frame_at(cp, t, p);
    expect_frame_invariants(f);
    EXPECT_LE(hopf_residual(f), 1e-9);
    const auto sp = shape_spectrum(f);
    ASSERT_EQ(sp.clusters.size(), 3u);
    EXPECT_NEAR(sp.t_eigenvalue, 2 * cot(2 * a), 1e-6);
    std::vector<std::pair<double, int>> got;
    for (const auto& c : sp.clusters) got.push_back({c.value, c.multiplicity});
    std::sort(got.begin(), got.end());
    EXPECT_NEAR(got[0].first, -std::tan(a), 1e-6);
    EXPECT_EQ(got[0].second, 2);
    EXPECT_NEAR(got[1].first, 2 * cot(2 * a), 1e-6);
    EXPECT_EQ(got[1].second, 1);
    EXPECT_NEAR(got[2].first, cot(a), 1e-6);
    EXPECT_EQ(got[2].second, 2);
    EXPECT_NEAR(cot(a) * -std::tan(a) + 1.0, 0.0, 1e-15);
  }
}

TEST(Frame, ThreeDimensionalSphere) {
  const SpaceForm<3> ch(-1);
  const auto S = sphere(ch, 0.5);
  for (const auto& p : sample_surface(S, 10, 8)) {
    const auto f = frame_at(ch, S, p);
    expect_frame_invariants(f);
    EXPECT_NEAR(f.H_b, 4 * coth(0.5), 1e-8);
    EXPECT_NEAR(f.alpha, 2 * coth(1.0), 1e-8);
  }
}
