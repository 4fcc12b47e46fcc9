#include <gtest/gtest.h>

#include <cmath>

#include "kaehler/boundary.hpp"
#include "support.hpp"

using namespace kaehler;
using CF = ComplexField<2>;

namespace {

constexpr double kPi = std::numbers::pi;

struct Surf {
  SpaceForm<2> space;
  Hypersurface<2> S;
  const char* name;
};

std::vector<Surf> surfaces() {
  const SpaceForm<2> flat(0), ch(-1), cp(1);
  return {{flat, sphere(flat, 1.0), "flat sphere"},
          {ch, sphere(ch, 0.5), "ch sphere"},
          {cp, sphere(cp, kPi / 6), "cp sphere"},
          {flat, ellipsoid(flat, {1.0, 1.2}), "flat ellipsoid"},
          {ch, ellipsoid(ch, {0.4, 0.6}), "ch ellipsoid"},
          {cp, tube(cp, 1, 0.5), "cp tube"}};
}

// Random polynomial of low degree in z, zbar.
CF random_poly(kt::Gen& gen) {
  const CF z1 = CF::z(0), z2 = CF::z(1);
  const CF w1 = z1.conj(), w2 = z2.conj();
  const CF mons[] = {CF(1.0), z1, z2, w1, w2, z1 * w2, z1 * z1, w1 * w2, z2 * w2, z1 * w1 * z2};
  CF f(0.0);
  for (const auto& m : mons) f = f + cplx(gen.normal(), gen.normal()) * m;
  return f;
}

}  // namespace

TEST(DbarB, HolomorphicAndConstantRestrictions) {
  for (const auto& s : surfaces()) {
    for (const auto& p : sample_surface(s.S, 10, 40)) {
      const auto f = frame_at(s.space, s.S, p);
      EXPECT_NEAR(std::abs(dbar_b(f, (CF::z(0) * CF::z(1)).jet(p))[0]), 0.0, 1e-14) << s.name;
      EXPECT_EQ(std::abs(dbar_b(f, CF(2.5).jet(p))[0]), 0.0);
      EXPECT_NEAR(std::abs(kohn_laplacian(f, CF(2.5).jet(p))), 0.0, 0.0);
      EXPECT_NEAR(std::abs(kohn_laplacian(f, (CF::z(0) * CF::z(0) + CF::z(1)).jet(p))), 0.0, 1e-12)
          << s.name;
    }
  }
  // zbar_1 on the flat unit sphere at (0, 1): X is proportional to d/dz_1.
  const SpaceForm<2> flat(0);
  const auto S = sphere(flat, 1.0);
  const auto f = frame_at(flat, S, Point<2>{{0, 0, 1, 0}});
  EXPECT_NEAR(std::abs(dbar_b(f, CF::zbar(0).jet(f.p))[0]), std::sqrt(2.0), 1e-14);
}

TEST(DbarB, TangentialDerivativesIgnoreTheExtension) {
  kt::Gen gen(41);
  for (const auto& s : surfaces()) {
    const CF rho(s.S.rho);
    for (const auto& p : sample_surface(s.S, 10, 42)) {
      const CF F = random_poly(gen), G = random_poly(gen);
      const CF F2 = F + rho * G;
      const auto f = frame_at(s.space, s.S, p);
      const auto a = dbar_b(f, F.jet(p)), b = dbar_b(f, F2.jet(p));
      const auto c = d_b(f, F.jet(p)), d = d_b(f, F2.jet(p));
      EXPECT_NEAR(std::abs(a[0] - b[0]), 0.0, 1e-8);
      EXPECT_NEAR(std::abs(c[0] - d[0]), 0.0, 1e-8);
      const cplx k1 = kohn_laplacian(f, F.jet(p)), k2 = kohn_laplacian(f, F2.jet(p));
      EXPECT_NEAR(std::abs(k1 - k2), 0.0, 1e-7 * std::max(1.0, std::abs(k1))) << s.name;
    }
  }
}

TEST(DivT, VanishesOnEverySurface) {
  for (const auto& s : surfaces())
    for (const auto& p : sample_surface(s.S, 50, 43))
      EXPECT_NEAR(div_T(frame_at(s.space, s.S, p)), 0.0, 1e-8) << s.name;
  const SpaceForm<3> cp3(1);
  const auto t = tube(cp3, 1, 0.4);
  for (const auto& p : sample_surface(t, 20, 44)) EXPECT_NEAR(div_T(frame_at(cp3, t, p)), 0.0, 1e-8);
}

TEST(Compare, PointwiseIdentity) {
  kt::Gen gen(45);
  for (const auto& s : surfaces()) {
    double worst = 0.0;
    for (const auto& p : sample_surface(s.S, 50, 46)) {
      const auto f = frame_at(s.space, s.S, p);
      const CF F = random_poly(gen);
      worst = std::max(worst, compare_residual(f, F.jet(p)) / std::max(1.0, std::abs(F(p))));
    }
    EXPECT_LE(worst, 1e-7) << s.name;
  }
  const SpaceForm<2> flat(0), cp(1);
  const auto S1 = sphere(flat, 1.0);
  const auto S2 = sphere(cp, kPi / 6);
  for (const auto& p : sample_surface(S1, 50, 47))
    EXPECT_LE(compare_residual(frame_at(flat, S1, p), CF::z(0).real_part().jet(p)), 1e-7);
  for (const auto& p : sample_surface(S2, 50, 48))
    EXPECT_LE(compare_residual(frame_at(cp, S2, p), CF::z(1).imag_part().jet(p)), 1e-7);
}

TEST(Compare, OppositeSignOfTheNormalTermFails) {
  // D^2 f(T,T) = D^2F(T,T) - alpha nu F; flipping the sign of the alpha term
  // breaks the identity wherever nu F != 0.
  const SpaceForm<2> ch(-1);
  const auto S = sphere(ch, 0.5);
  const CF F = CF::z(0).abs2() + CF::z(1).real_part();
  for (const auto& p : sample_surface(S, 10, 49)) {
    const auto f = frame_at(ch, S, p);
    const auto j = F.jet(p);
    const auto [l, r] = compare_sides(f, j);
    const cplx flipped = r - 2.0 * f.alpha * directional(j, f.nu.v);
    EXPECT_LE(std::abs(l - r), 1e-9);
    EXPECT_GT(std::abs(l - flipped), 1e-3 * std::abs(directional(j, f.nu.v)));
  }
}

TEST(Kohn, FiniteDifferencePathAgrees) {
  kt::Gen gen(50);
  for (const auto& s : surfaces()) {
    if (!s.S.parametrized) continue;
    for (int t = 0; t < 10; ++t) {
      const std::array<double, 3> th{gen.uniform(0.2, kPi / 2 - 0.2), gen.uniform(0, 2 * kPi),
                                     gen.uniform(0, 2 * kPi)};
      const CF F = random_poly(gen);
      const auto f = frame_at(s.space, s.S, param_point(s.S, th));
      const cplx ad = kohn_laplacian(f, F.jet(f.p));
      const cplx fd = kohn_laplacian_fd(s.space, s.S, F, th);
      EXPECT_NEAR(std::abs(ad - fd), 0.0, 1e-6 * std::max(1.0, std::abs(ad))) << s.name;
    }
  }
}

TEST(Kohn, DualityOnClosedSurfaces) {
  kt::Gen gen(51);
  const SpaceForm<2> flat(0), ch(-1);
  {
    const SurfaceQuadrature<2> sq(flat, sphere(flat, 1.0), {16, 16, 16}, 1);
    const auto r = duality_check(sq, CF::z(0).real_part(), CF::z(1).imag_part(), 1e-6);
    EXPECT_TRUE(r.pass()) << r.residual;
    EXPECT_TRUE(duality_check(sq, CF(1.0), CF(1.0), 1e-6).pass());
  }
  for (const auto& s : {Surf{ch, sphere(ch, 0.5), "ch sphere"}, Surf{flat, ellipsoid(flat, {1.0, 1.3}), "ellipsoid"}}) {
    const SurfaceQuadrature<2> sq(s.space, s.S, {24, 16, 16}, 1);
    for (int t = 0; t < 5; ++t) {
      const auto r = duality_check(sq, random_poly(gen), random_poly(gen), 1e-6);
      EXPECT_TRUE(r.pass()) << s.name << " " << r.residual << " " << r.lhs << " " << r.rhs;
    }
  }
}

TEST(Kohn, RealFunctionsIntegrateToARealNumber) {
  const SpaceForm<2> flat(0);
  const auto E = ellipsoid(flat, {1.0, 1.4});
  const SurfaceQuadrature<2> sq(flat, E, {24, 16, 16}, 1);
  const CF F = CF::z(0).abs2() * CF::z(1).real_part() + CF::z(1).imag_part();
  const auto I = sq.integrate([&](const BoundaryFrame<2>& f) { return kohn_laplacian(f, F.jet(f.p)); }, 1);
  EXPECT_LE(std::abs(I.value.imag()), 1e-8);
}

TEST(Kohn, OppositeSignOfTheTorsionTermBreaksDuality) {
  // On the flat sphere Pi(T, X) = 0, so only a non-Hopf surface can pin the sign.
  const SpaceForm<2> flat(0);
  const SurfaceQuadrature<2> sq(flat, ellipsoid(flat, {1.0, 1.3}), {24, 16, 16}, 1);
  const CF F = CF::zbar(0) * CF::z(1) + CF::zbar(1), G = CF::zbar(1) + CF::z(0) * CF::zbar(0);
  const auto r = duality_check(sq, F, G, 1e-6);
  EXPECT_TRUE(r.pass()) << r.residual;
  const auto torsion = sq.integrate(
      [&](const BoundaryFrame<2>& f) {
        return cplx(0, 1) * f.Pi_TX[0] * dbar_b(f, F.jet(f.p))[0] * std::conj(G(f.p));
      },
      1);
  // Flipping +i Pi(T,X) to -i Pi(T,X) shifts the right-hand side by 2 * torsion.
  const auto flipped = equality_report("flipped", "", r.lhs, r.rhs + 2.0 * torsion.value, 1e-6, r.scale);
  EXPECT_GT(std::abs(torsion.value), 1e-3);
  EXPECT_FALSE(flipped.pass());
}
