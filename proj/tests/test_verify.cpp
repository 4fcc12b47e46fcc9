#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "kaehler/verify.hpp"
#include "support.hpp"

using namespace kaehler;

namespace {

constexpr double kPi = std::numbers::pi;
const Tolerances kTol;

Domain<2> ball(int kappa, double a, QuadratureOrders q = {}) {
  const SpaceForm<2> s(kappa);
  return Domain<2>(s, sphere(s, a), q);
}

const ResidualReport& by_id(const std::vector<ResidualReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.check_id == id) return r;
  throw std::runtime_error("missing " + id);
}

NamedField<2> field_named(const std::string& name) {
  for (const auto& f : identity_battery<2>())
    if (f.name == name) return f;
  throw std::runtime_error("missing field " + name);
}

}  // namespace

TEST(Battery, TwelveDistinctFields) {
  const auto b = identity_battery<2>();
  ASSERT_EQ(int(b.size()), kBatterySize);
  std::set<std::string> names;
  for (const auto& f : b) names.insert(f.name);
  EXPECT_EQ(names.size(), b.size());
  // seeded: the random members repeat
  const auto c = identity_battery<2>();
  const Point<2> p = kt::Gen(3).point<2>(0.5);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b[i].field(p), c[i].field(p));
}

TEST(MainIdentity, ConstantFieldGivesZeroEqualsZero) {
  const auto d = ball(-1, 0.5, {8, 6, 8});
  const auto r = check_main_identity(d, NamedField<2>{"1", ComplexField<2>(1.0)}, kTol.identity);
  EXPECT_EQ(r.lhs, cplx(0.0));
  EXPECT_EQ(std::abs(r.rhs), 0.0);
  EXPECT_TRUE(r.pass());
}

TEST(MainIdentity, ExamplesOnBalls) {
  const auto a = check_main_identity(ball(0, 1.0), field_named("|z1|^2 + Re z2"), kTol.identity);
  EXPECT_TRUE(a.pass()) << a.residual;
  EXPECT_LT(a.residual, 1e-6);
  const auto b = check_main_identity(ball(-1, 0.5), field_named("z1 conj(z2) + z2"), kTol.identity);
  EXPECT_TRUE(b.pass()) << b.residual;
  EXPECT_LT(b.residual, 1e-6);
}

TEST(MainIdentity, HoldsForEveryBatteryFieldOnSmallRules) {
  for (int kappa : {-1, 0, 1}) {
    const auto d = ball(kappa, 0.5, {12, 10, 12});
    for (const auto& F : identity_battery<2>()) {
      const auto r = check_main_identity(d, F, 1e-6);
      EXPECT_TRUE(r.pass()) << "kappa=" << kappa << " " << F.name << " " << r.residual;
    }
  }
}

TEST(MainIdentity, RealEllipsoidsExerciseTheHolomorphicSecondFormTerm) {
  // Pi(Xbar, Xbar) vanishes on spheres and complex ellipsoids, so only a
  // real ellipsoid tests that boundary term.
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm<2> s(kappa);
    const double k = kappa < 0 ? 0.5 : 1.0;
    const Domain<2> d(s, real_ellipsoid<2>(s, {0.5 * k, 0.7 * k, 0.6 * k, 0.45 * k}), {24, 16, 24});
    double largest = 0.0;
    for (const auto& f : d.surface_rule().fine.frames) largest = std::max(largest, f.Pi_HH_hol.cwiseAbs().maxCoeff());
    EXPECT_GT(largest, 0.05);
    for (const auto& F : identity_battery<2>()) {
      const auto r = check_main_identity(d, F, kTol.identity);
      EXPECT_TRUE(r.pass()) << "kappa=" << kappa << " " << F.name << " " << r.residual;
    }
  }
}

TEST(MainIdentity, ConjugatedHolomorphicDerivativeReadingFails) {
  // The term sqrt2 Pi(Xbar_a, Xbar_b) f_a conj(Xbar_b F) balances the volume
  // side; replacing conj(Xbar_b F) with conj(X_b F) does not.
  const SpaceForm<2> s(0);
  const Domain<2> d(s, real_ellipsoid<2>(s, {1.0, 1.4, 1.2, 0.9}), {24, 16, 24});
  const auto F = field_named("|z1|^2 + Re z2");
  const auto good = check_main_identity(d, F, kTol.identity);
  EXPECT_TRUE(good.pass()) << good.residual;
  const auto alt = d.surface_rule().integrate([&](const BoundaryFrame<2>& f) {
    const auto j = F.field.jet(f.p);
    auto t = identity_boundary_terms(f, j);
    const auto fa = d_b(f, j);
    t[2] = std::numbers::sqrt2 * f.Pi_HH_hol(0, 0) * fa[0] * std::conj(fa[0]);
    return t[0] + t[1] + t[2] + t[3];
  }, 1);
  EXPECT_GT(std::abs(alt.value - good.lhs) / std::abs(good.lhs), 1e-3);
}

TEST(MainIdentity, ResidualShrinksWithResolution) {
  const auto F = field_named("exp(-|z|^2)");
  const auto coarse = check_main_identity(ball(-1, 0.8, {6, 4, 6}), F, 1.0);
  const auto fine = check_main_identity(ball(-1, 0.8, {16, 12, 16}), F, 1.0);
  EXPECT_LT(fine.residual, std::max(1e-12, 0.1 * coarse.residual));
}

TEST(MainIdentity, ThreeDimensionalBall) {
  const SpaceForm<3> s(-1);
  const Domain<3> d(s, sphere(s, 0.4), {8, 8, 8});
  auto battery = identity_battery<3>();
  for (const auto& F : {battery[0], battery[5], battery[7]}) {
    const auto r = check_main_identity(d, F, kTol.identity);
    EXPECT_TRUE(r.pass()) << F.name << " " << r.residual;
  }
}

TEST(MainIdentity, ThreadCountDoesNotChangeTheBits) {
  const auto F = field_named("exp(z1 + conj(z2))");
  const SpaceForm<2> s(1);
  const auto a = check_main_identity(Domain<2>(s, sphere(s, 0.8), {10, 8, 10}, 1), F, 1.0);
  const auto b = check_main_identity(Domain<2>(s, sphere(s, 0.8), {10, 8, 10}, 3), F, 1.0);
  EXPECT_EQ(a.lhs, b.lhs);
  EXPECT_EQ(a.rhs, b.rhs);
  EXPECT_EQ(a.residual, b.residual);
}

TEST(Inequalities, FlatUnitBallIsAnEqualityCase) {
  const auto d = ball(0, 1.0);
  const auto inv = check_inv_hb(d, kTol.inequality);
  // int 1/H_b = |S^3|/2 = pi^2 and (m+1)/m |B| = 2 pi^2/2
  EXPECT_NEAR(inv.lhs.real(), kPi * kPi, 1e-9);
  EXPECT_NEAR(inv.rhs.real(), kPi * kPi, 1e-9);
  EXPECT_TRUE(inv.pass());
  EXPECT_EQ(inv.note, "equality");
  const auto iso = check_iso(d, kTol.inequality);
  EXPECT_NEAR(iso.lhs.real(), 2 * kPi * kPi, 1e-9);
  EXPECT_NEAR(iso.rhs.real(), 2 * kPi * kPi, 1e-9);
  EXPECT_EQ(iso.note, "equality");
}

TEST(Inequalities, GeodesicBallsAreEqualityCases) {
  for (auto [kappa, a] : {std::pair{-1, 0.7}, {-1, 0.5}, {1, 0.6}}) {
    const auto d = ball(kappa, a);
    for (const auto& r : {check_inv_hb(d, kTol.inequality), check_iso(d, kTol.inequality)}) {
      EXPECT_TRUE(r.pass()) << r.check_id << " kappa=" << kappa;
      EXPECT_LT(std::abs(r.abs_residual) / std::abs(r.lhs), 1e-6) << r.check_id;
    }
  }
}

TEST(Inequalities, ComplexEllipsoidIsStrict) {
  const SpaceForm<2> s(0);
  const Domain<2> d(s, ellipsoid<2>(s, {1.0, 1.2}));
  const auto inv = check_inv_hb(d, kTol.inequality);
  // |Omega| = pi^2/2 (1 * 1.2)^2
  EXPECT_NEAR(inv.rhs.real(), 2 * 0.5 * kPi * kPi * 1.44, 1e-8);
  EXPECT_GT(inv.abs_residual, 1e-3);
  EXPECT_EQ(inv.note, "strict");
  const auto iso = check_iso(d, kTol.inequality);
  EXPECT_GT(iso.abs_residual, 1e-3);
  EXPECT_TRUE(inv.pass() && iso.pass());
}

TEST(Inequalities, LevelSetIsNotApplicable) {
  const SpaceForm<2> s(0);
  const Domain<2> d(s, level_set(ScalarField<2>::norm2() - 1.0));
  EXPECT_EQ(check_inv_hb(d, kTol.inequality).status, Status::kNotApplicable);
  EXPECT_EQ(check_iso(d, kTol.inequality).status, Status::kNotApplicable);
  EXPECT_EQ(check_minkowski(d, kTol.minkowski).status, Status::kNotApplicable);
}

TEST(EqualityCase, HoldsOnGeodesicSpheres) {
  for (auto [kappa, a] : {std::pair{0, 1.0}, {-1, 0.5}, {1, kPi / 6}}) {
    const SpaceForm<2> s(kappa);
    for (const auto& r : check_equality_case(s, sphere(s, a), kTol.equality_case))
      EXPECT_TRUE(r.pass()) << r.check_id << " kappa=" << kappa << " " << r.residual;
  }
  const SpaceForm<2> f(0);
  for (const auto& r : check_equality_case(f, ellipsoid<2>(f, {1.0, 1.2}), kTol.equality_case))
    EXPECT_EQ(r.status, Status::kNotApplicable);
}

TEST(Minkowski, SpheresInAllSpaces) {
  const auto flat = check_minkowski(ball(0, 1.0), kTol.minkowski);
  EXPECT_NEAR(flat.lhs.real(), 2 * 2 * kPi * kPi, 1e-9);
  EXPECT_TRUE(flat.pass());
  EXPECT_TRUE(check_minkowski(ball(-1, 0.5), kTol.minkowski).pass());
  EXPECT_TRUE(check_minkowski(ball(1, kPi / 6), kTol.minkowski).pass());
}

TEST(Minkowski, ComplexEllipsoidIsNotHopf) {
  const SpaceForm<2> s(0);
  const auto r = check_minkowski(Domain<2>(s, ellipsoid<2>(s, {1.0, 1.2}), {12, 8, 12}), kTol.minkowski);
  EXPECT_EQ(r.status, Status::kHypothesisFailed);
  EXPECT_FALSE(r.failed());
}

TEST(Hessian, ClosedFormEigenvaluesAtDistanceHalf) {
  // 2 cosh 1 / sinh 1 and cosh 0.5 / sinh 0.5
  EXPECT_NEAR(2 * cot_kappa(-1, 1.0), 2.626071, 5e-7);
  EXPECT_NEAR(cot_kappa(-1, 0.5), 2.163953, 5e-7);
  EXPECT_DOUBLE_EQ(cot_kappa(0, 0.5), 2.0);
  EXPECT_NEAR(cot_kappa(1, kPi / 4), 1.0, 1e-15);
}

TEST(Hessian, DistanceFunctionMatchesClosedForms) {
  kt::Gen gen(29);
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm<2> s(kappa);
    std::vector<Point<2>> pts;
    for (int i = 0; i < 30; ++i) pts.push_back(gen.point<2>(kappa < 0 ? 0.9 : 1.5));
    const auto r = check_hessian_r(s, pts, kTol.hessian);
    EXPECT_TRUE(r.pass()) << "kappa=" << kappa << " " << r.residual;
  }
}

TEST(Spectra, SpheresAndTube) {
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm<2> s(kappa);
    for (const auto& r : spectra_suite(s, sphere(s, 0.5), kTol)) EXPECT_TRUE(r.pass()) << r.check_id;
  }
  const SpaceForm<3> cp(1);
  const auto t = tube(cp, 1, 0.4);
  // {2 cot 0.8, cot 0.4 x 2, -tan 0.4 x 2}
  const auto cf = closed_form_spectrum(cp, t);
  std::vector<double> want = {-std::tan(0.4), -std::tan(0.4), 2 / std::tan(0.8), 1 / std::tan(0.4),
                              1 / std::tan(0.4)};
  auto got = cf;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  for (const auto& r : spectra_suite(cp, t, kTol)) EXPECT_TRUE(r.pass()) << r.check_id << " " << r.residual;
}

TEST(Spectra, EllipsoidHasNoClosedFormAndNoConstantAlpha) {
  const SpaceForm<2> s(0);
  const auto rs = spectra_suite(s, ellipsoid<2>(s, {1.0, 1.2}), kTol);
  EXPECT_EQ(by_id(rs, "shape-spectrum").status, Status::kNotApplicable);
  EXPECT_EQ(by_id(rs, "alpha-constant").status, Status::kHypothesisFailed);
}

TEST(Rigidity, CodazziAndQuadraticRelationOnSpheres) {
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm<2> s(kappa);
    const auto rs = rigidity_suite(s, sphere(s, 0.5), kTol);
    EXPECT_TRUE(by_id(rs, "codazzi").pass()) << kappa;
    EXPECT_TRUE(by_id(rs, "quadratic-relation").pass()) << kappa;
    EXPECT_EQ(by_id(rs, "berndt-product").status, Status::kNotApplicable);
  }
}

TEST(Rigidity, ComparisonBoundsOnHyperbolicSpheres) {
  const SpaceForm<2> s(-1);
  for (double a : {0.1, 0.5, 2.0}) {
    const auto rs = rigidity_suite(s, sphere(s, a), kTol);
    // alpha = 2 coth 2a > 2, lambda = coth a > 1
    EXPECT_NEAR(by_id(rs, "comparison-alpha").lhs.real(), 2 / std::tanh(2 * a), 1e-9);
    EXPECT_NEAR(by_id(rs, "comparison-lambda").lhs.real(), 1 / std::tanh(a), 1e-9);
    EXPECT_TRUE(by_id(rs, "comparison-alpha").pass());
    EXPECT_TRUE(by_id(rs, "comparison-lambda").pass());
  }
  const SpaceForm<2> p(1);
  EXPECT_EQ(by_id(rigidity_suite(p, sphere(p, 0.5), kTol), "comparison-alpha").status, Status::kNotApplicable);
}

TEST(Rigidity, TubeProductRelation) {
  const SpaceForm<3> cp(1);
  for (double a : {0.4, 0.9}) {
    const auto rs = rigidity_suite(cp, tube(cp, 1, a), kTol);
    EXPECT_TRUE(by_id(rs, "codazzi").pass()) << a;
    EXPECT_TRUE(by_id(rs, "berndt-product").pass()) << a << " " << by_id(rs, "berndt-product").residual;
    EXPECT_EQ(by_id(rs, "quadratic-relation").status, Status::kNotApplicable);
  }
}

TEST(Rigidity, CodazziOperatorDetectsAWrongCurvatureSign) {
  // Same sphere, Codazzi operator with kappa of the opposite space.
  const SpaceForm<2> s(-1);
  const auto S = sphere(s, 0.5);
  const auto P = phi_matrix<2>();
  const auto f = frame_at(s, S, surface_samples(S, 1, 3)[0]);
  const Eigen::Matrix3d A = shape_matrix(f);
  const Eigen::Matrix3d good = A * P * A - 0.5 * f.alpha * (A * P + P * A) + P;
  const Eigen::Matrix3d bad = A * P * A - 0.5 * f.alpha * (A * P + P * A) - P;
  EXPECT_LT(good.cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_GT(bad.cwiseAbs().maxCoeff(), 1.0);
}

TEST(Boundary, SuitePassesOnSpheresAndEllipsoids) {
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm<2> s(kappa);
    const double k = kappa < 0 ? 0.6 : 1.0;
    const Domain<2> d(s, ellipsoid<2>(s, {0.8 * k, k}), {16, 12, 16});
    for (const auto& r : boundary_suite(d, kTol)) EXPECT_TRUE(r.pass()) << r.check_id << " " << r.residual;
  }
}

TEST(Reports, StatusAndAnchorsAreSet) {
  const auto d = ball(-1, 0.5, {8, 6, 8});
  for (const auto& r : inequality_suite(d, kTol)) {
    EXPECT_FALSE(r.check_id.empty());
    EXPECT_FALSE(r.anchor.empty());
  }
  const auto r = status_report("x", "y", Status::kHypothesisFailed, "z");
  EXPECT_FALSE(r.failed());
  EXPECT_FALSE(r.pass());
}
