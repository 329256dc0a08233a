#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symtorus/builders.hpp"
#include "symtorus/flows.hpp"

using namespace symtorus;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Generator rotation(const Grid& g, std::size_t steps, std::vector<double> v) {
  const HarmonicForm h = rotation_form(v);
  return Generator::sample(g, steps, [](double, std::span<const double>) { return 0.0; }, [&](double) { return h; });
}

Generator shear(const Grid& g, std::size_t steps) {
  return Generator::sample(
      g, steps, [](double, std::span<const double> x) { return std::sin(kTwoPi * x[1]) / kTwoPi; },
      [&](double) { return HarmonicForm::zero(g.n); });
}

// phi_t(theta) = (theta_1 + t cos(2 pi theta_2), theta_2)
double shear_error(const Isotopy& phi) {
  const Grid& g = phi.grid;
  std::vector<double> x(2);
  double worst = 0.0;
  for (std::size_t k = 0; k < phi.samples(); ++k) {
    const double t = phi.time(k);
    for (std::size_t p = 0; p < g.size(); ++p) {
      g.point(p, x);
      worst = std::max(worst, std::abs(phi.maps[k][0][p] - t * std::cos(kTwoPi * x[1])));
      worst = std::max(worst, std::abs(phi.maps[k][1][p]));
    }
  }
  return worst;
}
}  // namespace

TEST(VelocityField, RotationIsConstantTranslation) {
  const Grid g{1, 8};
  const VectorFieldGrid z = detail::velocity_field(rotation(g, 4, {0.3, -0.2}), 2);
  EXPECT_NEAR(z[0][5], 0.3, 1e-15);
  EXPECT_NEAR(z[1][5], -0.2, 1e-15);
}

TEST(Integrate, RotationIsExactTranslation) {
  const Grid g{1, 16};
  const Isotopy phi = integrate(rotation(g, 10, {0.7, 0.25}));
  for (std::size_t k = 0; k < phi.samples(); ++k) {
    const double t = phi.time(k);
    EXPECT_LE((phi.maps[k][0] - ScalarField(g, 0.7 * t)).sup_norm(), 1e-14);
    EXPECT_LE((phi.maps[k][1] - ScalarField(g, 0.25 * t)).sup_norm(), 1e-14);
  }
  EXPECT_NEAR(lift_continuity_defect(phi), 0.07, 1e-14);
}

TEST(Integrate, ShearMatchesClosedForm) {
  const Grid g{1, 32};
  EXPECT_LE(shear_error(integrate(shear(g, 50))), 1e-12);
}

TEST(Integrate, ZeroGeneratorGivesIdentity) {
  const Grid g{2, 8};
  const Isotopy phi = integrate(Generator::zero(g, 5));
  for (const auto& D : phi.maps) EXPECT_EQ(D.sup_norm(), 0.0);
}

TEST(Integrate, RandomFlowsPreserveVolume) {
  const Grid g{1, 32};
  std::mt19937_64 rng(12);
  EXPECT_LE(volume_defect(integrate(random_band_limited(g, 60, rng))), 1e-4);
}

TEST(Invert, ShearInverseIsReverseShear) {
  const Grid g{1, 32};
  const Isotopy phi = integrate(shear(g, 20));
  const Isotopy inv = invert(phi);
  std::vector<double> x(2);
  for (std::size_t p = 0; p < g.size(); ++p) {
    g.point(p, x);
    EXPECT_NEAR(inv.maps.back()[0][p], -std::cos(kTwoPi * x[1]), 1e-10);
  }
}

TEST(Invert, ComposeWithInverseIsIdentity) {
  const Grid g{1, 32};
  std::mt19937_64 rng(21);
  const Isotopy phi = integrate(random_band_limited(g, 40, rng));
  const Isotopy id = compose(phi, invert(phi));
  for (const auto& D : id.maps) EXPECT_LE(c0_to_identity(D), 1e-8);
}

TEST(Compose, RotationsCommute) {
  const Grid g{1, 16};
  const Isotopy a = integrate(rotation(g, 10, {0.3, 0.0}));
  const Isotopy b = integrate(rotation(g, 10, {0.0, 0.4}));
  const PathDistanceReport r = path_distance(compose(a, b), compose(b, a));
  EXPECT_LE(r.dbar, 1e-14);
}

TEST(PathDistance, ReportsFinalSliceAndSupOverTime) {
  const Grid g{1, 16};
  const Isotopy a = integrate(rotation(g, 10, {0.3, 0.0}));
  const Isotopy b = integrate(rotation(g, 10, {0.1, 0.0}));
  const PathDistanceReport r = path_distance(a, b);
  EXPECT_NEAR(r.d_c0_forward, 0.2, 1e-14);
  EXPECT_NEAR(r.d_c0_inverse, 0.2, 1e-14);
  EXPECT_NEAR(r.d0, 0.2, 1e-14);
  EXPECT_NEAR(r.dbar, 0.2, 1e-14);
}

TEST(PathDistance, ToroidalWrapOfDisplacement) {
  // Translation by 0.9 equals translation by -0.1 as a torus map.
  const Grid g{1, 16};
  const VectorFieldGrid a = VectorFieldGrid::constant(g, std::vector<double>{0.9, 0.0});
  EXPECT_NEAR(c0_to_identity(a), 0.1, 1e-14);
}

TEST(GeneratorOf, RecoversRotation) {
  const Grid g{1, 16};
  const Generator r = rotation(g, 20, {0.3, 0.4});
  EXPECT_LE(generator_sup_distance(generator_of(integrate(r)), r), 1e-9);
}

TEST(GeneratorOf, RecoversRandomGenerator) {
  const Grid g{1, 32};
  std::mt19937_64 rng(2);
  const Generator a = random_band_limited(g, 100, rng);
  EXPECT_LE(generator_sup_distance(generator_of(integrate(a)), a), 1e-4);
}

TEST(TimeShift, AutonomousFlowIsShiftInvariant) {
  const Grid g{1, 32};
  const Isotopy phi = integrate(shear(g, 20));
  const Isotopy shifted = time_shift(phi, 0.25);
  EXPECT_EQ(shifted.samples(), 16u);
  for (std::size_t k = 0; k < shifted.samples(); ++k)
    EXPECT_LE(detail::slice_distance(shifted.maps[k], phi.maps[k]), 1e-10);
  EXPECT_THROW(time_shift(phi, 0.123), Error);
  EXPECT_THROW(time_shift(phi, 1.0), Error);
}

TEST(TimeShift, GeneratorShiftDropsLeadingSamples) {
  const Grid g{1, 8};
  std::mt19937_64 rng(1);
  const Generator a = random_band_limited(g, 10, rng);
  const Generator s = shift_generator(a, 0.3);
  ASSERT_EQ(s.samples(), 8u);
  EXPECT_EQ(s.hams[0].values, a.hams[3].values);
  EXPECT_NEAR(s.t_end(), 0.7, 1e-14);
}

TEST(GroupCheck, AutonomousFlowIsOneParameterGroup) {
  const Grid g{1, 32};
  const GroupCheckReport r = one_param_group_check(integrate(shear(g, 20)), 5);
  EXPECT_GT(r.pairs, 0u);
  EXPECT_LE(r.group_defect, 1e-9);
  EXPECT_LE(r.autonomy_defect, 1e-6);
}

TEST(GroupCheck, TimeDependentFlowIsNot) {
  const Grid g{1, 32};
  const Generator a = Generator::sample(
      g, 40, [](double, std::span<const double>) { return 0.0; },
      [](double t) { return HarmonicForm(std::vector<double>{0.0, std::sin(kTwoPi * t)}); });
  const GroupCheckReport r = one_param_group_check(integrate(a), 5);
  EXPECT_GT(r.group_defect, 0.1);
}

TEST(LiftContinuity, SmallStepsKeepLiftContinuous) {
  const Grid g{1, 16};
  EXPECT_NEAR(lift_continuity_defect(integrate(rotation(g, 10, {0.7, 0.0}))), 0.07, 1e-14);
}
