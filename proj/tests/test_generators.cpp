#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symtorus/builders.hpp"
#include "symtorus/group.hpp"

using namespace symtorus;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Generator rotation(const Grid& g, std::size_t steps, std::vector<double> v) {
  const HarmonicForm h = rotation_form(v);
  return Generator::sample(g, steps, [](double, std::span<const double>) { return 0.0; }, [&](double) { return h; });
}

// U = sin(2 pi theta_2) / (2 pi) on T^2: X_U = cos(2 pi theta_2) d/dtheta_1, an exact shear.
Generator shear(const Grid& g, std::size_t steps, double c = 1.0) {
  return Generator::sample(
      g, steps, [c](double, std::span<const double> x) { return c * std::sin(kTwoPi * x[1]) / kTwoPi; },
      [&](double) { return HarmonicForm::zero(g.n); });
}
}  // namespace

TEST(Generator, SampleNormalizesHamiltonians) {
  const Grid g{1, 16};
  const Generator s = Generator::sample(
      g, 4, [](double t, std::span<const double> x) { return 5.0 + t * x[0]; },
      [&](double) { return HarmonicForm::zero(1); });
  EXPECT_EQ(s.samples(), 5u);
  EXPECT_DOUBLE_EQ(s.dt, 0.25);
  for (const auto& u : s.hams) EXPECT_NEAR(u.mean(), 0.0, 1e-15);
  EXPECT_NO_THROW(s.validate());
}

TEST(Generator, ValidateRejectsMalformedData) {
  const Grid g{1, 8};
  Generator s = Generator::zero(g, 4);
  s.hams[2] += 1.0;
  EXPECT_THROW(s.validate(), Error);
  Generator t = Generator::zero(g, 4);
  t.harms.pop_back();
  EXPECT_THROW(t.validate(), Error);
  Generator u = Generator::zero(g, 4);
  u.harms[1] = HarmonicForm::zero(2);
  EXPECT_THROW(u.validate(), Error);
}

TEST(Generator, NormIsOscPlusL1) {
  const Grid g{1, 64};
  const Generator s = Generator::sample(
      g, 2, [](double, std::span<const double> x) { return std::sin(kTwoPi * x[0]); },
      [](double) { return HarmonicForm(std::vector<double>{0.3, -0.4}); });
  EXPECT_NEAR(linf_family_norm(s), 2.7, 1e-13);
  EXPECT_NEAR(vf_norm(s.hams[0], s.harms[0]), 2.7, 1e-13);
}

TEST(Generator, DifferenceAndScaling) {
  const Grid g{1, 16};
  const Generator a = shear(g, 4, 1.0), b = shear(g, 4, 0.25);
  EXPECT_LE(generator_sup_distance(difference(a, b), scaled(a, 0.75)), 1e-15);
  EXPECT_THROW(difference(a, shear(g, 8)), Error);
}

TEST(Builders, RandomGeneratorsAreDeterministicPerSeed) {
  const Grid g{1, 16};
  std::mt19937_64 r1(42), r2(42);
  const Generator a = random_band_limited(g, 4, r1);
  const Generator b = random_band_limited(g, 4, r2);
  EXPECT_EQ(generator_sup_distance(a, b), 0.0);
}

TEST(Builders, HamiltonianOnlyHasZeroHarmonicPart) {
  const Grid g{1, 16};
  std::mt19937_64 rng(1);
  RandomGeneratorSpec spec;
  spec.hamiltonian_only = true;
  EXPECT_TRUE(random_band_limited(g, 4, rng, spec).is_hamiltonian());
}

TEST(GroupInverse, RotationInverseNegatesHarmonicPart) {
  const Grid g{1, 16};
  const Generator r = rotation(g, 10, {0.3, 0.4});
  const Generator inv = group_inverse(r);
  for (std::size_t k = 0; k < inv.samples(); ++k) {
    EXPECT_LE(inv.hams[k].sup_norm(), 1e-14);
    EXPECT_DOUBLE_EQ(inv.harms[k].lambda[0], -r.harms[k].lambda[0]);
    EXPECT_DOUBLE_EQ(inv.harms[k].lambda[1], -r.harms[k].lambda[1]);
  }
}

TEST(GroupInverse, ShearInverseIsNegatedHamiltonian) {
  // The shear fixes theta_2, so U o phi_t = U.
  const Grid g{1, 32};
  const Generator s = shear(g, 20);
  EXPECT_LE(generator_sup_distance(group_inverse(s), scaled(s, -1.0)), 1e-12);
}

TEST(GroupProduct, RotationsAdd) {
  const Grid g{1, 16};
  const Generator p = group_product(rotation(g, 10, {0.3, 0.0}), rotation(g, 10, {0.0, 0.4}));
  const Generator expected = rotation(g, 10, {0.3, 0.4});
  EXPECT_LE(generator_sup_distance(p, expected), 1e-12);
}

TEST(GroupProduct, ProductWithInverseIsZero) {
  const Grid g{1, 32};
  std::mt19937_64 rng(9);
  const NumericOptions opt;
  const Generator a = random_band_limited(g, 60, rng);
  const Isotopy phi = integrate(a, opt);
  const Generator a_inv = group_inverse(a, phi, opt);
  const Generator e = group_product(a, a_inv, phi, opt);
  EXPECT_LE(linf_family_norm(e), 1e-5);
}

TEST(GroupProduct, IdentityIsNeutral) {
  const Grid g{1, 32};
  const Generator s = shear(g, 20);
  const Generator z = Generator::zero(g, 20);
  EXPECT_LE(generator_sup_distance(group_product(s, z), s), 1e-14);
  EXPECT_LE(generator_sup_distance(group_product(z, s), s), 1e-10);
}

TEST(GroupInverse, InverseOfInverseRecoversGenerator) {
  const Grid g{1, 32};
  std::mt19937_64 rng(4);
  const Generator a = random_band_limited(g, 60, rng);
  const Generator back = group_inverse(group_inverse(a));
  EXPECT_LE(generator_sup_distance(back, a), 1e-6);
}

TEST(D2Distance, SymmetricAndZeroOnDiagonal) {
  const Grid g{1, 32};
  std::mt19937_64 rng(6);
  const Generator a = random_band_limited(g, 40, rng);
  const Generator b = random_band_limited(g, 40, rng);
  EXPECT_EQ(d2_distance(a, a), 0.0);
  EXPECT_NEAR(d2_distance(a, b), d2_distance(b, a), 1e-15);
  EXPECT_GT(d2_distance(a, b), 0.0);
}

TEST(Cauchy, GeometricSequenceHasDecreasingGaps) {
  const Grid g{1, 16};
  GeneratorSeq seq;
  for (int i = 0; i < 5; ++i) seq.push_back(rotation(g, 10, {0.3 * (1.0 - std::pow(0.5, i)), 0.0}));
  const CauchyReport r = cauchy_report_gen(seq);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_TRUE(r.d2_nonincreasing);
  EXPECT_TRUE(r.linf_nonincreasing);
  EXPECT_NEAR(r.rows[0].linf_gap, 0.15, 1e-14);
  EXPECT_NEAR(r.rows[3].d2, 0.3 / 16.0, 1e-14);
}

TEST(DeltaTilde, InnerAndOuterAgreeForConstantHarmonicFamily) {
  const Grid g{1, 32};
  Generator a = shear(g, 80);
  for (auto& h : a.harms) h = rotation_form(std::vector<double>{0.2, -0.1});
  const Isotopy phi = integrate(a);
  NumericOptions inner;
  inner.delta_mode = DeltaMode::InnerTime;
  const auto d_out = delta_tilde(a.harms, phi);
  const auto d_in = delta_tilde(a.harms, phi, inner);
  for (std::size_t k = 0; k < d_out.size(); ++k) EXPECT_LE((d_out[k] - d_in[k]).sup_norm(), 1e-4);
}

TEST(DeltaTilde, InnerAndOuterDifferForTimeDependentFamily) {
  const Grid g{1, 16};
  const Generator a = Generator::sample(
      g, 40, [](double, std::span<const double> x) { return 0.05 * std::sin(kTwoPi * x[1]); },
      [](double t) { return HarmonicForm(std::vector<double>{t, 0.0}); });
  const Isotopy phi = integrate(a);
  NumericOptions inner;
  inner.delta_mode = DeltaMode::InnerTime;
  const auto d_out = delta_tilde(a.harms, phi);
  const auto d_in = delta_tilde(a.harms, phi, inner);
  EXPECT_GT((d_out.back() - d_in.back()).sup_norm(), 1e-3);
}
