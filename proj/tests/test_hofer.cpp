#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symtorus/builders.hpp"
#include "symtorus/hofer.hpp"

using namespace symtorus;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Generator rotation(const Grid& g, std::size_t steps, std::vector<double> v) {
  const HarmonicForm h = rotation_form(v);
  return Generator::sample(g, steps, [](double, std::span<const double>) { return 0.0; }, [&](double) { return h; });
}
}  // namespace

TEST(Length, RotationLengthIsL1NormOfTranslation) {
  const Grid g{1, 16};
  const Generator r = rotation(g, 10, {0.3, -0.4});
  EXPECT_NEAR(length_linf(r), 0.7, 1e-15);
  EXPECT_NEAR(length_l1inf(r), 0.7, 1e-14);
  EXPECT_NEAR(length_symmetric(r), 0.7, 1e-14);
}

TEST(Length, SineFamilyVersionsDiffer) {
  const Grid g{1, 8};
  const Generator s = Generator::sample(
      g, 400, [](double, std::span<const double>) { return 0.0; },
      [](double t) { return HarmonicForm(std::vector<double>{std::sin(kTwoPi * t), 0.0}); });
  EXPECT_NEAR(length_linf(s), 1.0, 1e-12);
  EXPECT_NEAR(length_l1inf(s), 2.0 / std::numbers::pi, 1e-4);
  EXPECT_LE(length_l1inf(s), length_linf(s));
}

TEST(Length, L1infNeverExceedsLinf) {
  const Grid g{1, 16};
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    const Generator a = random_band_limited(g, 20, rng);
    EXPECT_LE(length_l1inf(a), length_linf(a) + 1e-15);
  }
}

TEST(Length, SymmetricLengthOfShearEqualsLength) {
  const Grid g{1, 32};
  const Generator s = Generator::sample(
      g, 20, [](double, std::span<const double> x) { return std::sin(kTwoPi * x[1]); },
      [&](double) { return HarmonicForm::zero(1); });
  const LengthReport r = length_report(s);
  EXPECT_NEAR(r.l_inf, 2.0, 1e-12);
  EXPECT_NEAR(r.l_sym_inf, 2.0, 1e-10);
  EXPECT_NEAR(r.l_sym_1inf, 2.0, 1e-10);
}

TEST(NormUpper, PicksShortestCandidateWithMatchingEndpoint) {
  const Grid g{1, 16};
  const Generator target = rotation(g, 10, {0.3, 0.0});
  // Translation by 0.3 - 1 has the same time-one map but is longer.
  GeneratorSeq cands{rotation(g, 10, {0.5, 0.0}), rotation(g, 10, {-0.7, 0.0}), rotation(g, 10, {0.3, 0.0})};
  const NormUpperReport r = norm_upper(target, cands);
  EXPECT_FALSE(r.entries[0].accepted);
  EXPECT_TRUE(r.entries[1].accepted);
  EXPECT_TRUE(r.entries[2].accepted);
  EXPECT_EQ(r.best, 2u);
  EXPECT_NEAR(r.bound, 0.3, 1e-14);
}

TEST(NormUpper, BoundNonincreasingAsCandidatesGrow) {
  const Grid g{1, 16};
  const Generator target = rotation(g, 10, {0.3, 0.0});
  GeneratorSeq cands{rotation(g, 10, {-0.7, 0.0})};
  double prev = norm_upper(target, cands).bound;
  for (double a : {1.3, 0.3, -1.7}) {
    cands.push_back(rotation(g, 10, {a, 0.0}));
    const double b = norm_upper(target, cands).bound;
    EXPECT_LE(b, prev);
    prev = b;
  }
  EXPECT_NEAR(prev, 0.3, 1e-14);
}

TEST(NormUpper, NoValidCandidateThrows) {
  const Grid g{1, 16};
  const GeneratorSeq cands{rotation(g, 10, {0.1, 0.0})};
  try {
    norm_upper(rotation(g, 10, {0.3, 0.0}), cands);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoValidCandidate);
  }
}

TEST(Region, StripMembershipAndClearance) {
  const Grid g{1, 8};
  const Region r = Region::strip(0.25);
  EXPECT_EQ(r.grid_points(g).size(), 2u * 8u);
  EXPECT_NEAR(r.clearance(g, std::vector<double>{0.5, 0.3}), 0.25, 1e-15);
  EXPECT_NEAR(r.clearance(g, std::vector<double>{0.9, 0.0}), 0.1, 1e-15);
  EXPECT_EQ(r.clearance(g, std::vector<double>{0.1, 0.0}), 0.0);
  EXPECT_THROW(Region::strip(0.0), Error);
}

TEST(Region, BallAndMask) {
  const Grid g{1, 8};
  const Region b = Region::ball({0.0, 0.0}, 0.2);
  // Points within 0.2 of the origin: offsets in {-1, 0, 1} per axis.
  EXPECT_EQ(b.grid_points(g).size(), 9u);
  EXPECT_NEAR(b.clearance(g, std::vector<double>{0.5, 0.0}), 0.3, 1e-15);
  const Region w = Region::whole(g);
  EXPECT_EQ(w.grid_points(g).size(), g.size());
  EXPECT_THROW(Region::from_mask(g, std::vector<char>(3, 1)), Error);
}

TEST(Displacement, StripTableMatchesGridOracle) {
  // Displaced exactly when a1 >= nu + 1/N.
  const Grid g{1, 64};
  for (double nu : {0.1, 0.2, 0.25}) {
    for (double a1 : {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5}) {
      const VectorFieldGrid D = VectorFieldGrid::constant(g, std::vector<double>{a1, 0.0});
      const bool expected = a1 >= nu + 1.0 / 64.0 - 1e-12;
      EXPECT_EQ(displacement_test(D, Region::strip(nu)).displaced, expected) << "nu=" << nu << " a1=" << a1;
    }
  }
}

TEST(Displacement, IdentityDisplacesNothing) {
  const Grid g{1, 16};
  const DisplacementResult r = displacement_test(VectorFieldGrid(g), Region::ball({0.5, 0.5}, 0.1));
  EXPECT_FALSE(r.displaced);
  EXPECT_EQ(r.margin, 0.0);
}

TEST(Energy, StripBoundFromRotationLadder) {
  const Grid g{1, 64};
  const auto cands = rotation_candidates(g, 0, amplitude_ladder(1.0 / 128.0, 0.5));
  const EnergyCertificate c = displacement_energy_upper(Region::strip(0.25), cands);
  EXPECT_NEAR(c.bound, 0.25 + 1.0 / 64.0, 1e-12);
  EXPECT_GE(c.margin, 1.0 / 64.0 * (1 - 1e-9));
}

TEST(Energy, WholeTorusHasNoDisplacer) {
  const Grid g{1, 16};
  const auto cands = rotation_candidates(g, 0, amplitude_ladder(0.1, 0.5));
  try {
    displacement_energy_upper(Region::whole(g), cands);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoDisplacer);
  }
}

TEST(Energy, LadderEndpoints) {
  const auto l = amplitude_ladder(0.1, 0.5);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_NEAR(l.back(), 0.5, 1e-15);
  EXPECT_THROW(amplitude_ladder(0.0, 1.0), Error);
}
