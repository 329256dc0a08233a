#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "symtorus/builders.hpp"
#include "symtorus/config.hpp"
#include "symtorus/io.hpp"

using namespace symtorus;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "symtorus_io_test";
  fs::create_directories(dir);
  return dir / name;
}
}  // namespace

TEST(Io, ScalarRoundTripIsBitExact) {
  const Grid g{1, 8};
  const ScalarField f = ScalarField::sample(g, [](std::span<const double> x) { return x[0] / 3.0 - x[1]; });
  const fs::path p = scratch("scalar.json");
  io::save_scalar(p, f);
  EXPECT_EQ(io::load_scalar(p).values, f.values);
}

TEST(Io, GeneratorRoundTrip) {
  const Grid g{1, 8};
  std::mt19937_64 rng(5);
  const Generator a = random_band_limited(g, 6, rng);
  const fs::path p = scratch("gen.json");
  io::save_generator(p, a);
  const Generator b = io::load_generator_file(p);
  EXPECT_EQ(generator_sup_distance(a, b), 0.0);
  EXPECT_EQ(io::load_generator(p, g, 99).samples(), 7u);
}

TEST(Io, IsotopyRoundTrip) {
  const Grid g{1, 8};
  std::mt19937_64 rng(5);
  const Isotopy phi = integrate(random_band_limited(g, 6, rng));
  const fs::path p = scratch("iso.json");
  io::save_isotopy(p, phi);
  const Isotopy back = io::load_isotopy(p);
  ASSERT_EQ(back.samples(), phi.samples());
  for (std::size_t k = 0; k < phi.samples(); ++k)
    for (int a = 0; a < 2; ++a) EXPECT_EQ(back.maps[k][a].values, phi.maps[k][a].values);
}

TEST(Io, KindMismatchRejected) {
  const Grid g{1, 8};
  const fs::path p = scratch("kind.json");
  io::save_scalar(p, ScalarField(g));
  EXPECT_THROW(io::load_isotopy(p), Error);
}

TEST(Io, MissingFileIsIoError) {
  try {
    io::read_json(scratch("does_not_exist.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(Io, AnalyticSpecRotation) {
  const auto j = io::json::parse(R"({"rotation": {"v": [0.3, 0.4], "j": 2}})");
  const Generator g = io::analytic_from_json(j, 1).sample(Grid{1, 8}, 4);
  EXPECT_NEAR(linf_family_norm(g), 0.7 * 2.0 / 3.0, 1e-15);
}

TEST(Io, AnalyticSpecRejectsWrongLengths) {
  EXPECT_THROW(io::analytic_from_json(io::json::parse(R"({"harmonic": {"base": [1]}})"), 1), Error);
  EXPECT_THROW(io::analytic_from_json(io::json::parse(R"({"terms": [{"k": [1]}]})"), 1), Error);
  EXPECT_THROW(io::analytic_from_json(io::json::parse(R"({"n": 2})"), 1), Error);
}

TEST(Io, CsvRowsUseFullPrecision) {
  std::ostringstream os;
  io::CsvWriter w(os);
  w.row("a", 1, 0.1);
  EXPECT_EQ(os.str(), "a,1,0.10000000000000001\n");
}

TEST(Config, DefaultsAndParsing) {
  RunConfig c;
  std::istringstream is("# comment\nN = 32\nM=100  \nseed = 7\nendpoint_tol = 1e-4 # trailing\n");
  parse_config(is, c);
  EXPECT_EQ(c.grid_size, 32);
  EXPECT_EQ(c.time_steps, 100u);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_DOUBLE_EQ(c.endpoint_tol, 1e-4);
  EXPECT_EQ(c.interp_order, 5);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  RunConfig c;
  EXPECT_THROW(c.set("bogus", "1"), Error);
  EXPECT_THROW(c.set("N", "abc"), Error);
  EXPECT_THROW(c.set("N", "3.5"), Error);
  std::istringstream is("no equals sign\n");
  EXPECT_THROW(parse_config(is, c), Error);
  c.grid_size = 2;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Config, NumericOptionsFollowConfig) {
  RunConfig c;
  c.set("inverse_tol", "1e-12");
  c.set("interp_order", "3");
  const NumericOptions o = c.numeric();
  EXPECT_DOUBLE_EQ(o.inverse_tol, 1e-12);
  EXPECT_EQ(o.interp_order, 3);
}

TEST(Config, GridDefaultDependsOnDimension) {
  RunConfig c;
  EXPECT_EQ(c.grid().N, 64);
  c.set("n", "2");
  EXPECT_EQ(c.grid().N, 16);
  c.set("N", "24");
  EXPECT_EQ(c.grid().N, 24);
}

TEST(Config, DeltaModeKey) {
  RunConfig c;
  EXPECT_EQ(c.numeric().delta_mode, DeltaMode::OuterTime);
  c.set("delta_mode", "inner");
  EXPECT_EQ(c.numeric().delta_mode, DeltaMode::InnerTime);
  EXPECT_THROW(c.set("delta_mode", "sideways"), Error);
}

TEST(Io, ManifestRecordsTorusDimension) {
  const Grid g{2, 4};
  const fs::path p = scratch("dim.json");
  io::save_scalar(p, ScalarField(g));
  EXPECT_EQ(io::read_json(p).at("dim").get<int>(), 4);
  EXPECT_EQ(io::load_scalar(p).grid, g);
}
