#pragma once

// Self-check suites run by `symtorus_cli verify <suite>`. Each check reports
// a measured value against a threshold.

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "symtorus/config.hpp"
#include "symtorus/deformations.hpp"
#include "symtorus/scenarios.hpp"

namespace symtorus::verify {

struct Check {
  std::string suite;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct Options {
  RunConfig cfg;
  int trials = 3;
};

inline Check at_most(std::string suite, std::string name, double value, double threshold) {
  return {std::move(suite), std::move(name), value, threshold, std::isfinite(value) && value <= threshold};
}

inline Check at_least(std::string suite, std::string name, double value, double threshold) {
  return {std::move(suite), std::move(name), value, threshold, std::isfinite(value) && value >= threshold};
}

inline std::vector<Check> group_suite(const Options& o) {
  const Grid g = o.cfg.grid();
  const auto opt = o.cfg.numeric();
  std::mt19937_64 rng(o.cfg.seed);
  std::vector<Check> out;
  double iso = 0.0, inv = 0.0;
  for (int i = 0; i < o.trials; ++i) {
    const Generator a = random_band_limited(g, o.cfg.time_steps, rng);
    const Generator b = random_band_limited(g, o.cfg.time_steps, rng);
    const Isotopy pa = integrate(a, opt);
    const Isotopy pb = integrate(b, opt);
    iso = std::max(iso, path_distance(integrate(group_product(a, b, pa, opt), opt), compose(pa, pb, opt), opt).dbar);
    const Generator ai = group_inverse(a, pa, opt);
    const Isotopy loop = integrate(group_product(a, ai, pa, opt), opt);
    inv = std::max(inv, path_distance(loop, Isotopy::identity(g, o.cfg.time_steps), opt).dbar);
  }
  out.push_back(at_most("group", "product_vs_composition_dbar", iso, 1e-3));
  out.push_back(at_most("group", "inverse_law_dbar", inv, 1e-3));
  return out;
}

inline std::vector<Check> hodge_suite(const Options& o) {
  const Grid g = o.cfg.grid();
  std::mt19937_64 rng(o.cfg.seed);
  double recon = 0.0, exact_harm = 0.0;
  for (int i = 0; i < o.trials; ++i) {
    RandomGeneratorSpec spec;
    spec.max_mode = 3;
    spec.terms = 4;
    spec.ham_amplitude = 1.0;
    spec.harm_amplitude = 1.0;
    const AnalyticGenerator a = random_analytic_generator(g.n, rng, spec);
    const Generator s = a.sample(g, 1);
    OneFormField alpha = exterior_d(s.hams[0]);
    const HodgeSplit exact = hodge_decompose(alpha);
    exact_harm = std::max(exact_harm, exact.harmonic.norm());
    for (int c = 0; c < g.dim(); ++c) alpha[c] += s.harms[0].lambda[c];
    const HodgeSplit split = hodge_decompose(alpha);
    recon = std::max(recon, (split.potential - s.hams[0]).sup_norm());
    for (int c = 0; c < g.dim(); ++c)
      recon = std::max(recon, std::abs(split.harmonic.lambda[c] - s.harms[0].lambda[c]));
  }
  return {at_most("hodge", "round_trip_sup_error", recon, 1e-8),
          at_most("hodge", "harmonic_part_of_exact", exact_harm, 1e-10)};
}

inline std::vector<Check> duality_suite(const Options& o) {
  const Grid g = o.cfg.grid();
  const auto opt = o.cfg.numeric();
  const auto classes = signed_basis_classes(g.n);
  double rot_gap = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    RotationSpec spec;
    spec.v.assign(g.dim(), 0.0);
    spec.v[axis] = axis % 2 == 0 ? 0.3 : -0.4;
    const Generator r = build_rotation(spec, g, 20);
    rot_gap = std::max(rot_gap, duality_gap(r, integrate(r, opt), classes));
  }
  std::mt19937_64 rng(o.cfg.seed);
  double pert_gap = 0.0;
  for (int i = 0; i < o.trials; ++i) {
    RandomGeneratorSpec spec;
    spec.time_dependent = false;
    const Generator a = random_band_limited(g, o.cfg.time_steps, rng, spec);
    pert_gap = std::max(pert_gap, duality_gap(a, integrate(a, opt), classes));
  }
  return {at_most("duality", "rotation_gap", rot_gap, 1e-6), at_most("duality", "perturbed_gap", pert_gap, 1e-3)};
}

inline Generator sine_harmonic_generator(const Grid& g, std::size_t steps, double c) {
  return Generator::sample(
      g, steps, [](double, std::span<const double>) { return 0.0; },
      [&](double t) { return std::sin(2.0 * std::numbers::pi * t) * c * HarmonicForm::basis(g.n, 0); });
}

inline std::vector<Check> weinstein_suite(const Options& o) {
  const Grid g = o.cfg.grid();
  const auto opt = o.cfg.numeric();
  WeinsteinOptions w;
  w.flux_tol = o.cfg.flux_tol;
  const auto res = weinstein_deform(sine_harmonic_generator(g, o.cfg.time_steps, 0.3), w, opt);
  std::vector<Check> out{
      at_most("weinstein", "harmonic_residual", res.report.harmonic_residual, o.cfg.endpoint_tol),
      at_most("weinstein", "boundary_identity", res.report.boundary_defect, o.cfg.endpoint_tol),
      at_most("weinstein", "endpoint_match", res.report.endpoint_defect, o.cfg.endpoint_tol)};
  bool raised = false;
  try {
    weinstein_deform(Generator::sample(g, o.cfg.time_steps, [](double, std::span<const double>) { return 0.0; },
                                       [&](double) { return HarmonicForm::basis(g.n, 0); }),
                     w, opt);
  } catch (const Error& e) {
    raised = e.code() == ErrorCode::FluxNotZero;
  }
  out.push_back(at_least("weinstein", "negative_control_raises", raised ? 1.0 : 0.0, 1.0));
  return out;
}

inline std::vector<Check> ldefor2_suite(const Options& o) {
  const int dim = 2 * o.cfg.n;
  const std::size_t T = 21;
  const double dt = 1.0 / static_cast<double>(T - 1);
  std::vector<double> base(dim);
  for (int a = 0; a < dim; ++a) base[a] = 0.1 * (a + 1);
  std::vector<std::vector<std::vector<double>>> seq;
  for (int j = 1; j <= 8; ++j) {
    const double f = static_cast<double>(j) / (1.0 + j);
    std::vector<std::vector<double>> z(T, base);
    for (auto& zz : z)
      for (double& c : zz) c *= f;
    seq.push_back(std::move(z));
  }
  const auto rep = ldefor2_sequence(seq, dt);
  double zst_excess = -1e300, y_excess = -1e300;
  for (const auto& r : rep.rows) {
    zst_excess = std::max(zst_excess, r.zst_gap - 3.0 * r.z_gap);
    y_excess = std::max(y_excess, r.y_gap - r.z_gap);
  }
  return {at_most("ldefor2", "zst_gap_minus_3_z_gap", zst_excess, 1e-6),
          at_most("ldefor2", "y_gap_minus_z_gap", y_excess, 1e-6)};
}

inline std::vector<Check> examples_suite(const Options& o) {
  const Grid g{1, std::min(o.cfg.resolved_grid_size(), 16)};
  std::vector<Check> out;
  for (int j : {1, 2, 10}) {
    RotationSpec spec{{0.3, 0.4}, j};
    const double expected = (static_cast<double>(j) / (1.0 + j)) * 0.7;
    out.push_back(at_most("examples", "rotation_length_j" + std::to_string(j),
                          std::abs(length_linf(build_rotation(spec, g, 10)) - expected), 1e-9));
  }
  const Grid gs{1, o.cfg.resolved_grid_size()};
  const auto opt = o.cfg.numeric();
  const auto yes = build_strip_scenario(0.2, 0.3, gs, 4, std::nullopt, opt);
  const auto no = build_strip_scenario(0.2, 0.1, gs, 4, std::nullopt, opt);
  out.push_back(at_least("examples", "strip_0.2_by_0.3_displaced", yes.displacement.displaced ? 1.0 : 0.0, 1.0));
  out.push_back(at_most("examples", "strip_0.2_by_0.1_displaced", no.displacement.displaced ? 1.0 : 0.0, 0.0));
  return out;
}

inline std::vector<Check> ugr_suite(const Options& o) {
  const Grid g{1, std::min(o.cfg.resolved_grid_size(), 32)};
  const auto opt = o.cfg.numeric();
  const std::size_t M = 40;
  const std::size_t stride = 4;
  RotationSpec rot{{0.3, 0.4}, std::nullopt};
  const double rot_defect = one_param_group_check(integrate(build_rotation(rot, g, M), opt), stride, opt).group_defect;
  const Generator ham = Generator::sample(
      g, M, [](double, std::span<const double> x) { return std::sin(2.0 * std::numbers::pi * x[0]) / (2.0 * std::numbers::pi); },
      [&](double) { return HarmonicForm::zero(1); });
  const double ham_defect = one_param_group_check(integrate(ham, opt), stride, opt).group_defect;
  const Generator tdep = sine_harmonic_generator(g, M, 1.0);
  const double tdep_defect = one_param_group_check(integrate(tdep, opt), stride, opt).group_defect;
  return {at_most("ugr", "rotation_group_defect", rot_defect, 1e-3),
          at_most("ugr", "hamiltonian_group_defect", ham_defect, 1e-3),
          at_least("ugr", "time_dependent_group_defect", tdep_defect, 1e-1)};
}

inline const std::map<std::string, std::function<std::vector<Check>(const Options&)>>& suites() {
  static const std::map<std::string, std::function<std::vector<Check>(const Options&)>> table{
      {"group", group_suite},       {"hodge", hodge_suite},     {"duality", duality_suite},
      {"weinstein", weinstein_suite}, {"ldefor2", ldefor2_suite}, {"examples", examples_suite},
      {"ugr", ugr_suite}};
  return table;
}

inline std::vector<Check> run(const std::string& suite, const Options& o) {
  const auto& t = suites();
  auto it = t.find(suite);
  if (it == t.end()) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
  return it->second(o);
}

}  // namespace symtorus::verify
