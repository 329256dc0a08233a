// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "symtorus/deformations.hpp"
#include "symtorus/scenarios.hpp"

using namespace symtorus;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [violated]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Generator zero_ham_rotation(const Grid& g, std::size_t steps, const HarmonicForm& h) {
  return Generator::sample(g, steps, [](double, std::span<const double>) { return 0.0; }, [&](double) { return h; });
}

Outcome rotation_lengths() {
  Outcome o;
  const Grid g{1, 16};
  double worst = 0.0;
  for (int j : {1, 2, 10}) {
    const double expected = (static_cast<double>(j) / (1.0 + j)) * 0.7;
    const Generator r = build_rotation(RotationSpec{{0.3, 0.4}, j}, g, 10);
    worst = std::max(worst, std::abs(length_linf(r) - expected));
  }
  o.require(worst <= 1e-9, fmt("max |length - j/(1+j) 0.7| = %.3e", worst));
  return o;
}

Outcome group_isomorphism() {
  Outcome o;
  const Grid g{1, 32};
  const std::size_t M = 200;
  const NumericOptions opt;
  std::mt19937_64 rng(2024);
  double iso = 0.0, inv = 0.0;
  const Isotopy id = Isotopy::identity(g, M);
  for (int i = 0; i < 20; ++i) {
    const Generator a = random_band_limited(g, M, rng);
    const Generator b = random_band_limited(g, M, rng);
    const Isotopy pa = integrate(a, opt);
    const Isotopy pb = integrate(b, opt);
    const Isotopy prod = integrate(group_product(a, b, pa, opt), opt);
    iso = std::max(iso, path_distance(prod, compose(pa, pb, opt), opt).dbar);
    const Isotopy loop = integrate(group_product(a, group_inverse(a, pa, opt), pa, opt), opt);
    inv = std::max(inv, path_distance(loop, id, opt).dbar);
  }
  o.require(iso <= 1e-3, fmt("product dbar %.3e", iso));
  o.require(inv <= 1e-3, fmt("inverse law dbar %.3e", inv));
  return o;
}

Outcome hodge_round_trip() {
  Outcome o;
  const Grid g{1, 64};
  std::mt19937_64 rng(7);
  RandomGeneratorSpec spec;
  spec.max_mode = 4;
  spec.terms = 6;
  spec.ham_amplitude = 1.0;
  spec.harm_amplitude = 1.0;
  double recon = 0.0, exact_harm = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Generator s = random_analytic_generator(1, rng, spec).sample(g, 1);
    OneFormField alpha = exterior_d(s.hams[0]);
    exact_harm = std::max(exact_harm, hodge_decompose(alpha).harmonic.norm());
    for (int a = 0; a < g.dim(); ++a) alpha[a] += s.harms[0].lambda[a];
    const HodgeSplit split = hodge_decompose(alpha);
    recon = std::max(recon, (split.potential - s.hams[0]).sup_norm());
    for (int a = 0; a < g.dim(); ++a) recon = std::max(recon, std::abs(split.harmonic.lambda[a] - s.harms[0].lambda[a]));
  }
  o.require(recon <= 1e-8, fmt("reconstruction %.3e", recon));
  o.require(exact_harm <= 1e-10, fmt("harmonic part of exact %.3e", exact_harm));
  return o;
}

Outcome fathi_duality() {
  Outcome o;
  const Grid g{1, 32};
  const std::size_t M = 200;
  const NumericOptions opt;
  const auto classes = signed_basis_classes(1);
  double rot_gap = 0.0;
  for (const std::vector<double>& v : std::vector<std::vector<double>>{{0.3, 0.0}, {-0.3, 0.0}, {0.0, 0.4}, {0.0, -0.4}, {0.3, 0.4}}) {
    const Generator r = zero_ham_rotation(g, M, rotation_form(v));
    rot_gap = std::max(rot_gap, duality_gap(r, integrate(r, opt), classes));
  }
  std::mt19937_64 rng(11);
  RandomGeneratorSpec spec;
  spec.hamiltonian_only = true;
  double pert_gap = 0.0;
  for (int i = 0; i < 10; ++i) {
    Generator a = random_band_limited(g, M, rng, spec);
    const HarmonicForm h = rotation_form(std::vector<double>{0.3, 0.4});
    for (auto& hk : a.harms) hk = h;
    pert_gap = std::max(pert_gap, duality_gap(a, integrate(a, opt), classes));
  }
  o.require(rot_gap <= 1e-6, fmt("rotation gap %.3e", rot_gap));
  o.require(pert_gap <= 1e-3, fmt("perturbed gap %.3e", pert_gap));
  return o;
}

Outcome hamiltonian_mass_flow() {
  Outcome o;
  const Grid g{1, 32};
  const NumericOptions opt;
  std::mt19937_64 rng(13);
  RandomGeneratorSpec spec;
  spec.hamiltonian_only = true;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Isotopy phi = integrate(random_band_limited(g, 200, rng, spec), opt);
    for (const auto& m : signed_basis_classes(1)) worst = std::max(worst, std::abs(mass_flow_direct(phi, m)));
  }
  o.require(worst <= 1e-3, fmt("max |mass flow| %.3e", worst));
  return o;
}

Outcome weinstein() {
  Outcome o;
  const Grid g{1, 32};
  const std::size_t M = 200;
  const Generator s = Generator::sample(
      g, M, [](double, std::span<const double>) { return 0.0; },
      [](double t) { return std::sin(kTwoPi * t) * 0.3 * HarmonicForm::basis(1, 0); });
  const WeinsteinResult r = weinstein_deform(s);
  o.require(r.report.harmonic_residual <= 1e-3, fmt("harmonic residual %.3e", r.report.harmonic_residual));
  o.require(r.report.boundary_defect <= 1e-3, fmt("boundary %.3e", r.report.boundary_defect));
  o.require(r.report.endpoint_defect <= 1e-3, fmt("endpoint %.3e", r.report.endpoint_defect));
  bool raised = false;
  try {
    weinstein_deform(zero_ham_rotation(g, M, HarmonicForm::basis(1, 0)));
  } catch (const Error& e) {
    raised = e.code() == ErrorCode::FluxNotZero;
  }
  o.require(raised, raised ? "negative control raised FluxNotZero" : "negative control did not raise");
  return o;
}

Outcome ldefor2_bounds() {
  Outcome o;
  const std::size_t T = 41;
  const double dt = 1.0 / static_cast<double>(T - 1);
  bool zst = true, y = true;
  std::size_t rows = 0;
  for (const std::vector<double>& c : std::vector<std::vector<double>>{{0.3, 0.4}, {-0.5, 0.2}, {1.0, 0.0}}) {
    std::vector<std::vector<std::vector<double>>> seq;
    for (int j = 1; j <= 10; ++j) {
      const double f = static_cast<double>(j) / (1.0 + j);
      seq.emplace_back(T, std::vector<double>{f * c[0], f * c[1]});
    }
    for (std::size_t s_steps : {4u, 8u, 16u}) {
      const LDeforSequenceReport r = ldefor2_sequence(seq, dt, s_steps, 1e-6);
      zst = zst && r.zst_bound_holds;
      y = y && r.y_bound_holds;
      rows += r.rows.size();
    }
  }
  o.require(zst, "Z^(s,t) gap <= 3 Z gap + 1e-6 on " + std::to_string(rows) + " rows");
  o.require(y, "Y gap <= Z gap + 1e-6");
  return o;
}

Outcome displacement() {
  Outcome o;
  const NumericOptions opt;
  {
    const Grid g{1, 64};
    int mismatches = 0, cells = 0;
    for (double nu : {0.10, 0.20, 0.25}) {
      for (int k = 1; k <= 10; ++k) {
        const double a1 = 0.05 * k;
        const StripScenario sc = build_strip_scenario(nu, a1, g, 4, std::nullopt, opt);
        // Interval oracle: the image [a1, a1 + nu) must leave one cell of room.
        const bool oracle = a1 >= nu + 1.0 / 64.0 - 1e-12;
        mismatches += sc.displacement.displaced != oracle;
        ++cells;
      }
    }
    o.require(mismatches == 0, std::to_string(cells - mismatches) + "/" + std::to_string(cells) + " table cells match");
  }
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true, near_cell = true;
  double at64 = 0.0;
  for (int N : {64, 128, 256}) {
    const Grid g{1, N};
    const double step = 1.0 / (2.0 * N);
    const auto cands = rotation_candidates(g, 0, amplitude_ladder(step, 0.35));
    const double bound = displacement_energy_upper(Region::strip(0.25), cands, LengthVersion::Linf, opt).bound;
    if (N == 64) at64 = bound;
    monotone = monotone && bound <= prev;
    near_cell = near_cell && std::abs(bound - (0.25 + 1.0 / N)) <= step;
    prev = bound;
    o.detail += (o.detail.empty() ? "" : "; ") + ("N=" + std::to_string(N)) + fmt(" bound %.6f", bound);
  }
  o.require(at64 >= 0.25 && at64 <= 0.35, fmt("N=64 bound in [0.25, 0.35]: %.6f", at64));
  o.require(monotone, "bound nonincreasing as N doubles");
  o.require(near_cell, "bound within half a cell of 0.25 + 1/N");
  return o;
}

Outcome ugr() {
  Outcome o;
  const Grid g{1, 32};
  const std::size_t M = 200, stride = 10;
  const NumericOptions opt;
  const double rot = one_param_group_check(integrate(build_rotation(RotationSpec{{0.3, 0.4}, std::nullopt}, g, M), opt),
                                           stride, opt)
                         .group_defect;
  const Generator ham = Generator::sample(
      g, M, [](double, std::span<const double> x) { return std::sin(kTwoPi * x[0]) / kTwoPi; },
      [](double) { return HarmonicForm::zero(1); });
  const double hd = one_param_group_check(integrate(ham, opt), stride, opt).group_defect;
  const Generator tdep = Generator::sample(
      g, M, [](double, std::span<const double>) { return 0.0; },
      [](double t) { return std::sin(kTwoPi * t) * HarmonicForm::basis(1, 0); });
  const double td = one_param_group_check(integrate(tdep, opt), stride, opt).group_defect;
  o.require(rot <= 1e-3, fmt("rotation defect %.3e", rot));
  o.require(hd <= 1e-3, fmt("hamiltonian defect %.3e", hd));
  o.require(td >= 1e-1, fmt("time-dependent defect %.3e", td));
  return o;
}

Outcome symmetry_and_monotonicity() {
  Outcome o;
  const Grid g{1, 32};
  const std::size_t M = 200;
  const NumericOptions opt;
  std::mt19937_64 rng(17);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Generator a = random_band_limited(g, M, rng);
    const Isotopy phi = integrate(a, opt);
    const Generator a_inv = group_inverse(a, phi, opt);
    const Generator a_inv_inv = group_inverse(a_inv, invert(phi, opt), opt);
    for (LengthVersion v : {LengthVersion::Linf, LengthVersion::L1inf}) {
      const double lg = length_symmetric(a, a_inv, v);
      const double lgi = length_symmetric(a_inv, a_inv_inv, v);
      worst = std::max(worst, std::abs(lg - lgi));
    }
  }
  o.require(worst <= 1e-6, fmt("max |l_sym(g) - l_sym(g_inv)| %.3e", worst));

  const Grid gs{1, 16};
  const std::size_t Ms = 20;
  const Generator target = zero_ham_rotation(gs, Ms, rotation_form(std::vector<double>{0.3, 0.4}));
  std::vector<std::vector<double>> lifts{{-0.7, 0.4}, {0.3, -0.6}, {1.3, 1.4}, {0.3, 0.4}, {-0.7, -0.6}};
  GeneratorSeq cands;
  std::mt19937_64 crng(5);
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (const auto& v : lifts) {
    cands.push_back(random_band_limited(gs, Ms, crng));
    cands.push_back(zero_ham_rotation(gs, Ms, rotation_form(v)));
    const double b = norm_upper(target, cands, LengthVersion::Linf, 1e-3, opt).bound;
    monotone = monotone && b <= prev;
    prev = b;
  }
  o.require(monotone, fmt("norm_upper nonincreasing, final bound %.6f", prev));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"rotation lengths", rotation_lengths},
      {"generator group isomorphism", group_isomorphism},
      {"hodge round trip", hodge_round_trip},
      {"mass flow duality", fathi_duality},
      {"hamiltonian mass flow vanishes", hamiltonian_mass_flow},
      {"weinstein deformation", weinstein},
      {"ldefor2 bounds", ldefor2_bounds},
      {"displacement table and energy", displacement},
      {"one-parameter group property", ugr},
      {"norm symmetry and monotonicity", symmetry_and_monotonicity},
  };
  const std::vector<double> budget{1.0, 120.0, 10.0, 60.0, 0.0, 60.0, 0.0, 0.0, 0.0, 0.0};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget[i] > 0.0) o.require(secs < budget[i], fmt("runtime %.2f s", secs) + fmt(" < %.0f s", budget[i]));
    else o.detail += fmt("; runtime %.2f s", secs);
    std::printf("criterion %2zu %-32s %s  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
