#pragma once

// Ready-made experiments on T^{2n}: rotations (optionally reparametrized),
// rotations conjugated by a Hamiltonian diffeomorphism, and the strip
// displacement scenario.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "symtorus/builders.hpp"
#include "symtorus/flux.hpp"
#include "symtorus/hofer.hpp"

namespace symtorus {

/// Rotation R_v^t, or R_v^{f_j(t)} with f_j(t) = j t / (1 + j) when
/// `reparam_j` is set.
struct RotationSpec {
  std::vector<double> v;
  std::optional<int> reparam_j;

  double speed() const {
    if (!reparam_j) return 1.0;
    const double j = static_cast<double>(*reparam_j);
    return j / (1.0 + j);
  }
};

inline Generator build_rotation(const RotationSpec& spec, const Grid& g, std::size_t steps) {
  require(static_cast<int>(spec.v.size()) == g.dim(), ErrorCode::DimensionMismatch, "rotation vector has wrong length");
  require(!spec.reparam_j || *spec.reparam_j > 0, ErrorCode::InvalidArgument, "reparametrization index must be positive");
  for (double c : spec.v) require(std::isfinite(c), ErrorCode::InvalidArgument, "rotation vector must be finite");
  const HarmonicForm h = spec.speed() * rotation_form(spec.v);
  return Generator::sample(g, steps, [](double, std::span<const double>) { return 0.0; }, [&](double) { return h; });
}

/// Autonomous Hamiltonian amp * exp(kappa * sum_i (cos 2 pi (x_i - c_i) - 1)),
/// a smooth periodic bump of width about `width` around `center`.
inline Generator bump_conjugator(const Grid& g, std::size_t steps, std::vector<double> center, double width,
                                 double amplitude) {
  require(static_cast<int>(center.size()) == g.dim(), ErrorCode::DimensionMismatch, "bump center has wrong length");
  require(width > 0.0, ErrorCode::InvalidArgument, "bump width must be positive");
  const double kappa = 1.0 / std::pow(2.0 * std::numbers::pi * width, 2);
  return Generator::sample(
      g, steps,
      [&](double, std::span<const double> x) {
        double e = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) e += std::cos(2.0 * std::numbers::pi * (x[i] - center[i])) - 1.0;
        return amplitude * std::exp(kappa * e);
      },
      [&](double) { return HarmonicForm::zero(g.n); });
}

struct ConjugatedRotation {
  Generator generator;  // (mu, eta), autonomous
  Isotopy path;         // t -> phi^{-1} o R^t o phi
  Isotopy conjugator;   // path whose time-one map is phi
};

/// Conjugates the rotation by the time-one map phi of a Hamiltonian generator.
/// The generator of phi^{-1} o R^t o phi is (mu, eta) with eta the rotation
/// form and mu = int_0^1 eta(d/ds phi_s) o phi_s ds.
inline ConjugatedRotation build_conjugated(const RotationSpec& spec, const Generator& conj,
                                           const NumericOptions& opt = {}) {
  if (!conj.is_hamiltonian(1e-12))
    throw Error(ErrorCode::NotHamiltonianConjugator, "conjugating generator has a harmonic part");
  const Grid& g = conj.grid;
  const std::size_t steps = conj.steps();
  ConjugatedRotation out;
  out.conjugator = integrate(conj, opt);
  const HarmonicForm eta = spec.speed() * rotation_form(spec.v);
  const ScalarField mu = normalize(delta_one(OneFormField::constant(g, eta), out.conjugator, opt));
  out.generator =
      Generator::sample(g, steps, [](double, std::span<const double>) { return 0.0; }, [&](double) { return eta; });
  for (auto& u : out.generator.hams) u = mu;

  const VectorFieldGrid& D = out.conjugator.maps.back();
  const auto inv = out.conjugator.inverse_maps(opt);
  const VectorFieldGrid& E = inv->back();
  const std::vector<double> z = sharp(eta);
  Isotopy& psi = out.path;
  psi.grid = g;
  psi.dt = conj.dt;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = conj.time(k);
    VectorFieldGrid shift = D;
    for (int a = 0; a < g.dim(); ++a) shift[a] += t * z[a];
    VectorFieldGrid disp = detail::sample_at_displaced(E, shift, opt.interp_order);
    disp += shift;
    psi.maps.push_back(std::move(disp));
  }
  psi.maps.front() = VectorFieldGrid(g);
  psi.velocities = detail::fd_velocities(psi.maps, psi.dt);
  return out;
}

struct ConjugatorTrendRow {
  double width = 0.0;
  double amplitude = 0.0;
  double osc_mu = 0.0;     // osc of mu(eta, Phi_j)
  double gap = 0.0;        // sup |mu_j - mu_{j-1}|, 0 for the first row
  double length = 0.0;     // l_inf of the conjugated generator
};

/// Conjugates the rotation by bumps whose width shrinks through `widths`, with
/// amplitude scaled by (width / widths[0])^2 so the conjugators tend to the
/// identity in C^0, and reports the Cauchy trend of the Hamiltonian parts mu.
inline std::vector<ConjugatorTrendRow> conjugator_sequence_trend(const RotationSpec& spec, const Grid& g,
                                                                 std::size_t steps, const std::vector<double>& widths,
                                                                 double amplitude, const NumericOptions& opt = {}) {
  require(!widths.empty(), ErrorCode::InvalidArgument, "need at least one width");
  std::vector<ConjugatorTrendRow> rows;
  ScalarField prev;
  for (double w : widths) {
    ConjugatorTrendRow r;
    r.width = w;
    r.amplitude = amplitude * (w / widths.front()) * (w / widths.front());
    const Generator conj = bump_conjugator(g, steps, std::vector<double>(g.dim(), 0.5), w, r.amplitude);
    const ConjugatedRotation c = build_conjugated(spec, conj, opt);
    const ScalarField& mu = c.generator.hams.front();
    r.osc_mu = osc(mu);
    r.length = length_linf(c.generator);
    if (!rows.empty()) r.gap = (mu - prev).sup_norm();
    prev = mu;
    rows.push_back(r);
  }
  return rows;
}

struct StripScenario {
  double nu = 0.0;
  double a1 = 0.0;
  Region region;
  Generator generator;
  Isotopy path;
  DisplacementResult displacement;
  std::optional<double> energy_bound;  // symmetric length of this path when it displaces
  std::vector<std::string> warnings;
};

/// Translation by (a1, 0, ..., 0) acting on the strip {0 <= theta_1 < nu},
/// optionally conjugated by the time-one map phi of `conj`; in that case the
/// region is phi^{-1} of the strip, sampled as a grid mask.
inline StripScenario build_strip_scenario(double nu, double a1, const Grid& g, std::size_t steps,
                                          const std::optional<Generator>& conj = std::nullopt,
                                          const NumericOptions& opt = {}) {
  StripScenario sc;
  sc.nu = nu;
  sc.a1 = a1;
  if (!(nu > 0.0 && nu < 0.25)) sc.warnings.push_back("nu outside (0, 1/4)");
  if (!(a1 > 0.0 && a1 <= 0.5)) sc.warnings.push_back("a1 outside (0, 1/2]");
  RotationSpec spec;
  spec.v.assign(g.dim(), 0.0);
  spec.v[0] = a1;
  if (conj) {
    ConjugatedRotation c = build_conjugated(spec, *conj, opt);
    const VectorFieldGrid& D = c.conjugator.maps.back();
    std::vector<char> mask(g.size(), 0);
    std::vector<double> x(g.dim());
    for (std::size_t p = 0; p < g.size(); ++p) {
      g.point(p, x);
      mask[p] = wrap01(x[0] + D[0][p]) < nu ? 1 : 0;
    }
    sc.region = Region::from_mask(g, std::move(mask));
    sc.generator = std::move(c.generator);
    sc.path = std::move(c.path);
  } else {
    sc.region = Region::strip(nu);
    sc.generator = build_rotation(spec, g, steps);
    sc.path = integrate(sc.generator, opt);
  }
  sc.displacement = displacement_test(sc.path.maps.back(), sc.region);
  if (sc.displacement.displaced)
    sc.energy_bound = length_symmetric(sc.generator, group_inverse(sc.generator, sc.path, opt), LengthVersion::Linf);
  return sc;
}

}  // namespace symtorus
