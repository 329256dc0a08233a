#pragma once

// Flux of symplectic paths, Fathi's mass flow computed two ways (harmonic
// formula and lifted displacement integral), and the S^alpha functional.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "symtorus/flows.hpp"
#include "symtorus/hodge.hpp"
#include "symtorus/interp.hpp"

namespace symtorus {

/// Cohomology class int_0^1 [H_t] dt, stored as its flat harmonic representative.
struct FluxClass {
  HarmonicForm harmonic_rep;
};

/// Trapezoid rule in time over the generator's harmonic family.
inline FluxClass flux(const Generator& g) {
  require(g.samples() >= 1, ErrorCode::InvalidArgument, "flux of an empty generator");
  HarmonicForm acc = HarmonicForm::zero(g.grid.n);
  for (std::size_t k = 0; k + 1 < g.samples(); ++k) acc += (0.5 * g.dt) * (g.harms[k] + g.harms[k + 1]);
  return {acc};
}

/// int_0^1 phi_t^*(iota(phi'_t) omega) dt projected to its harmonic part.
/// With phi_t(x) = x + D_t(x), the pullback at x is (I + grad D_t)^T applied to
/// flat(L_t(x)), where L_t is the trajectory velocity.
inline FluxClass flux_direct(const Isotopy& phi) {
  const Grid& g = phi.grid;
  const int dim = g.dim();
  require(phi.velocities.size() == phi.samples() && phi.samples() >= 2, ErrorCode::InvalidArgument,
          "flux_direct needs sampled velocities");
  std::vector<double> mean_form(dim, 0.0);
  std::vector<double> slice(dim);
  for (std::size_t k = 0; k < phi.samples(); ++k) {
    const OneFormField beta = flat(phi.velocities[k]);
    const auto grads = detail::displacement_gradient(phi.maps[k]);
    std::fill(slice.begin(), slice.end(), 0.0);
    for (int b = 0; b < dim; ++b) {
      double s = 0.0;
      for (std::size_t p = 0; p < g.size(); ++p) {
        double v = beta[b][p];
        for (int a = 0; a < dim; ++a) v += grads[a * dim + b][p] * beta[a][p];
        s += v;
      }
      slice[b] = s / static_cast<double>(g.size());
    }
    const double w = (k == 0 || k + 1 == phi.samples()) ? 0.5 * phi.dt : phi.dt;
    for (int b = 0; b < dim; ++b) mean_form[b] += w * slice[b];
  }
  return {HarmonicForm(std::move(mean_form))};
}

/// Fathi's mass flow from the harmonic formula, paired with the class m of
/// f(theta) = sum m_i theta_i mod 1.
inline double mass_flow_formula(const Generator& g, std::span<const int> m) {
  return wedge_pair_top(flux(g).harmonic_rep, m);
}

/// Lifted mass flow of f o phi_t - f at sample k: grid mean of sum m_i D_t,i.
inline double mass_flow_at(const Isotopy& phi, std::span<const int> m, std::size_t k) {
  const Grid& g = phi.grid;
  require(static_cast<int>(m.size()) == g.dim(), ErrorCode::DimensionMismatch, "class vector has wrong length");
  double s = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    if (m[a] == 0) continue;
    s += m[a] * phi.maps[k][a].mean();
  }
  return s;
}

/// Mass flow evaluated directly from the time-one lift.
inline double mass_flow_direct(const Isotopy& phi, std::span<const int> m) {
  require(phi.samples() >= 1, ErrorCode::InvalidArgument, "empty isotopy");
  const double jump = lift_continuity_defect(phi);
  if (jump >= 0.5)
    throw Error(ErrorCode::LiftBroken, "displacement lift jumps by " + std::to_string(jump) + " between samples");
  return mass_flow_at(phi, m, phi.steps());
}

/// Mass flow at every sample time (diagnostic trace).
inline std::vector<double> mass_flow_trace(const Isotopy& phi, std::span<const int> m) {
  std::vector<double> out;
  out.reserve(phi.samples());
  for (std::size_t k = 0; k < phi.samples(); ++k) out.push_back(mass_flow_at(phi, m, k));
  return out;
}

/// Classes +-e_i for i = 1..2n.
inline std::vector<std::vector<int>> signed_basis_classes(int n) {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < 2 * n; ++i)
    for (int s : {1, -1}) {
      std::vector<int> m(2 * n, 0);
      m[i] = s;
      out.push_back(std::move(m));
    }
  return out;
}

struct DualityRow {
  std::vector<int> m;
  double formula = 0.0;
  double direct = 0.0;
  double gap = 0.0;
};

inline std::vector<DualityRow> duality_table(const Generator& g, const Isotopy& phi,
                                             const std::vector<std::vector<int>>& m_set) {
  std::vector<DualityRow> rows;
  for (const auto& m : m_set) {
    DualityRow r;
    r.m = m;
    r.formula = mass_flow_formula(g, m);
    r.direct = mass_flow_direct(phi, m);
    r.gap = std::abs(r.formula - r.direct);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline double duality_gap(const Generator& g, const Isotopy& phi, const std::vector<std::vector<int>>& m_set) {
  double worst = 0.0;
  for (const auto& r : duality_table(g, phi, m_set)) worst = std::max(worst, r.gap);
  return worst;
}

/// Delta_1(alpha, phi)(x) = int_0^1 alpha_{phi_s x}(d/ds phi_s x) ds, not normalized.
inline ScalarField delta_one(const OneFormField& alpha, const Isotopy& phi, const NumericOptions& opt = {}) {
  require_same_grid(alpha.grid(), phi.grid, "delta_one");
  const Grid& g = phi.grid;
  const int dim = g.dim();
  Interpolator interp(g, opt.interp_order);
  Interpolator::Stencil st;
  std::vector<double> y(dim);
  ScalarField acc(g);
  for (std::size_t k = 0; k < phi.samples(); ++k) {
    const double w = (k == 0 || k + 1 == phi.samples()) ? 0.5 * phi.dt : phi.dt;
    for (std::size_t p = 0; p < g.size(); ++p) {
      g.point(p, y);
      for (int a = 0; a < dim; ++a) y[a] += phi.maps[k][a][p];
      interp.stencil(y, st);
      double v = 0.0;
      for (int a = 0; a < dim; ++a) v += Interpolator::apply(st, alpha[a]) * phi.velocities[k][a][p];
      acc[p] += w * v;
    }
  }
  return acc;
}

/// S^alpha = (1/n) int_M Delta_1 omega^n. With omega^n = n! dvol this is
/// (n-1)! times the grid mean of Delta_1.
inline double s_alpha(const Isotopy& phi, const OneFormField& alpha, const NumericOptions& opt = {}) {
  if (alpha.grid().dim() > 1) {
    const double curl = spectral::curl_sup(alpha);
    if (curl > opt.closed_tol)
      throw Error(ErrorCode::NotClosed, "S^alpha needs a closed form (curl " + std::to_string(curl) + ")");
  }
  return factorial(phi.grid.n - 1) * delta_one(alpha, phi, opt).mean();
}

inline double s_alpha(const Generator& g, const Isotopy& phi, const OneFormField& alpha,
                      const NumericOptions& opt = {}) {
  require_same_grid(g.grid, phi.grid, "s_alpha");
  require(g.samples() == phi.samples(), ErrorCode::DiscretizationMismatch, "s_alpha: time grids differ");
  return s_alpha(phi, alpha, opt);
}

enum class HamiltonianClass { HamiltonianGenerator, FluxZeroOnly, NonzeroFlux };

inline const char* to_string(HamiltonianClass c) {
  switch (c) {
    case HamiltonianClass::HamiltonianGenerator: return "hamiltonian_generator";
    case HamiltonianClass::FluxZeroOnly: return "flux_zero_only";
    case HamiltonianClass::NonzeroFlux: return "nonzero_flux";
  }
  return "unknown";
}

struct ClassifierReport {
  double flux_norm = 0.0;          // |int_0^1 H_t dt|
  double harmonic_residual = 0.0;  // max_t |H_t|
  HamiltonianClass verdict = HamiltonianClass::NonzeroFlux;
  // Membership of the flux in the flux group is not decided numerically.
  std::string note = "flux-group coset membership not tested; raw magnitudes reported";
};

inline ClassifierReport hamiltonian_classifier(const Generator& g, double tol = 1e-8) {
  ClassifierReport r;
  r.flux_norm = flux(g).harmonic_rep.norm();
  for (const auto& h : g.harms) r.harmonic_residual = std::max(r.harmonic_residual, h.norm());
  if (r.harmonic_residual <= tol)
    r.verdict = HamiltonianClass::HamiltonianGenerator;
  else if (r.flux_norm <= tol)
    r.verdict = HamiltonianClass::FluxZeroOnly;
  else
    r.verdict = HamiltonianClass::NonzeroFlux;
  return r;
}

}  // namespace symtorus
