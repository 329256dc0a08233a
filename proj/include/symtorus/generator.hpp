#pragma once

// Generators (U, H) of symplectic isotopies: a time-sampled family of
// normalized Hamiltonians U_t together with harmonic 1-forms H_t, so that the
// velocity field Z_t of the isotopy satisfies iota(Z_t) omega = dU_t + H_t.

#include <cmath>
#include <vector>

#include "symtorus/torus.hpp"

namespace symtorus {

/// Which time index of K enters the path integral Delta_t(K, phi).
///   OuterTime: int_0^t K_t(phi'_s) o phi_s ds   (K frozen at the outer time)
///   InnerTime: int_0^t K_s(phi'_s) o phi_s ds
enum class DeltaMode { OuterTime, InnerTime };

/// Numerical knobs shared by the flow, group and flux code.
struct NumericOptions {
  int interp_order = 5;
  double closed_tol = 1e-6;
  // Velocities recovered from sampled paths are closed only up to the time
  // differencing error, so path recovery uses a looser closedness gate.
  double path_closed_tol = 1e-2;
  double inverse_tol = 1e-10;
  int inverse_max_iter = 100;
  DeltaMode delta_mode = DeltaMode::OuterTime;
};

struct Generator {
  Grid grid;
  double dt = 0.0;
  std::vector<ScalarField> hams;
  std::vector<HarmonicForm> harms;

  std::size_t samples() const { return hams.size(); }
  std::size_t steps() const { return hams.empty() ? 0 : hams.size() - 1; }
  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
  double t_end() const { return time(steps()); }

  /// Zero generator on [0, 1] with M steps.
  static Generator zero(const Grid& g, std::size_t steps) {
    Generator out;
    out.grid = g;
    out.dt = 1.0 / static_cast<double>(steps);
    out.hams.assign(steps + 1, ScalarField(g));
    out.harms.assign(steps + 1, HarmonicForm::zero(g.n));
    return out;
  }

  /// Sample U(t, x) and H(t) on [0, t_end] with `steps` uniform steps.
  /// Hamiltonians are normalized after sampling.
  template <class UFn, class HFn>
  static Generator sample(const Grid& g, std::size_t steps, UFn&& u, HFn&& h, double t_end = 1.0) {
    Generator out;
    out.grid = g;
    out.dt = t_end / static_cast<double>(steps);
    out.hams.reserve(steps + 1);
    out.harms.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
      const double t = out.time(k);
      out.hams.push_back(normalize(ScalarField::sample(g, [&](std::span<const double> x) { return u(t, x); })));
      HarmonicForm hk = h(t);
      require(static_cast<int>(hk.lambda.size()) == g.dim(), ErrorCode::DimensionMismatch,
              "harmonic family has wrong dimension");
      out.harms.push_back(std::move(hk));
    }
    return out;
  }

  /// Throws on malformed data; `mean_tol` bounds the allowed grid mean of U_t.
  void validate(double mean_tol = 1e-9) const {
    grid.validate();
    require(samples() >= 2, ErrorCode::InvalidArgument, "generator needs at least two time samples");
    require(hams.size() == harms.size(), ErrorCode::DimensionMismatch, "hams/harms lengths differ");
    require(dt > 0.0 && std::isfinite(dt), ErrorCode::InvalidArgument, "time step must be positive");
    for (std::size_t k = 0; k < samples(); ++k) {
      require_same_grid(grid, hams[k].grid, "generator hamiltonian");
      require(static_cast<int>(harms[k].lambda.size()) == grid.dim(), ErrorCode::DimensionMismatch,
              "generator harmonic dimension");
      require(std::abs(hams[k].mean()) <= mean_tol, ErrorCode::InvalidArgument,
              "generator hamiltonian is not normalized at sample " + std::to_string(k));
      for (double v : hams[k].values) require(std::isfinite(v), ErrorCode::InvalidArgument, "non-finite value");
    }
  }

  bool is_hamiltonian(double tol = 0.0) const {
    for (const auto& h : harms)
      if (h.norm() > tol) return false;
    return true;
  }
};

using GeneratorSeq = std::vector<Generator>;

inline void require_same_discretization(const Generator& a, const Generator& b, const char* where) {
  require_same_grid(a.grid, b.grid, where);
  require(a.samples() == b.samples() && std::abs(a.dt - b.dt) <= 1e-14, ErrorCode::DiscretizationMismatch,
          std::string(where) + ": time grids differ");
}

/// Banyaga's norm of the symplectic vector field X^{(U,H)}: |H| + osc(U).
inline double vf_norm(const ScalarField& u, const HarmonicForm& h) { return h.norm() + osc(u); }

/// ||(X_t)||^inf = max over time samples of vf_norm.
inline double linf_family_norm(const Generator& g) {
  double m = 0.0;
  for (std::size_t k = 0; k < g.samples(); ++k) m = std::max(m, vf_norm(g.hams[k], g.harms[k]));
  return m;
}

/// Sample-wise difference a - b (the generator of X^a_t - X^b_t).
inline Generator difference(const Generator& a, const Generator& b) {
  require_same_discretization(a, b, "difference");
  Generator out = a;
  for (std::size_t k = 0; k < a.samples(); ++k) {
    out.hams[k] -= b.hams[k];
    out.harms[k] -= b.harms[k];
  }
  return out;
}

inline Generator scaled(Generator g, double c) {
  for (auto& u : g.hams) u *= c;
  for (auto& h : g.harms) h *= c;
  return g;
}

/// Sup over samples of |U^a_t - U^b_t| and of the harmonic coefficients.
inline double generator_sup_distance(const Generator& a, const Generator& b) {
  require_same_discretization(a, b, "generator_sup_distance");
  double m = 0.0;
  for (std::size_t k = 0; k < a.samples(); ++k) {
    m = std::max(m, (a.hams[k] - b.hams[k]).sup_norm());
    for (std::size_t i = 0; i < a.harms[k].lambda.size(); ++i)
      m = std::max(m, std::abs(a.harms[k].lambda[i] - b.harms[k].lambda[i]));
  }
  return m;
}

}  // namespace symtorus
