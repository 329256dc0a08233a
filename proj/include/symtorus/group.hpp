#pragma once

// Group structure on generators:
//   (U,H) * (V,K) = (U + V o phi^{-1} + Delta~(K, phi^{-1}), H + K)
//   inverse(U,H)  = (-U o phi - Delta~(H, phi), -H)
// with phi = phi_{(U,H)} and Delta~ the normalized path integral
//   Delta_t(K, psi)(x) = int_0^t K_t(psi'_s)(psi_s(x)) ds.

#include <vector>

#include "symtorus/flows.hpp"

namespace symtorus {

/// Delta~_t(K, psi) for every sample t, normalized to zero grid mean.
///
/// K is constant in space, so with K frozen at the outer time the s-integral
/// telescopes along each trajectory:  int_0^t K_t(d/ds psi_s(x)) ds =
/// K_t(D_t(x)) with D_t the lifted displacement. The inner-time variant has no
/// such closed form and uses cumulative trapezoid quadrature of the
/// trajectory velocities.
inline std::vector<ScalarField> delta_tilde(const std::vector<HarmonicForm>& K, const Isotopy& psi,
                                            const NumericOptions& opt = {}) {
  require(K.size() == psi.samples(), ErrorCode::DiscretizationMismatch,
          "harmonic family and path have different time grids");
  const Grid& g = psi.grid;
  std::vector<ScalarField> out;
  out.reserve(K.size());
  if (opt.delta_mode == DeltaMode::OuterTime) {
    for (std::size_t k = 0; k < K.size(); ++k) {
      ScalarField f(g);
      for (int a = 0; a < g.dim(); ++a) {
        const double c = K[k].lambda[a];
        if (c == 0.0) continue;
        const auto& D = psi.maps[k][a];
        for (std::size_t p = 0; p < g.size(); ++p) f[p] += c * D[p];
      }
      out.push_back(normalize(std::move(f)));
    }
    return out;
  }
  auto integrand = [&](std::size_t s) {
    ScalarField f(g);
    for (int a = 0; a < g.dim(); ++a) {
      const double c = K[s].lambda[a];
      if (c == 0.0) continue;
      const auto& L = psi.velocities[s][a];
      for (std::size_t p = 0; p < g.size(); ++p) f[p] += c * L[p];
    }
    return f;
  };
  ScalarField acc(g);
  ScalarField prev = integrand(0);
  out.push_back(ScalarField(g));
  for (std::size_t k = 1; k < K.size(); ++k) {
    ScalarField cur = integrand(k);
    for (std::size_t p = 0; p < g.size(); ++p) acc[p] += 0.5 * psi.dt * (prev[p] + cur[p]);
    out.push_back(normalize(acc));
    prev = std::move(cur);
  }
  return out;
}

/// Inverse generator given the path phi = phi_{(U,H)}.
inline Generator group_inverse(const Generator& a, const Isotopy& phi, const NumericOptions& opt = {}) {
  require_same_grid(a.grid, phi.grid, "group_inverse");
  require(a.samples() == phi.samples(), ErrorCode::DiscretizationMismatch, "group_inverse: time grids differ");
  const auto delta = delta_tilde(a.harms, phi, opt);
  Generator out;
  out.grid = a.grid;
  out.dt = a.dt;
  for (std::size_t k = 0; k < a.samples(); ++k) {
    ScalarField u = compose_with_map(a.hams[k], phi.maps[k], opt.interp_order);
    u += delta[k];
    out.hams.push_back(normalize(-u));
    out.harms.push_back(-a.harms[k]);
  }
  return out;
}

inline Generator group_inverse(const Generator& a, const NumericOptions& opt = {}) {
  return group_inverse(a, integrate(a, opt), opt);
}

/// a * b given the path phi_a.
inline Generator group_product(const Generator& a, const Generator& b, const Isotopy& phi_a,
                               const NumericOptions& opt = {}) {
  require_same_discretization(a, b, "group_product");
  require(a.samples() == phi_a.samples(), ErrorCode::DiscretizationMismatch, "group_product: path mismatch");
  const Isotopy phi_inv = invert(phi_a, opt);
  const auto delta = delta_tilde(b.harms, phi_inv, opt);
  Generator out;
  out.grid = a.grid;
  out.dt = a.dt;
  for (std::size_t k = 0; k < a.samples(); ++k) {
    ScalarField u = a.hams[k];
    u += compose_with_map(b.hams[k], phi_inv.maps[k], opt.interp_order);
    u += delta[k];
    out.hams.push_back(normalize(std::move(u)));
    out.harms.push_back(a.harms[k] + b.harms[k]);
  }
  return out;
}

inline Generator group_product(const Generator& a, const Generator& b, const NumericOptions& opt = {}) {
  return group_product(a, b, integrate(a, opt), opt);
}

/// D^2 from generators and their precomputed inverses.
inline double d2_distance(const Generator& a, const Generator& a_inv, const Generator& b, const Generator& b_inv) {
  return 0.5 * (linf_family_norm(difference(a, b)) + linf_family_norm(difference(a_inv, b_inv)));
}

inline double d2_distance(const Generator& a, const Generator& b, const NumericOptions& opt = {}) {
  require_same_discretization(a, b, "d2_distance");
  return d2_distance(a, group_inverse(a, opt), b, group_inverse(b, opt));
}

struct CauchyRow {
  std::size_t index = 0;      // gap between items index and index + 1
  double d2 = 0.0;
  double linf_gap = 0.0;      // ||X^i - X^{i+1}||^inf
  double pushforward_gap = 0.0;  // ||Y^i - Y^{i+1}||^inf, Y^i_t = -(phi_i^{-t})_* X^i_t
};

struct CauchyReport {
  std::vector<CauchyRow> rows;
  bool d2_nonincreasing = true;
  bool linf_nonincreasing = true;
  bool pushforward_nonincreasing = true;
};

/// Consecutive gaps of a generator sequence. The pushforward family
/// -(phi^{-t})_* X_t has generator equal to the group inverse, so its gaps are
/// L^inf distances between inverse generators.
inline CauchyReport cauchy_report_gen(const GeneratorSeq& seq, const NumericOptions& opt = {},
                                      double trend_slack = 1e-12) {
  require(seq.size() >= 2, ErrorCode::InvalidArgument, "cauchy report needs at least two generators");
  std::vector<Generator> inv;
  inv.reserve(seq.size());
  for (const auto& g : seq) inv.push_back(group_inverse(g, opt));
  CauchyReport r;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    CauchyRow row;
    row.index = i;
    row.linf_gap = linf_family_norm(difference(seq[i], seq[i + 1]));
    row.pushforward_gap = linf_family_norm(difference(inv[i], inv[i + 1]));
    row.d2 = 0.5 * (row.linf_gap + row.pushforward_gap);
    if (!r.rows.empty()) {
      const auto& prev = r.rows.back();
      r.d2_nonincreasing = r.d2_nonincreasing && row.d2 <= prev.d2 + trend_slack;
      r.linf_nonincreasing = r.linf_nonincreasing && row.linf_gap <= prev.linf_gap + trend_slack;
      r.pushforward_nonincreasing = r.pushforward_nonincreasing && row.pushforward_gap <= prev.pushforward_gap + trend_slack;
    }
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace symtorus
