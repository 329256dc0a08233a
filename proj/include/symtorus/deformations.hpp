#pragma once

// Constructive deformations of symplectic paths:
//  * the flux-killing homotopy on the flat torus, which deforms a path with
//    zero flux into a Hamiltonian path with the same endpoints;
//  * the sequential two-parameter deformation built from harmonic families.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "symtorus/flux.hpp"

namespace symtorus {

/// Maps indexed by (s, t) on uniform grids of [0,1]^2, stored as lifted
/// displacements: maps[i][k] is the map at (s_i, t_k).
struct TwoParamFamily {
  Grid grid;
  double ds = 0.0;
  double dt = 0.0;
  std::vector<std::vector<VectorFieldGrid>> maps;

  std::size_t s_samples() const { return maps.size(); }
  std::size_t t_samples() const { return maps.empty() ? 0 : maps.front().size(); }
};

namespace detail {

/// Generator of the constant field z on [0, 1] with `steps` steps.
inline Generator constant_field_generator(const Grid& g, std::span<const double> z, std::size_t steps) {
  const HarmonicForm h = flat(z);
  return Generator::sample(g, steps, [](double, std::span<const double>) { return 0.0; }, [&](double) { return h; });
}

/// Cumulative trapezoid of a sampled vector family.
inline std::vector<std::vector<double>> cumulative_trapezoid(const std::vector<std::vector<double>>& f, double dt) {
  std::vector<std::vector<double>> out(f.size(), std::vector<double>(f.empty() ? 0 : f.front().size(), 0.0));
  for (std::size_t k = 1; k < f.size(); ++k)
    for (std::size_t a = 0; a < f[k].size(); ++a) out[k][a] = out[k - 1][a] + 0.5 * dt * (f[k - 1][a] + f[k][a]);
  return out;
}

}  // namespace detail

struct WeinsteinOptions {
  double flux_tol = 1e-6;
  std::size_t s_steps = 8;
  // Builds the family even when the flux is not zero (negative controls).
  bool allow_nonzero_flux = false;
};

struct WeinsteinReport {
  double flux_norm = 0.0;
  double boundary_defect = 0.0;     // max_s d_C0(theta^0_s, id), d_C0(theta^1_s, id)
  double harmonic_residual = 0.0;   // max_t |H_t| of the recovered generator of the output
  double endpoint_defect = 0.0;     // d_C0(output(1), input(1))
};

struct WeinsteinResult {
  Isotopy ham_isotopy;
  TwoParamFamily theta;   // theta[i][k] = theta^{t_k}_{s_i}
  TwoParamFamily family;  // family[i][k] = theta^{t_k}_{s_i} o phi_{t_k}
  WeinsteinReport report;
};

/// On the flat torus the field Y_t = -sharp(int_0^t H_u du) is constant, so its
/// s-flow theta^t_s is a translation; the s = 1 slice composed with phi_t is a
/// Hamiltonian path with the endpoints of phi whenever int_0^1 H = 0.
inline WeinsteinResult weinstein_deform(const Generator& g, const WeinsteinOptions& wopt = {},
                                        const NumericOptions& opt = {}) {
  const double fnorm = flux(g).harmonic_rep.norm();
  if (!wopt.allow_nonzero_flux && fnorm > wopt.flux_tol)
    throw Error(ErrorCode::FluxNotZero, "flux norm " + std::to_string(fnorm) + " exceeds " + std::to_string(wopt.flux_tol));
  require(wopt.s_steps >= 1, ErrorCode::InvalidArgument, "s_steps must be positive");
  const Grid& grid = g.grid;
  const Isotopy phi = integrate(g, opt);

  std::vector<std::vector<double>> harm_vals;
  for (const auto& h : g.harms) harm_vals.push_back(h.lambda);
  const auto cum = detail::cumulative_trapezoid(harm_vals, g.dt);

  WeinsteinResult out;
  out.report.flux_norm = fnorm;
  for (TwoParamFamily* f : {&out.theta, &out.family}) {
    f->grid = grid;
    f->ds = 1.0 / static_cast<double>(wopt.s_steps);
    f->dt = g.dt;
    f->maps.assign(wopt.s_steps + 1, {});
  }
  for (std::size_t k = 0; k < g.samples(); ++k) {
    const std::vector<double> y = sharp(-HarmonicForm(cum[k]));
    const Isotopy theta = integrate(detail::constant_field_generator(grid, y, wopt.s_steps), opt);
    for (std::size_t i = 0; i < theta.samples(); ++i) {
      if (k == 0 || k + 1 == g.samples())
        out.report.boundary_defect = std::max(out.report.boundary_defect, c0_to_identity(theta.maps[i]));
      out.family.maps[i].push_back(detail::compose_displacements(theta.maps[i], phi.maps[k], opt.interp_order));
      out.theta.maps[i].push_back(theta.maps[i]);
    }
  }

  Isotopy& ham = out.ham_isotopy;
  ham.grid = grid;
  ham.dt = g.dt;
  ham.maps = out.family.maps.back();
  ham.velocities = detail::fd_velocities(ham.maps, ham.dt);

  const Generator rec = generator_of(ham, opt);
  for (const auto& h : rec.harms) out.report.harmonic_residual = std::max(out.report.harmonic_residual, h.norm());
  out.report.endpoint_defect = detail::c0_distance(ham.maps.back(), phi.maps.back(), opt);
  return out;
}

struct HomotopyReport {
  double start_defect = 0.0;  // max_s d_C0(H(s,0), id)
  double end_defect = 0.0;    // max_s d_C0(H(s,1), H(0,1))
  double base_defect = 0.0;   // max_t d_C0(H(0,t), base_t), forward maps
};

inline HomotopyReport homotopy_eval(const TwoParamFamily& family, const Isotopy& base) {
  require_same_grid(family.grid, base.grid, "homotopy_eval");
  require(family.s_samples() >= 1 && family.t_samples() == base.samples(), ErrorCode::DiscretizationMismatch,
          "family and base have different time grids");
  HomotopyReport r;
  const auto& end0 = family.maps.front().back();
  for (const auto& row : family.maps) {
    r.start_defect = std::max(r.start_defect, c0_to_identity(row.front()));
    r.end_defect = std::max(r.end_defect, detail::slice_distance(row.back(), end0));
  }
  for (std::size_t k = 0; k < base.samples(); ++k)
    r.base_defect = std::max(r.base_defect, detail::slice_distance(family.maps.front()[k], base.maps[k]));
  return r;
}

// ---------------------------------------------------------------------------
// Sequential two-parameter deformation of harmonic families.

struct LDeforOptions {
  std::size_t s_steps = 8;
  double harmonic_tol = 1e-9;
  bool build_maps = true;
};

struct LDeforBundle {
  double dt = 0.0;
  double ds = 0.0;
  std::vector<std::vector<double>> z;                  // z[k]: the constant field Z_{t_k}
  std::vector<std::vector<double>> y;                  // Y^{t_k} = -int_0^{t_k} Z_u du
  std::vector<std::vector<std::vector<double>>> zst;   // zst[i][k] = Z^{(s_i, t_k)}
  TwoParamFamily theta;                                // s-flows of Y^t
  TwoParamFamily g_family;                             // G_{(s,t)}: s-flow of Z^{(., t)}
  std::vector<std::vector<std::vector<double>>> v;     // v[i][k] = (d/dt G_{(s,t)}) o G^{-1}_{(s,t)}
};

/// Constant vector of a harmonic vector field; NotHarmonic if it varies.
inline std::vector<double> harmonic_vector(const VectorFieldGrid& z, double tol) {
  std::vector<double> out(z.dim());
  for (int a = 0; a < z.dim(); ++a) {
    out[a] = z[a].mean();
    const double spread = z[a].max() - z[a].min();
    if (spread > tol)
      throw Error(ErrorCode::NotHarmonic, "vector field component " + std::to_string(a) + " varies by " +
                                              std::to_string(spread));
  }
  return out;
}

namespace detail {

/// Piecewise-linear sample of a uniform family at time tau in [0, t_end].
inline std::vector<double> lerp_family(const std::vector<std::vector<double>>& f, double dt, double tau) {
  const double u = std::clamp(tau / dt, 0.0, static_cast<double>(f.size() - 1));
  const std::size_t k = std::min(static_cast<std::size_t>(u), f.size() - 2);
  const double w = u - static_cast<double>(k);
  std::vector<double> out(f[k].size());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = (1.0 - w) * f[k][a] + w * f[k + 1][a];
  return out;
}

}  // namespace detail

/// Z^{(s,t)} = t Z_{st} - 2 s int_0^t Z_u du for every (s_i, t_k).
inline std::vector<std::vector<std::vector<double>>> ldefor2_fields(const std::vector<std::vector<double>>& z, double dt,
                                                                    std::size_t s_steps) {
  require(z.size() >= 2, ErrorCode::InvalidArgument, "need at least two time samples");
  const auto cum = detail::cumulative_trapezoid(z, dt);
  const double ds = 1.0 / static_cast<double>(s_steps);
  std::vector<std::vector<std::vector<double>>> out(s_steps + 1);
  for (std::size_t i = 0; i <= s_steps; ++i) {
    const double s = static_cast<double>(i) * ds;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const double t = static_cast<double>(k) * dt;
      std::vector<double> zz = detail::lerp_family(z, dt, s * t);
      for (std::size_t a = 0; a < zz.size(); ++a) zz[a] = t * zz[a] - 2.0 * s * cum[k][a];
      out[i].push_back(std::move(zz));
    }
  }
  return out;
}

inline LDeforBundle ldefor2_family(const std::vector<VectorFieldGrid>& Z, double dt, const LDeforOptions& lopt = {},
                                   const NumericOptions& opt = {}) {
  require(Z.size() >= 3, ErrorCode::InvalidArgument, "need at least three time samples");
  require(lopt.s_steps >= 2, ErrorCode::InvalidArgument, "s_steps must be at least 2");
  const Grid& grid = Z.front().grid();
  LDeforBundle b;
  b.dt = dt;
  b.ds = 1.0 / static_cast<double>(lopt.s_steps);
  for (const auto& zt : Z) {
    require_same_grid(grid, zt.grid(), "ldefor2_family");
    b.z.push_back(harmonic_vector(zt, lopt.harmonic_tol));
  }
  b.y = detail::cumulative_trapezoid(b.z, dt);
  for (auto& yy : b.y)
    for (double& c : yy) c = -c;
  b.zst = ldefor2_fields(b.z, dt, lopt.s_steps);

  const std::size_t S = lopt.s_steps;
  const std::size_t T = b.z.size();
  const int dim = grid.dim();

  // G_{(s,t)} is the s-flow of the constant fields Z^{(., t)}; it is a
  // translation by int_0^s Z^{(sigma, t)} d sigma.
  std::vector<std::vector<std::vector<double>>> gdisp(S + 1, std::vector<std::vector<double>>(T));
  for (std::size_t k = 0; k < T; ++k) {
    std::vector<double> acc(dim, 0.0);
    gdisp[0][k] = acc;
    for (std::size_t i = 1; i <= S; ++i) {
      for (int a = 0; a < dim; ++a) acc[a] += 0.5 * b.ds * (b.zst[i - 1][k][a] + b.zst[i][k][a]);
      gdisp[i][k] = acc;
    }
  }
  // For translations (d/dt G) o G^{-1} is the t-derivative of the shift.
  b.v.assign(S + 1, std::vector<std::vector<double>>(T, std::vector<double>(dim, 0.0)));
  for (std::size_t i = 0; i <= S; ++i)
    for (std::size_t k = 0; k < T; ++k)
      for (int a = 0; a < dim; ++a) {
        if (k == 0)
          b.v[i][k][a] = (-3.0 * gdisp[i][0][a] + 4.0 * gdisp[i][1][a] - gdisp[i][2][a]) / (2.0 * dt);
        else if (k + 1 == T)
          b.v[i][k][a] = (3.0 * gdisp[i][k][a] - 4.0 * gdisp[i][k - 1][a] + gdisp[i][k - 2][a]) / (2.0 * dt);
        else
          b.v[i][k][a] = (gdisp[i][k + 1][a] - gdisp[i][k - 1][a]) / (2.0 * dt);
      }

  if (lopt.build_maps) {
    for (TwoParamFamily* f : {&b.theta, &b.g_family}) {
      f->grid = grid;
      f->ds = b.ds;
      f->dt = dt;
      f->maps.assign(S + 1, {});
    }
    for (std::size_t k = 0; k < T; ++k) {
      const Isotopy th = integrate(detail::constant_field_generator(grid, b.y[k], S), opt);
      // Time-dependent generator in s: harmonic part flat(Z^{(s_i, t_k)}).
      Generator gs;
      gs.grid = grid;
      gs.dt = b.ds;
      for (std::size_t i = 0; i <= S; ++i) {
        gs.hams.emplace_back(grid);
        gs.harms.push_back(flat(b.zst[i][k]));
      }
      const Isotopy gk = integrate(gs, opt);
      for (std::size_t i = 0; i <= S; ++i) {
        b.theta.maps[i].push_back(th.maps[i]);
        b.g_family.maps[i].push_back(gk.maps[i]);
      }
    }
  }
  return b;
}

/// l1 norm of the harmonic form of a constant field.
inline double field_norm(std::span<const double> z) { return flat(z).norm(); }

struct LDeforSequenceRow {
  std::size_t index = 0;
  double z_gap = 0.0;    // sup_u |Z^{i+1}_u - Z^i_u|
  double zst_gap = 0.0;  // sup_{s,t} |Z^{(s,t)}_{i+1} - Z^{(s,t)}_i|
  double y_gap = 0.0;    // sup_t |Y^t_{i+1} - Y^t_i|
};

struct LDeforSequenceReport {
  std::vector<LDeforSequenceRow> rows;
  bool zst_bound_holds = true;  // zst_gap <= 3 z_gap + eps
  bool y_bound_holds = true;    // y_gap <= z_gap + eps
};

inline LDeforSequenceReport ldefor2_sequence(const std::vector<std::vector<std::vector<double>>>& seq, double dt,
                                             std::size_t s_steps = 8, double eps = 1e-6) {
  require(seq.size() >= 2, ErrorCode::InvalidArgument, "sequence needs at least two families");
  std::vector<std::vector<std::vector<std::vector<double>>>> zst;
  std::vector<std::vector<std::vector<double>>> ys;
  for (const auto& z : seq) {
    zst.push_back(ldefor2_fields(z, dt, s_steps));
    ys.push_back(detail::cumulative_trapezoid(z, dt));
  }
  auto diff_norm = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) d[c] = a[c] - b[c];
    return field_norm(d);
  };
  LDeforSequenceReport r;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    LDeforSequenceRow row;
    row.index = i;
    require(seq[i].size() == seq[i + 1].size(), ErrorCode::DiscretizationMismatch, "families have different lengths");
    for (std::size_t k = 0; k < seq[i].size(); ++k) {
      row.z_gap = std::max(row.z_gap, diff_norm(seq[i + 1][k], seq[i][k]));
      row.y_gap = std::max(row.y_gap, diff_norm(ys[i + 1][k], ys[i][k]));
    }
    for (std::size_t a = 0; a < zst[i].size(); ++a)
      for (std::size_t k = 0; k < zst[i][a].size(); ++k)
        row.zst_gap = std::max(row.zst_gap, diff_norm(zst[i + 1][a][k], zst[i][a][k]));
    r.zst_bound_holds = r.zst_bound_holds && row.zst_gap <= 3.0 * row.z_gap + eps;
    r.y_bound_holds = r.y_bound_holds && row.y_gap <= row.z_gap + eps;
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace symtorus
