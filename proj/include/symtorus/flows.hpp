#pragma once

// Isotopies of the torus stored as time-sampled lifted displacement fields
// D_k(x) = phi_{t_k}(x) - x (real valued, anchored at 0 for t = 0), plus the
// trajectory velocities d/dt phi_t(x) at the sample times.

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "symtorus/generator.hpp"
#include "symtorus/hodge.hpp"
#include "symtorus/interp.hpp"
#include "symtorus/spectral.hpp"

namespace symtorus {

struct Isotopy {
  Grid grid;
  double dt = 0.0;
  std::vector<VectorFieldGrid> maps;
  std::vector<VectorFieldGrid> velocities;

  std::size_t samples() const { return maps.size(); }
  std::size_t steps() const { return maps.empty() ? 0 : maps.size() - 1; }
  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
  double t_end() const { return time(steps()); }

  static Isotopy identity(const Grid& g, std::size_t steps, double t_end = 1.0) {
    Isotopy out;
    out.grid = g;
    out.dt = t_end / static_cast<double>(steps);
    out.maps.assign(steps + 1, VectorFieldGrid(g));
    out.velocities.assign(steps + 1, VectorFieldGrid(g));
    out.attach_inverse(std::make_shared<const std::vector<VectorFieldGrid>>(out.maps));
    return out;
  }

  /// Inverse displacements E_k with phi_k^{-1}(x) = x + E_k(x), computed on
  /// first use and shared by copies of this isotopy.
  std::shared_ptr<const std::vector<VectorFieldGrid>> inverse_maps(const NumericOptions& opt = {}) const;

  void attach_inverse(std::shared_ptr<const std::vector<VectorFieldGrid>> inv) const {
    std::lock_guard<std::mutex> lock(cache_->m);
    cache_->inverse = std::move(inv);
  }

  void reset_cache() { cache_ = std::make_shared<Cache>(); }

 private:
  struct Cache {
    std::mutex m;
    std::shared_ptr<const std::vector<VectorFieldGrid>> inverse;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

inline void require_same_discretization(const Isotopy& a, const Isotopy& b, const char* where) {
  require_same_grid(a.grid, b.grid, where);
  require(a.samples() == b.samples() && std::abs(a.dt - b.dt) <= 1e-14, ErrorCode::DiscretizationMismatch,
          std::string(where) + ": time grids differ");
}

namespace detail {

inline VectorFieldGrid velocity_field(const Generator& g, std::size_t k) {
  OneFormField alpha = exterior_d(g.hams[k]);
  for (int a = 0; a < g.grid.dim(); ++a) alpha[a] += g.harms[k].lambda[a];
  return sharp(alpha);
}

/// Second-order finite-difference trajectory velocities from sampled maps.
inline std::vector<VectorFieldGrid> fd_velocities(const std::vector<VectorFieldGrid>& maps, double dt) {
  const std::size_t M = maps.size() - 1;
  std::vector<VectorFieldGrid> v(maps.size(), VectorFieldGrid(maps.front().grid()));
  if (M == 0) return v;
  if (M == 1) {
    v[0] = (1.0 / dt) * (maps[1] - maps[0]);
    v[1] = v[0];
    return v;
  }
  for (std::size_t k = 1; k < M; ++k) v[k] = (0.5 / dt) * (maps[k + 1] - maps[k - 1]);
  v[0] = (0.5 / dt) * (4.0 * maps[1] - 3.0 * maps[0] - maps[2]);
  v[M] = (0.5 / dt) * (3.0 * maps[M] - 4.0 * maps[M - 1] + maps[M - 2]);
  return v;
}

/// Evaluate every component of `f` at lifted points x + shift(x) for all grid x.
inline VectorFieldGrid sample_at_displaced(const VectorFieldGrid& f, const VectorFieldGrid& shift, int order) {
  const Grid& g = f.grid();
  Interpolator interp(g, order);
  Interpolator::Stencil st;
  VectorFieldGrid out(g);
  std::vector<double> x(g.dim());
  for (std::size_t p = 0; p < g.size(); ++p) {
    g.point(p, x);
    for (int a = 0; a < g.dim(); ++a) x[a] += shift[a][p];
    interp.stencil(x, st);
    for (int a = 0; a < f.dim(); ++a) out[a][p] = Interpolator::apply(st, f[a]);
  }
  return out;
}

/// Displacement of outer o inner given both displacement fields.
inline VectorFieldGrid compose_displacements(const VectorFieldGrid& outer, const VectorFieldGrid& inner, int order) {
  VectorFieldGrid out = sample_at_displaced(outer, inner, order);
  out += inner;
  return out;
}

/// Solve J z = r in place for a small dense system (partial pivoting).
/// Returns false for a singular matrix.
inline bool solve_small(std::vector<double>& J, std::vector<double>& r, int dim) {
  for (int c = 0; c < dim; ++c) {
    int piv = c;
    for (int q = c + 1; q < dim; ++q)
      if (std::abs(J[q * dim + c]) > std::abs(J[piv * dim + c])) piv = q;
    if (J[piv * dim + c] == 0.0) return false;
    if (piv != c) {
      for (int q = 0; q < dim; ++q) std::swap(J[c * dim + q], J[piv * dim + q]);
      std::swap(r[c], r[piv]);
    }
    for (int q = c + 1; q < dim; ++q) {
      const double f = J[q * dim + c] / J[c * dim + c];
      for (int w = c; w < dim; ++w) J[q * dim + w] -= f * J[c * dim + w];
      r[q] -= f * r[c];
    }
  }
  for (int c = dim - 1; c >= 0; --c) {
    double v = r[c];
    for (int w = c + 1; w < dim; ++w) v -= J[c * dim + w] * r[w];
    r[c] = v / J[c * dim + c];
  }
  return true;
}

/// Spectral Jacobian entries d_b D_a, stored at index a * dim + b.
inline std::vector<ScalarField> displacement_gradient(const VectorFieldGrid& D) {
  const int dim = D.dim();
  std::vector<ScalarField> grads;
  grads.reserve(dim * dim);
  for (int a = 0; a < dim; ++a) {
    const auto s = spectral::forward(D[a]);
    for (int b = 0; b < dim; ++b) grads.push_back(spectral::backward(spectral::derivative(s, b)));
  }
  return grads;
}

/// Solve y + D(y) = x for every grid x by a damped quasi-Newton iteration on
/// the inverse displacement E = y - x, starting from `guess`. The Jacobian
/// I + grad D starts from its interpolated spectral samples and is refined by
/// Broyden updates, which track the derivative of the interpolant itself.
inline VectorFieldGrid invert_slice(const VectorFieldGrid& D, const VectorFieldGrid& guess, const NumericOptions& opt) {
  const Grid& g = D.grid();
  const int dim = g.dim();
  Interpolator interp(g, opt.interp_order);
  Interpolator::Stencil st;
  const auto grads = displacement_gradient(D);
  VectorFieldGrid E = guess;
  std::vector<double> x(dim), y(dim), e(dim), r(dim), cand(dim), rc(dim), step(dim), J(dim * dim), lu(dim * dim),
      jd(dim);
  for (std::size_t p = 0; p < g.size(); ++p) {
    g.point(p, x);
    for (int a = 0; a < dim; ++a) e[a] = E[a][p];
    auto residual = [&](std::span<const double> ee, std::span<double> out) {
      for (int a = 0; a < dim; ++a) y[a] = x[a] + ee[a];
      interp.stencil(y, st);
      double n2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        out[a] = ee[a] + Interpolator::apply(st, D[a]);
        n2 += out[a] * out[a];
      }
      return std::sqrt(n2);
    };
    auto finite_difference_jacobian = [&] {
      constexpr double h = 1e-6;
      for (int b = 0; b < dim; ++b) {
        cand = e;
        cand[b] = e[b] + h;
        residual(cand, rc);
        for (int a = 0; a < dim; ++a) J[a * dim + b] = rc[a];
        cand[b] = e[b] - h;
        residual(cand, rc);
        for (int a = 0; a < dim; ++a) J[a * dim + b] = (J[a * dim + b] - rc[a]) / (2.0 * h);
      }
    };
    double res = residual(e, r);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) J[a * dim + b] = (a == b ? 1.0 : 0.0) + Interpolator::apply(st, grads[a * dim + b]);
    int it = 0;
    while (res > opt.inverse_tol) {
      if (++it > opt.inverse_max_iter)
        throw Error(ErrorCode::NoConvergence, "inverse iteration stalled (residual " + std::to_string(res) + ")");
      lu = J;
      step = r;
      if (!solve_small(lu, step, dim)) step = r;
      bool fresh = false;
      double beta = 1.0;
      for (;;) {
        for (int a = 0; a < dim; ++a) cand[a] = e[a] - beta * step[a];
        const double res_c = residual(cand, rc);
        if (res_c < res) {
          // Broyden update J += (dr - J s) s^T / |s|^2 with s = cand - e.
          double s2 = 0.0;
          for (int a = 0; a < dim; ++a) s2 += beta * beta * step[a] * step[a];
          if (s2 > 0.0) {
            for (int a = 0; a < dim; ++a) {
              double js = 0.0;
              for (int b = 0; b < dim; ++b) js -= J[a * dim + b] * beta * step[b];
              jd[a] = (rc[a] - r[a]) - js;
            }
            for (int a = 0; a < dim; ++a)
              for (int b = 0; b < dim; ++b) J[a * dim + b] -= jd[a] * beta * step[b] / s2;
          }
          e = cand;
          r = rc;
          res = res_c;
          break;
        }
        beta *= 0.5;
        if (beta < 1.0 / 1024.0) {
          // Interpolation round-off floor: accept when already near tolerance.
          if (res <= 100.0 * opt.inverse_tol) {
            res = 0.0;
            break;
          }
          if (!fresh) {
            // The secant model went stale: rebuild J by differencing the interpolant.
            finite_difference_jacobian();
            fresh = true;
            lu = J;
            step = r;
            if (!solve_small(lu, step, dim)) step = r;
            beta = 1.0;
            continue;
          }
          throw Error(ErrorCode::NoConvergence, "inverse iteration cannot reduce residual " + std::to_string(res));
        }
      }
    }
    for (int a = 0; a < dim; ++a) E[a][p] = e[a];
  }
  return E;
}

inline std::vector<VectorFieldGrid> invert_maps(const Isotopy& phi, const NumericOptions& opt) {
  std::vector<VectorFieldGrid> inv;
  inv.reserve(phi.samples());
  for (std::size_t k = 0; k < phi.samples(); ++k) {
    // Continuation in time: the previous inverse is the starting guess.
    const VectorFieldGrid guess = k == 0 ? -1.0 * phi.maps[0] : inv.back();
    inv.push_back(invert_slice(phi.maps[k], guess, opt));
  }
  return inv;
}

inline double slice_distance(const VectorFieldGrid& a, const VectorFieldGrid& b) {
  const Grid& g = a.grid();
  double worst = 0.0;
  std::vector<double> d(g.dim());
  for (std::size_t p = 0; p < g.size(); ++p) {
    for (int c = 0; c < g.dim(); ++c) d[c] = a[c][p] - b[c][p];
    worst = std::max(worst, toroidal_norm(d));
  }
  return worst;
}

/// d_C0 of two torus maps given by displacements: max of the forward distance
/// and the distance of their inverses.
inline double c0_distance(const VectorFieldGrid& a, const VectorFieldGrid& b, const NumericOptions& opt) {
  const double fwd = slice_distance(a, b);
  const VectorFieldGrid ia = invert_slice(a, -1.0 * a, opt);
  const VectorFieldGrid ib = invert_slice(b, -1.0 * b, opt);
  return std::max(fwd, slice_distance(ia, ib));
}

inline double max_lift_jump(const VectorFieldGrid& a, const VectorFieldGrid& b) {
  double worst = 0.0;
  for (int c = 0; c < a.dim(); ++c)
    for (std::size_t p = 0; p < a[c].size(); ++p) worst = std::max(worst, std::abs(a[c][p] - b[c][p]));
  return worst;
}

}  // namespace detail

inline std::shared_ptr<const std::vector<VectorFieldGrid>> Isotopy::inverse_maps(const NumericOptions& opt) const {
  std::lock_guard<std::mutex> lock(cache_->m);
  if (!cache_->inverse) cache_->inverse = std::make_shared<const std::vector<VectorFieldGrid>>(detail::invert_maps(*this, opt));
  return cache_->inverse;
}

/// Checks that consecutive samples keep a continuous lift.
inline double lift_continuity_defect(const Isotopy& phi) {
  double worst = 0.0;
  for (std::size_t k = 1; k < phi.samples(); ++k)
    worst = std::max(worst, detail::max_lift_jump(phi.maps[k], phi.maps[k - 1]));
  return worst;
}

/// Flow of Z_t = sharp(dU_t + H_t) by classical RK4 on the sample grid.
/// Mid-step fields use the 4-point cubic interpolant in time (3-point at the
/// ends), so autonomous generators are integrated without time error.
inline Isotopy integrate(const Generator& g, const NumericOptions& opt = {}) {
  g.validate(1e-8);
  const Grid& grid = g.grid;
  const int dim = grid.dim();
  const std::size_t M = g.steps();
  const double dt = g.dt;

  std::vector<std::optional<VectorFieldGrid>> fields(M + 1);
  auto field = [&](std::size_t k) -> const VectorFieldGrid& {
    if (!fields[k]) fields[k] = detail::velocity_field(g, k);
    return *fields[k];
  };
  auto midpoint = [&](std::size_t k) {
    if (M == 1) return 0.5 * (field(0) + field(1));
    if (k == 0) return (1.0 / 8.0) * (3.0 * field(0) + 6.0 * field(1) - field(2));
    if (k == M - 1) return (1.0 / 8.0) * (-1.0 * field(M - 2) + 6.0 * field(M - 1) + 3.0 * field(M));
    return (1.0 / 16.0) * (-1.0 * field(k - 1) + 9.0 * field(k) + 9.0 * field(k + 1) - field(k + 2));
  };

  Interpolator interp(grid, opt.interp_order);
  Interpolator::Stencil st;
  auto eval = [&](const VectorFieldGrid& Z, std::span<const double> x, std::span<double> out) {
    interp.stencil(x, st);
    for (int a = 0; a < dim; ++a) out[a] = Interpolator::apply(st, Z[a]);
  };

  Isotopy phi;
  phi.grid = grid;
  phi.dt = dt;
  phi.maps.reserve(M + 1);
  phi.velocities.reserve(M + 1);
  phi.maps.emplace_back(grid);
  phi.velocities.push_back(field(0));

  const std::size_t P = grid.size();
  std::vector<double> pos(P * dim);
  std::vector<double> x(dim), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  for (std::size_t p = 0; p < P; ++p) {
    grid.point(p, x);
    for (int a = 0; a < dim; ++a) pos[p * dim + a] = x[a];
  }

  for (std::size_t k = 0; k < M; ++k) {
    const VectorFieldGrid& Z0 = field(k);
    const VectorFieldGrid Zh = midpoint(k);
    const VectorFieldGrid& Z1 = field(k + 1);
    VectorFieldGrid D(grid), L(grid);
    for (std::size_t p = 0; p < P; ++p) {
      double* xp = &pos[p * dim];
      eval(Z0, std::span<const double>(xp, dim), k1);
      for (int a = 0; a < dim; ++a) tmp[a] = xp[a] + 0.5 * dt * k1[a];
      eval(Zh, tmp, k2);
      for (int a = 0; a < dim; ++a) tmp[a] = xp[a] + 0.5 * dt * k2[a];
      eval(Zh, tmp, k3);
      for (int a = 0; a < dim; ++a) tmp[a] = xp[a] + dt * k3[a];
      eval(Z1, tmp, k4);
      for (int a = 0; a < dim; ++a) xp[a] += dt / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
      eval(Z1, std::span<const double>(xp, dim), tmp);
      grid.point(p, x);
      for (int a = 0; a < dim; ++a) {
        D[a][p] = xp[a] - x[a];
        L[a][p] = tmp[a];
      }
    }
    const double jump = detail::max_lift_jump(D, phi.maps.back());
    if (jump >= 0.5)
      throw Error(ErrorCode::StepUnstable, "displacement jump " + std::to_string(jump) + " at step " +
                                               std::to_string(k) + "; refine the time grid");
    phi.maps.push_back(std::move(D));
    phi.velocities.push_back(std::move(L));
    if (k >= 2) fields[k - 2].reset();
  }
  return phi;
}

/// Path of inverse maps t -> phi_t^{-1}.
inline Isotopy invert(const Isotopy& phi, const NumericOptions& opt = {}) {
  Isotopy out;
  out.grid = phi.grid;
  out.dt = phi.dt;
  out.maps = *phi.inverse_maps(opt);
  out.velocities = detail::fd_velocities(out.maps, out.dt);
  out.attach_inverse(std::make_shared<const std::vector<VectorFieldGrid>>(phi.maps));
  return out;
}

/// Slice-wise composition t -> phi_t o psi_t.
inline Isotopy compose(const Isotopy& phi, const Isotopy& psi, const NumericOptions& opt = {}) {
  require_same_discretization(phi, psi, "compose");
  Isotopy out;
  out.grid = phi.grid;
  out.dt = phi.dt;
  out.maps.reserve(phi.samples());
  for (std::size_t k = 0; k < phi.samples(); ++k)
    out.maps.push_back(detail::compose_displacements(phi.maps[k], psi.maps[k], opt.interp_order));
  out.velocities = detail::fd_velocities(out.maps, out.dt);
  return out;
}

/// Eulerian velocity Z_k(y) = (d/dt phi_t)(phi_t^{-1}(y)) at the grid, using
/// finite-difference trajectory velocities.
inline std::vector<VectorFieldGrid> eulerian_velocities(const Isotopy& phi, const NumericOptions& opt = {}) {
  require(phi.samples() >= 3, ErrorCode::InvalidArgument, "velocity recovery needs at least 3 time samples");
  const auto lag = detail::fd_velocities(phi.maps, phi.dt);
  const auto inv = phi.inverse_maps(opt);
  std::vector<VectorFieldGrid> out;
  out.reserve(phi.samples());
  for (std::size_t k = 0; k < phi.samples(); ++k)
    out.push_back(detail::sample_at_displaced(lag[k], (*inv)[k], opt.interp_order));
  return out;
}

/// Recover (U_t, H_t) from a sampled symplectic path.
inline Generator generator_of(const Isotopy& phi, const NumericOptions& opt = {}) {
  const auto Z = eulerian_velocities(phi, opt);
  Generator g;
  g.grid = phi.grid;
  g.dt = phi.dt;
  HodgeOptions hopt{opt.path_closed_tol, true};
  for (const auto& z : Z) {
    HodgeSplit split = hodge_decompose(flat(z), hopt);
    g.hams.push_back(std::move(split.potential));
    g.harms.push_back(std::move(split.harmonic));
  }
  return g;
}

/// t -> phi_{t+s} o phi_s^{-1} on [0, t_end - s]; s must be a sample time.
inline Isotopy time_shift(const Isotopy& phi, double s, const NumericOptions& opt = {}) {
  const double ks_real = s / phi.dt;
  const long ks = std::lround(ks_real);
  require(s >= 0.0 && std::abs(ks_real - static_cast<double>(ks)) <= 1e-9 && ks < static_cast<long>(phi.samples()) - 1,
          ErrorCode::OffGrid, "shift must be a sample time in [0, t_end)");
  if (ks == 0) return phi;
  const auto inv = phi.inverse_maps(opt);
  const VectorFieldGrid& Es = (*inv)[ks];
  Isotopy out;
  out.grid = phi.grid;
  out.dt = phi.dt;
  for (std::size_t k = static_cast<std::size_t>(ks); k < phi.samples(); ++k)
    out.maps.push_back(detail::compose_displacements(phi.maps[k], Es, opt.interp_order));
  // The shifted path starts at the identity; clear interpolation round-off.
  out.maps.front() = VectorFieldGrid(phi.grid);
  out.velocities = detail::fd_velocities(out.maps, out.dt);
  return out;
}

/// Index-shifted generator V_t = U_{t+s}, K_t = H_{t+s}.
inline Generator shift_generator(const Generator& g, double s) {
  const double ks_real = s / g.dt;
  const long ks = std::lround(ks_real);
  require(s >= 0.0 && std::abs(ks_real - static_cast<double>(ks)) <= 1e-9 && ks < static_cast<long>(g.samples()) - 1,
          ErrorCode::OffGrid, "shift must be a sample time in [0, t_end)");
  Generator out;
  out.grid = g.grid;
  out.dt = g.dt;
  out.hams.assign(g.hams.begin() + ks, g.hams.end());
  out.harms.assign(g.harms.begin() + ks, g.harms.end());
  return out;
}

struct PathDistanceReport {
  double d_c0_forward = 0.0;  // d_C0 of the final slices
  double d_c0_inverse = 0.0;  // d_C0 of their inverses
  double d0 = 0.0;            // max of the two
  double dbar = 0.0;          // max over t of the per-slice d0
};

inline PathDistanceReport path_distance(const Isotopy& phi, const Isotopy& psi, const NumericOptions& opt = {}) {
  require_same_discretization(phi, psi, "path_distance");
  const auto ia = phi.inverse_maps(opt);
  const auto ib = psi.inverse_maps(opt);
  PathDistanceReport r;
  for (std::size_t k = 0; k < phi.samples(); ++k) {
    const double f = detail::slice_distance(phi.maps[k], psi.maps[k]);
    const double i = detail::slice_distance((*ia)[k], (*ib)[k]);
    r.dbar = std::max(r.dbar, std::max(f, i));
    if (k + 1 == phi.samples()) {
      r.d_c0_forward = f;
      r.d_c0_inverse = i;
      r.d0 = std::max(f, i);
    }
  }
  return r;
}

/// d_C0 of a single slice against the identity.
inline double c0_to_identity(const VectorFieldGrid& D) { return detail::slice_distance(D, VectorFieldGrid(D.grid())); }

struct GroupCheckReport {
  double group_defect = 0.0;     // max d0(phi_{t+s}, phi_t o phi_s)
  double autonomy_defect = 0.0;  // max_t vf_norm(U_t - U_0, H_t - H_0)
  std::size_t pairs = 0;
};

/// One-parameter-group test over sample pairs (i, j), i + j <= M, taken every
/// `stride` samples.
inline GroupCheckReport one_param_group_check(const Isotopy& phi, std::size_t stride = 1, const NumericOptions& opt = {}) {
  require(stride >= 1, ErrorCode::InvalidArgument, "stride must be positive");
  const auto inv = phi.inverse_maps(opt);
  const std::size_t M = phi.steps();
  GroupCheckReport r;
  for (std::size_t i = stride; i <= M; i += stride) {
    for (std::size_t j = stride; i + j <= M; j += stride) {
      const VectorFieldGrid fwd = detail::compose_displacements(phi.maps[i], phi.maps[j], opt.interp_order);
      const VectorFieldGrid bwd = detail::compose_displacements((*inv)[j], (*inv)[i], opt.interp_order);
      const double d = std::max(detail::slice_distance(fwd, phi.maps[i + j]),
                                detail::slice_distance(bwd, (*inv)[i + j]));
      r.group_defect = std::max(r.group_defect, d);
      ++r.pairs;
    }
  }
  const Generator g = generator_of(phi, opt);
  for (std::size_t k = 0; k < g.samples(); ++k)
    r.autonomy_defect = std::max(r.autonomy_defect, vf_norm(g.hams[k] - g.hams[0], g.harms[k] - g.harms[0]));
  return r;
}

/// max over slices and grid points of |det(I + grad D) - 1|.
inline double volume_defect(const Isotopy& phi) {
  const Grid& g = phi.grid;
  const int dim = g.dim();
  double worst = 0.0;
  std::vector<double> J(dim * dim);
  for (const auto& D : phi.maps) {
    const auto grads = detail::displacement_gradient(D);
    for (std::size_t p = 0; p < g.size(); ++p) {
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) J[a * dim + b] = (a == b ? 1.0 : 0.0) + grads[a * dim + b][p];
      // Gaussian elimination with partial pivoting.
      double det = 1.0;
      for (int c = 0; c < dim; ++c) {
        int piv = c;
        for (int r = c + 1; r < dim; ++r)
          if (std::abs(J[r * dim + c]) > std::abs(J[piv * dim + c])) piv = r;
        if (J[piv * dim + c] == 0.0) {
          det = 0.0;
          break;
        }
        if (piv != c) {
          for (int q = 0; q < dim; ++q) std::swap(J[c * dim + q], J[piv * dim + q]);
          det = -det;
        }
        det *= J[c * dim + c];
        for (int r = c + 1; r < dim; ++r) {
          const double f = J[r * dim + c] / J[c * dim + c];
          for (int q = c; q < dim; ++q) J[r * dim + q] -= f * J[c * dim + q];
        }
      }
      worst = std::max(worst, std::abs(det - 1.0));
    }
  }
  return worst;
}

}  // namespace symtorus
