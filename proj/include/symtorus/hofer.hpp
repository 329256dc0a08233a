#pragma once

// Hofer-like lengths of generators, upper bounds on the induced norms over
// explicit candidate families, displacement tests and displacement-energy
// upper bounds.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "symtorus/group.hpp"

namespace symtorus {

enum class LengthVersion { Linf, L1inf };

inline const char* to_string(LengthVersion v) { return v == LengthVersion::Linf ? "linf" : "l1inf"; }

/// max_t (osc(U_t) + |H_t|).
inline double length_linf(const Generator& g) { return linf_family_norm(g); }

/// Trapezoid rule for int (osc(U_t) + |H_t|) dt.
inline double length_l1inf(const Generator& g) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < g.samples(); ++k)
    s += 0.5 * g.dt * (vf_norm(g.hams[k], g.harms[k]) + vf_norm(g.hams[k + 1], g.harms[k + 1]));
  return s;
}

inline double length(const Generator& g, LengthVersion v) {
  return v == LengthVersion::Linf ? length_linf(g) : length_l1inf(g);
}

/// Mean of the lengths of g and of its group inverse.
inline double length_symmetric(const Generator& g, const Generator& g_inv, LengthVersion v) {
  return 0.5 * (length(g, v) + length(g_inv, v));
}

inline double length_symmetric(const Generator& g, LengthVersion v = LengthVersion::Linf,
                               const NumericOptions& opt = {}) {
  return length_symmetric(g, group_inverse(g, opt), v);
}

struct LengthReport {
  double l_inf = 0.0;
  double l_1inf = 0.0;
  double l_sym_inf = 0.0;
  double l_sym_1inf = 0.0;
};

inline LengthReport length_report(const Generator& g, const Generator& g_inv) {
  LengthReport r;
  r.l_inf = length_linf(g);
  r.l_1inf = length_l1inf(g);
  r.l_sym_inf = 0.5 * (r.l_inf + length_linf(g_inv));
  r.l_sym_1inf = 0.5 * (r.l_1inf + length_l1inf(g_inv));
  return r;
}

inline LengthReport length_report(const Generator& g, const NumericOptions& opt = {}) {
  return length_report(g, group_inverse(g, opt));
}

// ---------------------------------------------------------------------------
// Norm upper bounds.

struct CandidateEntry {
  std::size_t index = 0;
  bool accepted = false;
  double endpoint_distance = 0.0;  // d_C0 between time-one maps
  double length = std::numeric_limits<double>::infinity();
};

struct NormUpperReport {
  double bound = std::numeric_limits<double>::infinity();  // an upper bound, never the infimum
  std::size_t best = 0;
  std::vector<CandidateEntry> entries;
};

/// Minimum symmetric length over the candidates whose time-one map matches
/// `target` (a time-one displacement field) within `endpoint_tol`.
inline NormUpperReport norm_upper(const VectorFieldGrid& target, const GeneratorSeq& candidates,
                                  LengthVersion version = LengthVersion::Linf, double endpoint_tol = 1e-3,
                                  const NumericOptions& opt = {}) {
  NormUpperReport r;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    CandidateEntry e;
    e.index = i;
    const Isotopy phi = integrate(candidates[i], opt);
    e.endpoint_distance = detail::c0_distance(phi.maps.back(), target, opt);
    if (e.endpoint_distance <= endpoint_tol) {
      e.accepted = true;
      e.length = length_symmetric(candidates[i], group_inverse(candidates[i], phi, opt), version);
      if (e.length < r.bound) {
        r.bound = e.length;
        r.best = i;
      }
    }
    r.entries.push_back(e);
  }
  if (!std::isfinite(r.bound))
    throw Error(ErrorCode::NoValidCandidate, "no candidate reaches the target time-one map");
  return r;
}

inline NormUpperReport norm_upper(const Generator& target, const GeneratorSeq& candidates,
                                  LengthVersion version = LengthVersion::Linf, double endpoint_tol = 1e-3,
                                  const NumericOptions& opt = {}) {
  return norm_upper(integrate(target, opt).maps.back(), candidates, version, endpoint_tol, opt);
}

/// Lengths of every candidate in both versions, for comparing the l^inf and
/// l^(1,inf) bounds over the same family. Reported as data only.
struct VersionComparison {
  std::vector<LengthReport> rows;
  double min_sym_inf = std::numeric_limits<double>::infinity();
  double min_sym_1inf = std::numeric_limits<double>::infinity();
};

inline VersionComparison compare_versions(const GeneratorSeq& candidates, const NumericOptions& opt = {}) {
  VersionComparison c;
  for (const auto& g : candidates) {
    LengthReport r = length_report(g, opt);
    c.min_sym_inf = std::min(c.min_sym_inf, r.l_sym_inf);
    c.min_sym_1inf = std::min(c.min_sym_1inf, r.l_sym_1inf);
    c.rows.push_back(r);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Regions and displacement.

struct Region {
  enum class Kind { Strip, Ball, Mask };
  Kind kind = Kind::Strip;
  double nu = 0.0;              // strip {0 <= theta_1 < nu}
  std::vector<double> center;   // ball
  double radius = 0.0;
  std::vector<char> mask;       // grid mask, one entry per grid point
  Grid mask_grid;

  static Region strip(double nu) {
    require(nu > 0.0 && nu < 1.0, ErrorCode::InvalidArgument, "strip width must lie in (0, 1)");
    Region r;
    r.kind = Kind::Strip;
    r.nu = nu;
    return r;
  }

  static Region ball(std::vector<double> center, double radius) {
    require(radius > 0.0, ErrorCode::InvalidArgument, "ball radius must be positive");
    Region r;
    r.kind = Kind::Ball;
    r.center = std::move(center);
    r.radius = radius;
    return r;
  }

  static Region from_mask(const Grid& g, std::vector<char> mask) {
    require(mask.size() == g.size(), ErrorCode::DimensionMismatch, "mask size differs from grid");
    Region r;
    r.kind = Kind::Mask;
    r.mask_grid = g;
    r.mask = std::move(mask);
    return r;
  }

  /// The whole torus as a mask.
  static Region whole(const Grid& g) { return from_mask(g, std::vector<char>(g.size(), 1)); }

  bool contains_grid_point(const Grid& g, std::size_t p) const {
    std::vector<double> x(g.dim());
    g.point(p, x);
    switch (kind) {
      case Kind::Strip: return x[0] < nu;
      case Kind::Ball: return toroidal_distance(x, center) < radius;
      case Kind::Mask:
        require_same_grid(g, mask_grid, "region mask");
        return mask[p] != 0;
    }
    return false;
  }

  std::vector<std::size_t> grid_points(const Grid& g) const {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < g.size(); ++p)
      if (contains_grid_point(g, p)) out.push_back(p);
    return out;
  }

  /// Distance from the torus point y to the closure of the region.
  double clearance(const Grid& g, std::span<const double> y) const {
    switch (kind) {
      case Kind::Strip: {
        const double u = wrap01(y[0]);
        if (u <= nu) return 0.0;
        return std::min(u - nu, 1.0 - u);
      }
      case Kind::Ball: return std::max(0.0, toroidal_distance(y, center) - radius);
      case Kind::Mask: {
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> x(g.dim());
        for (std::size_t p = 0; p < g.size(); ++p) {
          if (!mask[p]) continue;
          g.point(p, x);
          best = std::min(best, toroidal_distance(x, y));
        }
        return best;
      }
    }
    return 0.0;
  }

  std::string describe() const {
    switch (kind) {
      case Kind::Strip: return "strip(nu=" + std::to_string(nu) + ")";
      case Kind::Ball: return "ball(r=" + std::to_string(radius) + ")";
      case Kind::Mask: return "mask";
    }
    return "region";
  }
};

struct DisplacementResult {
  bool displaced = false;
  double margin = 0.0;       // min clearance of the image of the region grid points
  double guard = 0.0;        // required clearance (one grid cell)
  std::size_t points = 0;    // region grid points tested
};

/// phi(A) and A are disjoint when every image of a region grid point keeps at
/// least one grid cell of clearance from A.
inline DisplacementResult displacement_test(const VectorFieldGrid& map, const Region& region) {
  const Grid& g = map.grid();
  const auto pts = region.grid_points(g);
  require(!pts.empty(), ErrorCode::InvalidArgument, "region has no grid points");
  DisplacementResult r;
  r.guard = g.spacing();
  r.points = pts.size();
  r.margin = std::numeric_limits<double>::infinity();
  std::vector<double> y(g.dim());
  for (std::size_t p : pts) {
    g.point(p, y);
    for (int a = 0; a < g.dim(); ++a) y[a] += map[a][p];
    r.margin = std::min(r.margin, region.clearance(g, y));
  }
  // Relative slack absorbs round-off in integrated displacements.
  r.displaced = r.margin >= r.guard * (1.0 - 1e-9);
  return r;
}

struct EnergyCandidate {
  std::string label;
  Generator generator;
};

struct EnergyEntry {
  std::string label;
  bool displaces = false;
  double margin = 0.0;
  double length = std::numeric_limits<double>::infinity();
};

struct EnergyCertificate {
  std::string region;
  double bound = std::numeric_limits<double>::infinity();  // upper bound on the displacement energy
  std::string best;
  double margin = 0.0;
  std::vector<EnergyEntry> entries;
};

/// Minimum symmetric length over the candidates that displace `region`.
inline EnergyCertificate displacement_energy_upper(const Region& region, const std::vector<EnergyCandidate>& candidates,
                                                   LengthVersion version = LengthVersion::Linf,
                                                   const NumericOptions& opt = {}) {
  EnergyCertificate c;
  c.region = region.describe();
  for (const auto& cand : candidates) {
    EnergyEntry e;
    e.label = cand.label;
    const Isotopy phi = integrate(cand.generator, opt);
    const DisplacementResult d = displacement_test(phi.maps.back(), region);
    e.displaces = d.displaced;
    e.margin = d.margin;
    if (d.displaced) {
      e.length = length_symmetric(cand.generator, group_inverse(cand.generator, phi, opt), version);
      if (e.length < c.bound) {
        c.bound = e.length;
        c.best = cand.label;
        c.margin = d.margin;
      }
    }
    c.entries.push_back(std::move(e));
  }
  if (!std::isfinite(c.bound)) throw Error(ErrorCode::NoDisplacer, "no candidate displaces " + c.region);
  return c;
}

/// Constant translations by amplitude * e_axis for each amplitude, with at
/// least `steps` time steps and no step longer than a quarter turn.
inline std::vector<EnergyCandidate> rotation_candidates(const Grid& g, int axis, const std::vector<double>& amplitudes,
                                                        std::size_t steps = 1) {
  require(axis >= 0 && axis < g.dim(), ErrorCode::InvalidArgument, "rotation axis out of range");
  std::vector<EnergyCandidate> out;
  for (double a : amplitudes) {
    std::vector<double> v(g.dim(), 0.0);
    v[axis] = a;
    const HarmonicForm h = flat(v);
    EnergyCandidate c;
    c.label = "rotation(" + std::to_string(a) + ")";
    const auto min_steps = static_cast<std::size_t>(std::ceil(std::abs(a) / 0.25));
    c.generator = Generator::sample(
        g, std::max(steps, min_steps), [](double, std::span<const double>) { return 0.0; }, [&](double) { return h; });
    out.push_back(std::move(c));
  }
  return out;
}

/// Amplitudes k * step for k = 1, 2, ... up to `max_amp`.
inline std::vector<double> amplitude_ladder(double step, double max_amp) {
  require(step > 0.0 && max_amp > 0.0, ErrorCode::InvalidArgument, "ladder step and range must be positive");
  std::vector<double> out;
  for (long k = 1;; ++k) {
    const double a = static_cast<double>(k) * step;
    if (a > max_amp * (1.0 + 1e-12)) break;
    out.push_back(a);
  }
  return out;
}

}  // namespace symtorus
