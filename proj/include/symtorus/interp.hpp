#pragma once

// Periodic tensor-product Lagrange interpolation of grid fields at arbitrary
// (lifted) points of the torus. Order p (odd) uses p+1 nodes per axis
// centred on the cell containing the point; p = 1 is multilinear.

#include <cmath>
#include <span>
#include <vector>

#include "symtorus/torus.hpp"

namespace symtorus {

class Interpolator {
 public:
  static constexpr int kMaxOrder = 9;

  struct Stencil {
    std::vector<std::size_t> index;
    std::vector<double> weight;
  };

  Interpolator(const Grid& g, int order) : grid_(g), order_(order) {
    require(order >= 1 && order <= kMaxOrder && order % 2 == 1, ErrorCode::InvalidArgument,
            "interpolation order must be odd and at most 9");
    require(g.N > order, ErrorCode::InvalidArgument, "grid too coarse for interpolation order");
    const int np = order + 1;
    offsets_.resize(np);
    for (int j = 0; j < np; ++j) offsets_[j] = j - (order - 1) / 2;
    denom_.resize(np);
    for (int j = 0; j < np; ++j) {
      double d = 1.0;
      for (int k = 0; k < np; ++k)
        if (k != j) d *= static_cast<double>(offsets_[j] - offsets_[k]);
      denom_[j] = d;
    }
    strides_.resize(g.dim());
    for (int a = 0; a < g.dim(); ++a) strides_[a] = g.stride(a);
  }

  const Grid& grid() const { return grid_; }
  int order() const { return order_; }

  void stencil(std::span<const double> x, Stencil& s) const {
    const int np = order_ + 1;
    const int N = grid_.N;
    s.index.assign(1, 0);
    s.weight.assign(1, 1.0);
    double w_axis[kMaxOrder + 1];
    std::size_t i_axis[kMaxOrder + 1];
    for (int a = 0; a < grid_.dim(); ++a) {
      const double u = x[a] * N;
      const double fl = std::floor(u);
      const double frac = u - fl;
      long base = static_cast<long>(fl) % N;
      if (base < 0) base += N;
      for (int j = 0; j < np; ++j) {
        double num = 1.0;
        for (int k = 0; k < np; ++k)
          if (k != j) num *= frac - offsets_[k];
        w_axis[j] = num / denom_[j];
        long idx = (base + offsets_[j]) % N;
        if (idx < 0) idx += N;
        i_axis[j] = static_cast<std::size_t>(idx) * strides_[a];
      }
      const std::size_t old = s.index.size();
      s.index.resize(old * np);
      s.weight.resize(old * np);
      for (std::size_t e = old; e-- > 0;) {
        const std::size_t bi = s.index[e];
        const double bw = s.weight[e];
        for (int j = 0; j < np; ++j) {
          s.index[e * np + j] = bi + i_axis[j];
          s.weight[e * np + j] = bw * w_axis[j];
        }
      }
    }
  }

  static double apply(const Stencil& s, const ScalarField& f) {
    double v = 0.0;
    for (std::size_t e = 0; e < s.index.size(); ++e) v += s.weight[e] * f.values[s.index[e]];
    return v;
  }

  double operator()(const ScalarField& f, std::span<const double> x) const {
    Stencil s;
    stencil(x, s);
    return apply(s, f);
  }

 private:
  Grid grid_;
  int order_;
  std::vector<int> offsets_;
  std::vector<double> denom_;
  std::vector<std::size_t> strides_;
};

/// f(x + shift(x)) sampled back on the grid: composition of a grid function
/// with a map given by its lifted displacement field.
inline ScalarField compose_with_map(const ScalarField& f, const VectorFieldGrid& displacement, int order) {
  const Grid& g = f.grid;
  require_same_grid(g, displacement.grid(), "compose_with_map");
  Interpolator interp(g, order);
  Interpolator::Stencil st;
  ScalarField out(g);
  std::vector<double> x(g.dim());
  for (std::size_t p = 0; p < g.size(); ++p) {
    g.point(p, x);
    for (int a = 0; a < g.dim(); ++a) x[a] += displacement[a][p];
    interp.stencil(x, st);
    out[p] = Interpolator::apply(st, f);
  }
  return out;
}

}  // namespace symtorus
