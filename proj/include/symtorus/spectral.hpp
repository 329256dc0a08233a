#pragma once

// Fourier machinery on the periodic grid (FFTW real-to-complex transforms).
// Plans are created once per (rank, N) under a lock and executed with the
// new-array interface, which FFTW guarantees to be thread safe.

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "symtorus/torus.hpp"

namespace symtorus::spectral {

namespace detail {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

inline const PlanPair& plans_for(const Grid& g) {
  static std::map<std::pair<int, int>, PlanPair> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto key = std::make_pair(g.dim(), g.N);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<int> dims(g.dim(), g.N);
  const std::size_t real_size = g.size();
  const std::size_t complex_size = real_size / g.N * (g.N / 2 + 1);
  double* r = fftw_alloc_real(real_size);
  fftw_complex* c = fftw_alloc_complex(complex_size);
  PlanPair p;
  p.forward = fftw_plan_dft_r2c(g.dim(), dims.data(), r, c, FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_c2r(g.dim(), dims.data(), c, r, FFTW_ESTIMATE);
  fftw_free(r);
  fftw_free(c);
  return cache.emplace(key, p).first->second;
}

struct RealBuf {
  double* p;
  explicit RealBuf(std::size_t n) : p(fftw_alloc_real(n)) {}
  ~RealBuf() { fftw_free(p); }
  RealBuf(const RealBuf&) = delete;
  RealBuf& operator=(const RealBuf&) = delete;
};

struct ComplexBuf {
  fftw_complex* p;
  explicit ComplexBuf(std::size_t n) : p(fftw_alloc_complex(n)) {}
  ~ComplexBuf() { fftw_free(p); }
  ComplexBuf(const ComplexBuf&) = delete;
  ComplexBuf& operator=(const ComplexBuf&) = delete;
};

}  // namespace detail

/// Half-spectrum of a real grid field (last axis truncated to N/2 + 1).
class Spectrum {
 public:
  explicit Spectrum(const Grid& g) : grid_(g), coeffs_(complex_size(g)) {}

  static std::size_t complex_size(const Grid& g) { return g.size() / g.N * (g.N / 2 + 1); }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }
  std::complex<double>& operator[](std::size_t i) { return coeffs_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return coeffs_[i]; }

  /// Signed integer wavenumber of spectral index `flat` along `axis`.
  int wavenumber(std::size_t flat, int axis) const {
    const int N = grid_.N;
    const int half = N / 2 + 1;
    const int last = grid_.dim() - 1;
    if (axis == last) return static_cast<int>(flat % half);
    std::size_t stride = half;
    for (int a = last - 1; a > axis; --a) stride *= N;
    const int k = static_cast<int>((flat / stride) % N);
    return k <= N / 2 ? k : k - N;
  }

  /// Wavenumber used for first derivatives: the Nyquist mode is dropped.
  int derivative_wavenumber(std::size_t flat, int axis) const {
    const int k = wavenumber(flat, axis);
    return (2 * std::abs(k) == grid_.N) ? 0 : k;
  }

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

inline Spectrum forward(const ScalarField& f) {
  const Grid& g = f.grid;
  const auto& plans = detail::plans_for(g);
  Spectrum s(g);
  detail::RealBuf in(g.size());
  detail::ComplexBuf out(s.size());
  std::copy(f.values.begin(), f.values.end(), in.p);
  fftw_execute_dft_r2c(plans.forward, in.p, out.p);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::complex<double>(out.p[i][0], out.p[i][1]) * scale;
  return s;
}

inline ScalarField backward(const Spectrum& s) {
  const Grid& g = s.grid();
  const auto& plans = detail::plans_for(g);
  detail::ComplexBuf in(s.size());
  detail::RealBuf out(g.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    in.p[i][0] = s[i].real();
    in.p[i][1] = s[i].imag();
  }
  fftw_execute_dft_c2r(plans.backward, in.p, out.p);
  ScalarField f(g);
  std::copy(out.p, out.p + g.size(), f.values.begin());
  return f;
}

inline Spectrum derivative(const Spectrum& s, int axis) {
  Spectrum d(s.grid());
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int k = s.derivative_wavenumber(i, axis);
    d[i] = s[i] * std::complex<double>(0.0, two_pi * k);
  }
  return d;
}

inline ScalarField derivative(const ScalarField& f, int axis) { return backward(derivative(forward(f), axis)); }

/// Spectral gradient (components of dF).
inline OneFormField gradient(const ScalarField& f) {
  Spectrum s = forward(f);
  OneFormField df(f.grid);
  for (int a = 0; a < f.grid.dim(); ++a) df[a] = backward(derivative(s, a));
  return df;
}

/// Least-squares inverse of the spectral gradient: the zero-mean U minimizing
/// |dU - alpha| in L2, i.e. the solution of Laplace(U) = div(alpha) with the
/// zero mode pinned to 0.
inline ScalarField inverse_gradient(const OneFormField& alpha) {
  alpha.check();
  const Grid& g = alpha.grid();
  std::vector<Spectrum> comps;
  comps.reserve(g.dim());
  for (int a = 0; a < g.dim(); ++a) comps.push_back(forward(alpha[a]));
  Spectrum u(g);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::complex<double> num(0.0, 0.0);
    double den = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double k = two_pi * comps[a].derivative_wavenumber(i, a);
      num += std::complex<double>(0.0, -k) * comps[a][i];
      den += k * k;
    }
    u[i] = den > 0.0 ? num / den : std::complex<double>(0.0, 0.0);
  }
  return backward(u);
}

/// Sup norm over the grid and over pairs i<j of d_i alpha_j - d_j alpha_i.
inline double curl_sup(const OneFormField& alpha) {
  alpha.check();
  const Grid& g = alpha.grid();
  std::vector<Spectrum> comps;
  comps.reserve(g.dim());
  for (int a = 0; a < g.dim(); ++a) comps.push_back(forward(alpha[a]));
  double worst = 0.0;
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i + 1; j < g.dim(); ++j) {
      Spectrum c = derivative(comps[j], i);
      Spectrum d = derivative(comps[i], j);
      for (std::size_t q = 0; q < c.size(); ++q) c[q] -= d[q];
      worst = std::max(worst, backward(c).sup_norm());
    }
  }
  return worst;
}

}  // namespace symtorus::spectral
