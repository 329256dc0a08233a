#pragma once

// Analytic generator families: translations (rotations of the torus) and
// random band-limited generators for property checks.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "symtorus/generator.hpp"

namespace symtorus {

/// One Fourier term  amp * (1 + drift * t) * cos(2 pi k.x + phase).
struct FourierTerm {
  std::vector<int> k;
  double amp = 0.0;
  double drift = 0.0;
  double phase = 0.0;

  double operator()(double t, std::span<const double> x) const {
    double arg = phase;
    for (std::size_t i = 0; i < k.size(); ++i) arg += 2.0 * std::numbers::pi * k[i] * x[i];
    return amp * (1.0 + drift * t) * std::cos(arg);
  }
};

/// Harmonic family H_t = base + slope * t + wave * sin(2 pi t).
struct HarmonicPath {
  HarmonicForm base;
  HarmonicForm slope;
  HarmonicForm wave;

  HarmonicForm operator()(double t) const {
    HarmonicForm h = base;
    if (!slope.lambda.empty()) h += t * slope;
    if (!wave.lambda.empty()) h += std::sin(2.0 * std::numbers::pi * t) * wave;
    return h;
  }
};

struct AnalyticGenerator {
  std::vector<FourierTerm> terms;
  HarmonicPath harmonic;

  Generator sample(const Grid& g, std::size_t steps, double t_end = 1.0) const {
    return Generator::sample(
        g, steps,
        [&](double t, std::span<const double> x) {
          double v = 0.0;
          for (const auto& term : terms) v += term(t, x);
          return v;
        },
        [&](double t) {
          if (harmonic.base.lambda.empty()) return HarmonicForm::zero(g.n);
          return harmonic(t);
        },
        t_end);
  }
};

struct RandomGeneratorSpec {
  int max_mode = 1;
  int terms = 3;
  double ham_amplitude = 0.02;
  double harm_amplitude = 0.2;
  bool time_dependent = true;
  bool hamiltonian_only = false;
};

inline AnalyticGenerator random_analytic_generator(int n, std::mt19937_64& rng, const RandomGeneratorSpec& spec = {}) {
  std::uniform_int_distribution<int> mode(-spec.max_mode, spec.max_mode);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  AnalyticGenerator out;
  for (int t = 0; t < spec.terms; ++t) {
    FourierTerm term;
    do {
      term.k.assign(2 * n, 0);
      for (auto& ki : term.k) ki = mode(rng);
    } while (std::all_of(term.k.begin(), term.k.end(), [](int v) { return v == 0; }));
    term.amp = spec.ham_amplitude * unit(rng);
    term.drift = spec.time_dependent ? unit(rng) : 0.0;
    term.phase = angle(rng);
    out.terms.push_back(std::move(term));
  }
  out.harmonic.base = HarmonicForm::zero(n);
  out.harmonic.slope = HarmonicForm::zero(n);
  out.harmonic.wave = HarmonicForm::zero(n);
  if (!spec.hamiltonian_only) {
    for (auto& v : out.harmonic.base.lambda) v = spec.harm_amplitude * unit(rng);
    if (spec.time_dependent)
      for (auto& v : out.harmonic.slope.lambda) v = 0.5 * spec.harm_amplitude * unit(rng);
  }
  return out;
}

inline Generator random_band_limited(const Grid& g, std::size_t steps, std::mt19937_64& rng,
                                     const RandomGeneratorSpec& spec = {}) {
  return random_analytic_generator(g.n, rng, spec).sample(g, steps);
}

/// Harmonic form sum_i a_i dtheta_{i+n} - b_i dtheta_i generating the
/// translation by v = (a_1..a_n, b_1..b_n).
inline HarmonicForm rotation_form(std::span<const double> v) { return flat(v); }

}  // namespace symtorus
