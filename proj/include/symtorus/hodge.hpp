#pragma once

// Hodge splitting of closed 1-form fields on the flat torus.
//
// On (T^{2n}, g0) harmonic 1-forms are exactly the constant-coefficient
// forms, so the harmonic part of a closed alpha is its per-component mean
// and the exact part dU is recovered by inverting the spectral gradient
// (periodic Poisson solve with the zero mode pinned to 0).

#include "symtorus/spectral.hpp"
#include "symtorus/torus.hpp"

namespace symtorus {

struct HodgeSplit {
  ScalarField potential;  // U, zero grid mean
  HarmonicForm harmonic;  // H
  double residual = 0.0;  // sup |alpha - dU - H|
  double curl = 0.0;      // sup |d_i alpha_j - d_j alpha_i| of the input
};

struct HodgeOptions {
  double closed_tol = 1e-6;
  bool check_closed = true;
};

inline OneFormField exterior_d(const ScalarField& f) { return spectral::gradient(f); }

inline HodgeSplit hodge_decompose(const OneFormField& alpha, const HodgeOptions& opt = {}) {
  alpha.check();
  const Grid& g = alpha.grid();
  HodgeSplit out;
  out.curl = g.dim() > 1 ? spectral::curl_sup(alpha) : 0.0;
  if (opt.check_closed && out.curl > opt.closed_tol)
    throw Error(ErrorCode::NotClosed, "curl sup-norm " + std::to_string(out.curl) + " exceeds tolerance " +
                                          std::to_string(opt.closed_tol));

  out.harmonic = HarmonicForm::zero(g.n);
  for (int a = 0; a < g.dim(); ++a) out.harmonic.lambda[a] = alpha[a].mean();

  out.potential = normalize(spectral::inverse_gradient(alpha));

  OneFormField rebuilt = exterior_d(out.potential);
  double worst = 0.0;
  for (int a = 0; a < g.dim(); ++a)
    for (std::size_t p = 0; p < g.size(); ++p)
      worst = std::max(worst, std::abs(alpha[a][p] - rebuilt[a][p] - out.harmonic.lambda[a]));
  out.residual = worst;
  return out;
}

}  // namespace symtorus
