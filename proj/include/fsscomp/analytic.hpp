#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "cascade.hpp"
#include "core_state.hpp"

namespace fsscomp {

/// HH–VV coherence factor after phase averaging; |c| ≤ 1, c = 1 for perfect
/// compensation. Equals E[e^{iΦ}] over the emission-time distributions,
/// i.e. twice the ρ(VV,HH) density-matrix element.
struct Coherence {
  cplx c;
};

/// Closed-form average of e^{iΦ} with Φ = d_omega2·t1 + d_omega1·t2 + const,
/// t1 ~ Exp(tau_xx), t2 ~ Exp(tau_x): each exponential contributes a factor
/// E[e^{iωt}] = 1/(1 − iωτ).
inline Coherence analytic_coherence(double d_omega1, double d_omega2,
                                    double const_phase, const CascadeParams& p) {
  p.check();
  const cplx one{1.0, 0.0};
  const cplx f1 = one / (one - cplx{0.0, 1.0} * d_omega2 * p.tau_xx);
  const cplx f2 = one / (one - cplx{0.0, 1.0} * d_omega1 * p.tau_x);
  return {std::polar(1.0, const_phase) * f1 * f2};
}

/// Averaged two-photon density matrix for the given mismatches: an X-state
/// with 1/2 on the HH and VV diagonal and the coherence on the anti-diagonal.
inline DensityMatrix analytic_density(double d_omega1, double d_omega2,
                                      double const_phase, const CascadeParams& p) {
  const cplx c = analytic_coherence(d_omega1, d_omega2, const_phase, p).c;
  DensityMatrix rho;
  rho.m(0, 0) = 0.5;
  rho.m(3, 3) = 0.5;
  rho.m(0, 3) = 0.5 * std::conj(c);
  rho.m(3, 0) = 0.5 * c;
  return rho;
}

/// Time-gating baseline: coherence and acceptance fraction when only pairs
/// with exciton delay below t_gate are kept. The conditional expectation of
/// e^{iωt} given t < t_gate tends to the ungated Lorentzian as t_gate → ∞.
inline std::pair<cplx, double> gated_coherence(double t_gate, double omega,
                                               double tau) {
  if (!(t_gate > 0.0)) throw std::invalid_argument("gated_coherence: t_gate must be > 0");
  if (!(tau > 0.0)) throw std::invalid_argument("gated_coherence: tau must be > 0");
  const double acceptance = 1.0 - std::exp(-t_gate / tau);
  const cplx s = cplx{1.0 / tau, -omega};  // decay rate of e^{iωt}·e^{−t/τ}
  const cplx numer = 1.0 - std::exp(-s * t_gate);
  const cplx c = numer / (cplx{1.0, -omega * tau} * acceptance);
  return {c, acceptance};
}

}  // namespace fsscomp
