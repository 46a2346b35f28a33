#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "cascade.hpp"
#include "core_state.hpp"

namespace fsscomp {

/// Linear differential phase-ramp parameters: one slope and one constant
/// phase per (polarization, photon) pair, plus propagation and ramp-start
/// times per branch.
struct RampParams {
  double k_vxx = 0.0, k_hxx = 0.0;  // rad/ns, biexciton branch
  double k_vx = 0.0, k_hx = 0.0;    // rad/ns, exciton branch
  double phi0_vxx = 0.0, phi0_hxx = 0.0, phi0_vx = 0.0, phi0_hx = 0.0;  // rad
  double t_prop_xx = 0.0, t_prop_x = 0.0;    // ns
  double t_start_xx = 0.0, t_start_x = 0.0;  // ns
};

/// Ramp errors: d_omega1 multiplies t2, d_omega2 multiplies t1, delta_t is
/// the branch timing offset (t_prop_xx−t_start_xx) − (t_prop_x−t_start_x).
struct MismatchSpec {
  double d_omega1 = 0.0;  // rad/ns
  double d_omega2 = 0.0;  // rad/ns
  double delta_t = 0.0;   // ns
};

/// Total HH–VV phase after the ramps, collected over both branches:
///   Φ = (ΔK_xx + ΔK_x)·t1 + (ΔK_x + FSS/ħ)·t2 + constant terms,
/// with ΔK = k_v − k_h per branch.
inline double total_phase(const RampParams& r, const CascadeParams& p,
                          const EmissionEvent& e) {
  const double dk_xx = r.k_vxx - r.k_hxx;
  const double dk_x = r.k_vx - r.k_hx;
  return (dk_xx + dk_x) * e.t1 + (dk_x + precession_rate(p)) * e.t2 +
         dk_xx * (r.t_prop_xx - r.t_start_xx) +
         dk_x * (r.t_prop_x - r.t_start_x) +
         (r.phi0_vxx - r.phi0_hxx + r.phi0_vx - r.phi0_hx);
}

inline TwoPhotonKet compensated_pair_state(const RampParams& r,
                                           const CascadeParams& p,
                                           const EmissionEvent& e) {
  return ket_from_phase(total_phase(r, p, e));
}

/// Ramp that cancels both random-time coefficients:
/// k_vx − k_hx = −FSS/ħ and k_vxx − k_hxx = +FSS/ħ.
inline RampParams ideal_ramp(const CascadeParams& p, double k_hx, double k_hxx) {
  RampParams r;
  r.k_hx = k_hx;
  r.k_vx = k_hx - precession_rate(p);
  r.k_hxx = k_hxx;
  r.k_vxx = k_hxx + precession_rate(p);
  return r;
}

/// Mismatch convention: d_omega1 ≡ (k_vx − k_hx) + FSS/ħ and
/// d_omega2 ≡ (k_vxx − k_hxx) + (k_vx − k_hx), i.e. exactly the coefficients
/// of t2 and t1 in total_phase, so (0,0) means perfect compensation.
inline std::pair<double, double> mismatch_of(const RampParams& r,
                                             const CascadeParams& p) {
  const double d1 = (r.k_vx - r.k_hx) + precession_rate(p);
  const double d2 = (r.k_vxx - r.k_hxx) + (r.k_vx - r.k_hx);
  return {d1, d2};
}

/// Inverse of mismatch_of with the H slopes pinned to zero. delta_t is
/// realized on the biexciton branch only; the exciton branch timing is zero.
inline RampParams ramp_from_mismatch(const MismatchSpec& m, const CascadeParams& p) {
  RampParams r;
  r.k_vx = m.d_omega1 - precession_rate(p);
  r.k_vxx = m.d_omega2 - r.k_vx;
  r.t_prop_xx = m.delta_t;
  return r;
}

/// Instantaneous angular frequencies of the exciton photon after the ramp.
/// With the ideal ramp the two polarizations come out degenerate.
inline std::pair<double, double> instantaneous_frequencies(const RampParams& r,
                                                           const CascadeParams& p) {
  if (!p.exciton_energy)
    throw std::invalid_argument("instantaneous_frequencies: exciton_energy not set");
  const double w0 = *p.exciton_energy / kHbarUevNs;
  const double half = precession_rate(p) / 2.0;
  const double omega_h = w0 - half + r.k_hx;
  const double omega_v = w0 + half + r.k_vx;
  return {omega_h, omega_v};
}

}  // namespace fsscomp
