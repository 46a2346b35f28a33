#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

#include "core_state.hpp"

namespace fsscomp {

/// Quantum-dot parameters. FSS is stored as a magnitude; the orientation of
/// the splitting is a ramp-sign choice in the compensation module.
struct CascadeParams {
  double fss = 0.0;      // μeV
  double tau_x = 1.0;    // exciton lifetime, ns
  double tau_xx = 0.5;   // biexciton lifetime, ns
  std::optional<double> exciton_energy;  // μeV, only for the frequency check

  void check() const {
    if (!(tau_x > 0.0)) throw std::invalid_argument("tau_x must be > 0");
    if (!(tau_xx > 0.0)) throw std::invalid_argument("tau_xx must be > 0");
    if (!(fss >= 0.0)) throw std::invalid_argument("fss must be >= 0");
  }
};

/// One emission: t1 is the biexciton-photon delay after excitation, t2 the
/// exciton-photon delay after that.
struct EmissionEvent {
  double t1 = 0.0;  // ns
  double t2 = 0.0;  // ns
};

inline double precession_rate(const CascadeParams& p) {
  return p.fss / kHbarUevNs;  // rad/ns
}

using RngStream = std::mt19937_64;

namespace detail {

/// Uniform draw in (0,1], suitable for inverse-transform exponentials.
inline double uniform_pos(RngStream& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

inline double exp_sample(double tau, RngStream& rng) {
  return -tau * std::log(uniform_pos(rng));
}

}  // namespace detail

inline EmissionEvent sample_emission(const CascadeParams& p, RngStream& rng) {
  EmissionEvent e;
  e.t1 = detail::exp_sample(p.tau_xx, rng);
  e.t2 = detail::exp_sample(p.tau_x, rng);
  return e;
}

/// Emitted pair state with no compensation applied: the FSS precession during
/// t2 sets the HH–VV phase. t1 does not enter.
inline TwoPhotonKet raw_pair_state(const CascadeParams& p, const EmissionEvent& e) {
  return ket_from_phase(precession_rate(p) * e.t2);
}

}  // namespace fsscomp
