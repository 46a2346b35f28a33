#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "core_state.hpp"

namespace fsscomp {

/// Electro-optic modulator characterized by its polarization-dependent
/// half-wave voltages. Differential operation needs v_pi_v ≠ v_pi_h.
struct EomSpec {
  double v_pi_v;  // V, vertical / TM mode
  double v_pi_h;  // V, horizontal / TE mode

  void check() const {
    if (!(v_pi_v > 0.0) || !(v_pi_h > 0.0))
      throw std::invalid_argument("EomSpec: half-wave voltages must be > 0");
  }
};

/// Voltage-ramp slope that makes the differential phase slope equal the FSS
/// precession rate: dV/dt·(1/Vπ_V − 1/Vπ_H)·π = FSS/ħ.
inline double required_ramp_slope(const EomSpec& e, double fss) {
  e.check();
  if (e.v_pi_v == e.v_pi_h)
    throw std::invalid_argument(
        "required_ramp_slope: equal half-wave voltages give no differential phase");
  const double diff = 1.0 / e.v_pi_v - 1.0 / e.v_pi_h;
  return (fss / kHbarUevNs) / (kPi * diff);  // V/ns
}

/// Phase slopes k = π·(dV/dt)/Vπ induced by a linear voltage ramp, per
/// polarization: (k_v, k_h) in rad/ns.
inline std::pair<double, double> phase_slopes(const EomSpec& e, double dv_dt) {
  e.check();
  return {kPi * dv_dt / e.v_pi_v, kPi * dv_dt / e.v_pi_h};
}

/// First-order Pockels index change Δn = −(n³/2)·Σ r_k·E_k for one row of
/// the electro-optic tensor.
inline double pockels_index_shift(double n, const std::array<double, 3>& r_row,
                                  const std::array<double, 3>& e_field) {
  if (!(n > 0.0)) throw std::invalid_argument("pockels_index_shift: n must be > 0");
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += r_row[k] * e_field[k];
  return -0.5 * n * n * n * s;
}

}  // namespace fsscomp
