#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core_state.hpp"

namespace fsscomp {

struct MetricsReport {
  double fidelity_phi_plus = 0.0;
  double fidelity_phi_minus = 0.0;
  double concurrence = 0.0;
  double purity = 0.0;
};

inline double purity(const DensityMatrix& rho) {
  return (rho.m * rho.m).trace().real();
}

namespace detail {

inline void require_valid(const DensityMatrix& rho, const char* who) {
  if (!validate_density(rho, 1e-8).pass)
    throw std::invalid_argument(std::string(who) + ": invalid density matrix");
}

}  // namespace detail

/// Uhlmann fidelity F = (Tr √(√ρ_B ρ √ρ_B))². For a pure target this equals
/// Tr(ρ_B ρ); both routes are evaluated and must agree.
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& target) {
  detail::require_valid(rho, "fidelity");
  detail::require_valid(target, "fidelity");
  const Mat4 sqrt_b = psd_sqrt(target.m);
  const Mat4 inner = psd_sqrt(sqrt_b * rho.m * sqrt_b);
  double tr = inner.trace().real();
  double f = tr * tr;
  if (purity(target) > 1.0 - 1e-10) {
    const double shortcut = (target.m * rho.m).trace().real();
    if (std::abs(f - shortcut) > 1e-9)
      throw std::runtime_error("fidelity: pure-target shortcut disagrees");
  }
  return std::clamp(f, 0.0, 1.0);
}

inline double fidelity(const DensityMatrix& rho, const TwoPhotonKet& target) {
  return fidelity(rho, density_from_ket(target));
}

namespace detail {

// Spin-flip matrix of the Wootters formula (equal to −σ_y⊗σ_y; the global
// sign cancels in R).
inline Mat4 spin_flip_sigma() {
  Mat4 s;
  s(0, 3) = -1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 0) = -1.0;
  return s;
}

}  // namespace detail

/// Wootters concurrence C = max(0, λ1 − λ2 − λ3 − λ4), λ_i the sorted square
/// roots of the eigenvalues of ρΣρ*Σ, computed through the Hermitian
/// similarity √ρ·Σρ*Σ·√ρ. ρ* stands in for ρ^T, identical for Hermitian ρ.
inline double concurrence(const DensityMatrix& rho) {
  detail::require_valid(rho, "concurrence");
  const Mat4 sigma = detail::spin_flip_sigma();
  const Mat4 sqrt_rho = psd_sqrt(rho.m);
  const Mat4 m = sqrt_rho * sigma * rho.m.conjugated() * sigma * sqrt_rho;
  EigSystem e = hermitian_eigs(m);
  double c = 0.0;
  for (int i = 0; i < 4; ++i) {
    double lam = e.values[i];
    if (lam < -1e-9)
      throw std::runtime_error("concurrence: R matrix not PSD");
    lam = std::sqrt(std::max(lam, 0.0));
    c += (i == 0) ? lam : -lam;
  }
  return std::max(0.0, c);
}

/// Closed-form concurrence for X-shaped matrices (nonzero only on the
/// diagonal and anti-diagonal): 2·max(0, |m14|−√(m22 m33), |m23|−√(m11 m44)).
inline double concurrence_xstate(const DensityMatrix& rho) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3 && std::abs(rho.m(i, j)) > 1e-9)
        throw std::invalid_argument("concurrence_xstate: matrix is not X-shaped");
  const double d0 = rho.m(0, 0).real(), d1 = rho.m(1, 1).real();
  const double d2 = rho.m(2, 2).real(), d3 = rho.m(3, 3).real();
  const double a = std::abs(rho.m(0, 3)) - std::sqrt(std::max(d1 * d2, 0.0));
  const double b = std::abs(rho.m(1, 2)) - std::sqrt(std::max(d0 * d3, 0.0));
  return 2.0 * std::max({0.0, a, b});
}

inline MetricsReport metrics_report(const DensityMatrix& rho) {
  MetricsReport rep;
  rep.fidelity_phi_plus = fidelity(rho, bell_state(BellTarget::PhiPlus));
  rep.fidelity_phi_minus = fidelity(rho, bell_state(BellTarget::PhiMinus));
  rep.concurrence = concurrence(rho);
  rep.purity = purity(rho);
  return rep;
}

}  // namespace fsscomp
