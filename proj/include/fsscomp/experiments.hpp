#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "cascade.hpp"
#include "compensation.hpp"
#include "metrics.hpp"
#include "montecarlo.hpp"

namespace fsscomp {

enum class SweepMethod { MonteCarlo, Analytic };

inline const char* to_string(SweepMethod m) {
  return m == SweepMethod::MonteCarlo ? "monte_carlo" : "analytic";
}

struct SweepRow {
  double d_omega1 = 0.0;   // rad/ns
  double d_omega2 = 0.0;   // rad/ns
  double delta_t = 0.0;    // ns
  double fidelity_phi_plus = 0.0;
  double fidelity_phi_minus = 0.0;
  double concurrence = 0.0;
  double purity = 0.0;
  std::uint64_t n_samples = 0;
  SweepMethod method = SweepMethod::Analytic;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

namespace detail {

inline double grid_point(const Range& r, std::size_t step, std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("sweep: need at least 2 steps per axis");
  if (!(r.hi >= r.lo)) throw std::invalid_argument("sweep: empty range");
  return r.lo + (r.hi - r.lo) * static_cast<double>(step) /
                    static_cast<double>(steps - 1);
}

inline SweepRow evaluate_point(const CascadeParams& p, const MismatchSpec& m,
                               const McConfig& cfg, SweepMethod method) {
  SweepRow row;
  row.d_omega1 = m.d_omega1;
  row.d_omega2 = m.d_omega2;
  row.delta_t = m.delta_t;
  row.method = method;
  const RampParams ramp = ramp_from_mismatch(m, p);
  DensityMatrix rho;
  if (method == SweepMethod::Analytic) {
    const double const_phase = total_phase(ramp, p, EmissionEvent{0.0, 0.0});
    rho = analytic_density(m.d_omega1, m.d_omega2, const_phase, p);
  } else {
    const McResult mc = average_density(p, ramp, cfg);
    rho = mc.rho;
    row.n_samples = mc.n_samples;
  }
  const MetricsReport rep = metrics_report(rho);
  row.fidelity_phi_plus = rep.fidelity_phi_plus;
  row.fidelity_phi_minus = rep.fidelity_phi_minus;
  row.concurrence = rep.concurrence;
  row.purity = rep.purity;
  return row;
}

}  // namespace detail

/// Metrics over a (Δω₁, Δω₂) grid at δt = 0, row-major in grid order.
inline SweepResult sweep_mismatch(const CascadeParams& p, const Range& d_omega1,
                                  const Range& d_omega2, std::size_t steps1,
                                  std::size_t steps2, const McConfig& cfg,
                                  SweepMethod method) {
  SweepResult out;
  out.rows.reserve(steps1 * steps2);
  for (std::size_t i = 0; i < steps1; ++i)
    for (std::size_t j = 0; j < steps2; ++j) {
      MismatchSpec m;
      m.d_omega1 = detail::grid_point(d_omega1, i, steps1);
      m.d_omega2 = detail::grid_point(d_omega2, j, steps2);
      out.rows.push_back(detail::evaluate_point(p, m, cfg, method));
    }
  return out;
}

/// Metrics as a function of the branch timing offset δt at perfect
/// compensation (Δω₁ = Δω₂ = 0 enforced internally).
inline SweepResult sweep_delay(const CascadeParams& p, const Range& dt_range,
                               std::size_t steps, const McConfig& cfg,
                               SweepMethod method) {
  SweepResult out;
  out.rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    MismatchSpec m;
    m.delta_t = detail::grid_point(dt_range, i, steps);
    out.rows.push_back(detail::evaluate_point(p, m, cfg, method));
  }
  return out;
}

struct GatingRow {
  double t_gate = 0.0;      // ns
  double acceptance = 0.0;  // kept fraction
  double fidelity_phi_plus = 0.0;
  double concurrence = 0.0;
};

/// Post-selection trade-off for the uncompensated dot: tighter gates keep a
/// better state but fewer pairs.
inline std::vector<GatingRow> gating_tradeoff(const CascadeParams& p,
                                              const Range& gate_range,
                                              std::size_t steps) {
  if (!(gate_range.lo > 0.0))
    throw std::invalid_argument("gating_tradeoff: t_gate values must be > 0");
  const double omega = precession_rate(p);
  std::vector<GatingRow> rows;
  rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    GatingRow row;
    row.t_gate = detail::grid_point(gate_range, i, steps);
    const auto [c, acc] = gated_coherence(row.t_gate, omega, p.tau_x);
    row.acceptance = acc;
    row.fidelity_phi_plus = 0.5 * (1.0 + c.real());
    row.concurrence = std::abs(c);
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV emission: fixed header, 9 significant digits, LF line endings.
// ---------------------------------------------------------------------------
namespace detail {

inline std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace detail

inline void write_csv(const SweepResult& sweep, std::ostream& os) {
  os << "d_omega1_rad_ns, d_omega2_rad_ns, delta_t_ns, fidelity_phi_plus, "
        "fidelity_phi_minus, concurrence, purity, n_samples, method\n";
  for (const SweepRow& r : sweep.rows) {
    os << detail::csv_num(r.d_omega1) << ',' << detail::csv_num(r.d_omega2)
       << ',' << detail::csv_num(r.delta_t) << ','
       << detail::csv_num(r.fidelity_phi_plus) << ','
       << detail::csv_num(r.fidelity_phi_minus) << ','
       << detail::csv_num(r.concurrence) << ',' << detail::csv_num(r.purity)
       << ',' << r.n_samples << ',' << to_string(r.method) << '\n';
  }
}

inline void write_csv(const std::vector<GatingRow>& rows, std::ostream& os) {
  os << "t_gate_ns, acceptance, fidelity_phi_plus, concurrence\n";
  for (const GatingRow& r : rows) {
    os << detail::csv_num(r.t_gate) << ',' << detail::csv_num(r.acceptance)
       << ',' << detail::csv_num(r.fidelity_phi_plus) << ','
       << detail::csv_num(r.concurrence) << '\n';
  }
}

}  // namespace fsscomp
