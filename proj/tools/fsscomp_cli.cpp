// Command-line front end: simulate a run, sweep the mismatch / delay grids,
// tabulate the time-gating baseline, size the modulator drive, and validate
// dumped density matrices.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fsscomp/fsscomp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitNumericalError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fsscomp::ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fsscomp::RunConfig load_config(const std::string& config_path) {
  if (config_path.empty()) return {};
  return fsscomp::parse_config(read_file(config_path));
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!file) throw fsscomp::ConfigError("cannot open output file: " + path);
  return file;
}

void print_metrics(const fsscomp::MetricsReport& rep) {
  std::printf("F(Phi+)     = %.4g\n", rep.fidelity_phi_plus);
  std::printf("F(Phi-)     = %.4g\n", rep.fidelity_phi_minus);
  std::printf("concurrence = %.4g\n", rep.concurrence);
  std::printf("purity      = %.4g\n", rep.purity);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-dot cascade simulator with differential phase-ramp "
               "FSS compensation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::string dump_rho_path;
  bool strict = false;
  unsigned workers = 0;
  double fss = -1.0, d_omega1 = 0.0, d_omega2 = 0.0, delta_t = 0.0;
  bool have_d1 = false, have_d2 = false, have_dt = false;
  std::uint64_t seed = 0;
  bool have_seed = false;
  std::string method;

  auto* sim = app.add_subcommand("simulate", "run one Monte Carlo average and print metrics");
  sim->add_option("config,--config", config_path, "config file");
  sim->add_option("--fss", fss, "FSS in ueV (overrides config)");
  sim->add_option("--d-omega1", d_omega1)->each([&](const std::string&) { have_d1 = true; });
  sim->add_option("--d-omega2", d_omega2)->each([&](const std::string&) { have_d2 = true; });
  sim->add_option("--delta-t", delta_t)->each([&](const std::string&) { have_dt = true; });
  sim->add_option("--seed", seed)->each([&](const std::string&) { have_seed = true; });
  sim->add_option("--method", method, "monte_carlo or analytic");
  sim->add_option("--workers", workers, "worker threads (0 = hardware)");
  sim->add_option("--dump-rho", dump_rho_path, "write the averaged density matrix");
  sim->add_flag("--strict", strict, "exit 2 if the average did not converge");

  double grid_lo = -5.0, grid_hi = 5.0;
  std::size_t grid_steps = 41;
  auto* swm = app.add_subcommand("sweep-mismatch", "metrics over a (d_omega1, d_omega2) grid, CSV out");
  swm->add_option("config,--config", config_path);
  swm->add_option("--fss", fss, "FSS in ueV (overrides config)");
  swm->add_option("--lo", grid_lo, "grid lower bound, rad/ns");
  swm->add_option("--hi", grid_hi, "grid upper bound, rad/ns");
  swm->add_option("--steps", grid_steps, "points per axis");
  swm->add_option("--method", method);
  swm->add_option("-o,--output", output_path, "CSV path ('-' = stdout)");

  double dt_lo = 0.0, dt_hi = 3.0;
  std::size_t dt_steps = 121;
  auto* swd = app.add_subcommand("sweep-delay", "metrics vs timing offset delta_t, CSV out");
  swd->add_option("config,--config", config_path);
  swd->add_option("--fss", fss, "FSS in ueV (overrides config)");
  swd->add_option("--lo", dt_lo, "delta_t lower bound, ns");
  swd->add_option("--hi", dt_hi, "delta_t upper bound, ns");
  swd->add_option("--steps", dt_steps, "number of points");
  swd->add_option("--method", method);
  swd->add_option("-o,--output", output_path, "CSV path ('-' = stdout)");

  double gate_lo = 0.05, gate_hi = 5.0;
  std::size_t gate_steps = 50;
  auto* gt = app.add_subcommand("gate-tradeoff", "time-gating baseline table, CSV out");
  gt->add_option("config,--config", config_path);
  gt->add_option("--fss", fss, "FSS in ueV (overrides config)");
  gt->add_option("--lo", gate_lo, "smallest gate, ns");
  gt->add_option("--hi", gate_hi, "largest gate, ns");
  gt->add_option("--steps", gate_steps, "number of points");
  gt->add_option("-o,--output", output_path, "CSV path ('-' = stdout)");

  double vpi_v = 0.0, vpi_h = 0.0, design_fss = 0.0;
  auto* dr = app.add_subcommand("design-ramp", "voltage-ramp slope and phase slopes for a modulator");
  dr->add_option("--vpi-v", vpi_v, "half-wave voltage, V polarization (V)")->required();
  dr->add_option("--vpi-h", vpi_h, "half-wave voltage, H polarization (V)")->required();
  dr->add_option("--fss", design_fss, "FSS to compensate (ueV)")->required();

  std::string rho_path;
  auto* val = app.add_subcommand("validate", "check a dumped density-matrix file");
  val->add_option("file", rho_path, "density matrix file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim || *swm || *swd || *gt) {
      fsscomp::RunConfig cfg = load_config(config_path);
      if (fss >= 0.0) cfg.cascade.fss = fss;
      if (have_seed) cfg.mc.seed = seed;
      if (have_d1 || have_d2 || have_dt) {
        if (cfg.explicit_ramp)
          throw fsscomp::ConfigError("mismatch flags conflict with the config's [ramp] block");
        if (have_d1) cfg.mismatch.d_omega1 = d_omega1;
        if (have_d2) cfg.mismatch.d_omega2 = d_omega2;
        if (have_dt) cfg.mismatch.delta_t = delta_t;
      }
      if (!method.empty()) {
        if (method == "monte_carlo") cfg.method = fsscomp::SweepMethod::MonteCarlo;
        else if (method == "analytic") cfg.method = fsscomp::SweepMethod::Analytic;
        else throw fsscomp::ConfigError("--method must be monte_carlo or analytic");
      }
      if (!output_path.empty()) cfg.output = output_path;
      cfg.cascade.check();

      if (*sim) {
        fsscomp::DensityMatrix rho;
        if (cfg.method == fsscomp::SweepMethod::Analytic) {
          const fsscomp::RampParams ramp = cfg.ramp();
          const double const_phase =
              fsscomp::total_phase(ramp, cfg.cascade, fsscomp::EmissionEvent{});
          const auto [d1, d2] = fsscomp::mismatch_of(ramp, cfg.cascade);
          rho = fsscomp::analytic_density(d1, d2, const_phase, cfg.cascade);
          std::printf("method: analytic\n");
        } else {
          const fsscomp::McResult mc =
              fsscomp::average_density(cfg.cascade, cfg.ramp(), cfg.mc, workers);
          rho = mc.rho;
          std::printf("method: monte_carlo\n");
          std::printf("n_samples   = %llu (converged: %s, last rel change %.4g)\n",
                      static_cast<unsigned long long>(mc.n_samples),
                      mc.converged ? "yes" : "no", mc.last_rel_change);
          if (strict && !mc.converged) {
            std::fprintf(stderr, "error: Monte Carlo average did not converge\n");
            return kExitNumericalError;
          }
        }
        print_metrics(fsscomp::metrics_report(rho));
        if (!dump_rho_path.empty()) {
          std::ofstream out(dump_rho_path, std::ios::binary);
          if (!out) throw fsscomp::ConfigError("cannot open " + dump_rho_path);
          out << fsscomp::format_density(rho);
        }
        return kExitOk;
      }

      std::ofstream file;
      std::ostream& os = open_output(cfg.output, file);
      if (*swm) {
        const auto result = fsscomp::sweep_mismatch(
            cfg.cascade, {grid_lo, grid_hi}, {grid_lo, grid_hi}, grid_steps,
            grid_steps, cfg.mc, cfg.method);
        fsscomp::write_csv(result, os);
      } else if (*swd) {
        const auto result = fsscomp::sweep_delay(cfg.cascade, {dt_lo, dt_hi},
                                                 dt_steps, cfg.mc, cfg.method);
        fsscomp::write_csv(result, os);
      } else {
        const auto rows =
            fsscomp::gating_tradeoff(cfg.cascade, {gate_lo, gate_hi}, gate_steps);
        fsscomp::write_csv(rows, os);
      }
      return kExitOk;
    }

    if (*dr) {
      const fsscomp::EomSpec eom{vpi_v, vpi_h};
      const double slope = fsscomp::required_ramp_slope(eom, design_fss);
      const auto [k_v, k_h] = fsscomp::phase_slopes(eom, slope);
      std::printf("dV/dt       = %.4g V/ns\n", slope);
      std::printf("k_v         = %.4g rad/ns\n", k_v);
      std::printf("k_h         = %.4g rad/ns\n", k_h);
      std::printf("k_v - k_h   = %.4g rad/ns (FSS/hbar = %.4g)\n", k_v - k_h,
                  design_fss / fsscomp::kHbarUevNs);
      return kExitOk;
    }

    if (*val) {
      std::ifstream in(rho_path);
      if (!in) {
        std::fprintf(stderr, "error: cannot open %s\n", rho_path.c_str());
        return kExitConfigError;
      }
      fsscomp::DensityMatrix rho;
      try {
        rho = fsscomp::parse_density(in);
      } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return kExitConfigError;
      }
      const fsscomp::ValidityReport rep = fsscomp::validate_density(rho, 1e-8);
      std::printf("hermiticity_residual = %.4g\n", rep.hermiticity_residual);
      std::printf("trace_deviation      = %.4g\n", rep.trace_deviation);
      std::printf("min_eigenvalue       = %.4g\n", rep.min_eigenvalue);
      std::printf("valid                = %s\n", rep.pass ? "yes" : "no");
      return rep.pass ? kExitOk : kExitNumericalError;
    }
  } catch (const fsscomp::ConfigError& ex) {
    std::fprintf(stderr, "config error: %s\n", ex.what());
    return kExitConfigError;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExitNumericalError;
  }
  return kExitOk;
}
