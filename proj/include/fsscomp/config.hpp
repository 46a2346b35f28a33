#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cascade.hpp"
#include "compensation.hpp"
#include "experiments.hpp"
#include "montecarlo.hpp"

namespace fsscomp {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed run description: dot parameters, either an explicit ramp or a
/// mismatch triple, Monte Carlo settings, and output selection.
struct RunConfig {
  CascadeParams cascade;
  McConfig mc;
  MismatchSpec mismatch;
  std::optional<RampParams> explicit_ramp;
  SweepMethod method = SweepMethod::MonteCarlo;
  std::string output;

  RampParams ramp() const {
    return explicit_ramp ? *explicit_ramp : ramp_from_mismatch(mismatch, cascade);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_number(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for key '" + key + "': " + value);
  }
  if (pos != value.size())
    throw ConfigError("bad numeric value for key '" + key + "': " + value);
  return v;
}

inline std::uint64_t parse_count(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v < 0.0 || v != std::floor(v))
    throw ConfigError("key '" + key + "' requires a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

}  // namespace detail

/// Parses the flat key-value config document (`key = value` lines, `#`
/// comments, optional `[ramp]` block). Omitted keys take the simulation
/// defaults: tau_x 1 ns, tau_xx 0.5 ns, rel_tol 1e-6, mismatch (0,0,0).
/// An explicit ramp block and mismatch keys are mutually exclusive.
inline RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  RampParams ramp;
  bool in_ramp = false, have_ramp_block = false, have_mismatch_key = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[ramp]") {
        in_ramp = true;
        have_ramp_block = true;
        continue;
      }
      throw ConfigError("unknown section '" + line + "'");
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value', got '" + line + "'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));

    if (in_ramp) {
      double* field = nullptr;
      if (key == "k_vxx") field = &ramp.k_vxx;
      else if (key == "k_hxx") field = &ramp.k_hxx;
      else if (key == "k_vx") field = &ramp.k_vx;
      else if (key == "k_hx") field = &ramp.k_hx;
      else if (key == "phi0_vxx") field = &ramp.phi0_vxx;
      else if (key == "phi0_hxx") field = &ramp.phi0_hxx;
      else if (key == "phi0_vx") field = &ramp.phi0_vx;
      else if (key == "phi0_hx") field = &ramp.phi0_hx;
      else if (key == "t_prop_xx") field = &ramp.t_prop_xx;
      else if (key == "t_prop_x") field = &ramp.t_prop_x;
      else if (key == "t_start_xx") field = &ramp.t_start_xx;
      else if (key == "t_start_x") field = &ramp.t_start_x;
      else throw ConfigError("unknown ramp key '" + key + "'");
      *field = detail::parse_number(key, value);
      continue;
    }

    if (key == "fss_uev") cfg.cascade.fss = detail::parse_number(key, value);
    else if (key == "tau_x_ns") cfg.cascade.tau_x = detail::parse_number(key, value);
    else if (key == "tau_xx_ns") cfg.cascade.tau_xx = detail::parse_number(key, value);
    else if (key == "exciton_energy_uev")
      cfg.cascade.exciton_energy = detail::parse_number(key, value);
    else if (key == "seed") cfg.mc.seed = detail::parse_count(key, value);
    else if (key == "batch_size") cfg.mc.batch_size = detail::parse_count(key, value);
    else if (key == "rel_tol") cfg.mc.rel_tol = detail::parse_number(key, value);
    else if (key == "max_samples") cfg.mc.max_samples = detail::parse_count(key, value);
    else if (key == "d_omega1") { cfg.mismatch.d_omega1 = detail::parse_number(key, value); have_mismatch_key = true; }
    else if (key == "d_omega2") { cfg.mismatch.d_omega2 = detail::parse_number(key, value); have_mismatch_key = true; }
    else if (key == "delta_t_ns") { cfg.mismatch.delta_t = detail::parse_number(key, value); have_mismatch_key = true; }
    else if (key == "method") {
      if (value == "monte_carlo") cfg.method = SweepMethod::MonteCarlo;
      else if (value == "analytic") cfg.method = SweepMethod::Analytic;
      else throw ConfigError("key 'method' must be monte_carlo or analytic");
    }
    else if (key == "output") cfg.output = value;
    else throw ConfigError("unknown key '" + key + "'");
  }

  if (have_ramp_block && have_mismatch_key)
    throw ConfigError("explicit [ramp] block conflicts with mismatch keys "
                      "(d_omega1/d_omega2/delta_t_ns)");
  if (have_ramp_block) cfg.explicit_ramp = ramp;

  if (!(cfg.cascade.tau_x > 0.0)) throw ConfigError("key 'tau_x_ns' must be > 0");
  if (!(cfg.cascade.tau_xx > 0.0)) throw ConfigError("key 'tau_xx_ns' must be > 0");
  if (!(cfg.cascade.fss >= 0.0)) throw ConfigError("key 'fss_uev' must be >= 0");
  if (!(cfg.mc.rel_tol > 0.0)) throw ConfigError("key 'rel_tol' must be > 0");
  if (cfg.mc.batch_size < 1) throw ConfigError("key 'batch_size' must be >= 1");
  if (cfg.mc.max_samples < cfg.mc.batch_size)
    throw ConfigError("key 'max_samples' must be >= batch_size");
  return cfg;
}

}  // namespace fsscomp
