#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "circleflow/equations.hpp"
#include "circleflow/evolution.hpp"
#include "circleflow/landau.hpp"

namespace circleflow {

/// Initial-condition presets of the run-config schema. The random kinds draw
/// from the documented splitmix64 generator, so seeded runs are reproducible
/// bit-exactly. spin_wave and random_spin apply to landau_lifschitz only.
struct InitialCondition {
  enum class Kind {
    constant,
    sine,
    mean_plus_sine,
    random_bandlimited,
    spin_wave,
    random_spin,
  };
  Kind kind = Kind::constant;
  double value = 0.0;       // constant
  double mean = 0.0;        // mean_plus_sine
  double amplitude = 0.0;   // sine / mean_plus_sine / random_*
  int wavenumber = 1;       // sine / mean_plus_sine / spin_wave
  double theta = 0.0;       // spin_wave polar angle
  std::uint64_t seed = 0;   // random_*
  int kmax = 1;             // random_*
};

/// One run, parsed from a single self-contained JSON document.
struct RunConfig {
  std::string equation = "ch";  // preset name, sobolev(r,lambda), or
                                // landau_lifschitz
  InitialCondition ic;
  int grid_n = 256;  // power of two, >= 32
  double dt = 1e-3;
  double t_end = 1.0;
  int record_every = 10;
  std::string output_dir = ".";
  bool emit_snapshots = false;
  enum class Backend { eulerian, lagrangian, both } backend = Backend::eulerian;
  bool dealias = true;
  double breakdown_gamma_min = 1e-4;
  double breakdown_c1 = 1e6;
};

/// Parse and validate; throws Error with a human-readable message on any
/// schema or value problem. Emits a CFL-style warning to stderr (not an
/// error) when dt * max|u0| exceeds pi/grid_n.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

bool is_landau(const RunConfig& cfg);

GridFunction build_initial(const RunConfig& cfg, const Grid& grid);
LoopField build_initial_loop(const RunConfig& cfg, const Grid& grid);
IntegratorConfig integrator_config(const RunConfig& cfg);

}  // namespace circleflow
