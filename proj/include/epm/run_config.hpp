#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "epm/norms.hpp"
#include "epm/weights.hpp"

namespace epm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Validated run description shared by the CLI subcommands and `run <file>`.
struct RunConfig {
  std::string experiment;  // taylor-green | cavity | dambreak | truncation |
                           // optimize-weight | custom
  PresetTag preset = PresetTag::GS;
  std::vector<double> custom_coeffs;

  double dx = 0.0;            // 0 = experiment default
  std::vector<double> dx_list;  // convergence sweeps
  int m = 0;                  // 0 = fixed h/dx ratio
  double h_factor = 0.0;      // 0 = experiment default
  double eps = 0.0;           // 0 = experiment default
  double tau = 0.0;           // 0 = auto (dt_max)
  double T = 0.0;             // 0 = experiment default
  double Re = 0.0;            // 0 = experiment default
  double eps_max = 0.0;
  std::vector<std::uint64_t> seeds{0};
  bool pressure_recalc = true;
  bool free_surface = false;
  bool collision = true;
  bool convergence = false;
  int snapshots = 0;  // cadence in steps; 0 = off
  bool vtk = false;
  SpaceTimeVariant spacetime_norm = SpaceTimeVariant::Squared;
  int optimize_n = 2;
  int optimize_dim = 2;
  long max_steps = 200000;
  double steady_tol = 1e-3;
  std::string out_dir;
  std::string reference_path;
  std::string backend = "auto";  // auto | scalar | avx2

  // Fills experiment defaults (paper settings) for unset numeric fields and
  // validates ranges; throws ConfigError naming the offending key.
  void finalize();
};

// Parses UTF-8 `key = value` lines ('#' comments allowed); unknown keys are
// rejected by name. The result is finalized.
RunConfig parse_config(const std::string& text);

// Serialized effective configuration (the echo of defaults).
std::string config_echo(const RunConfig& cfg);

}  // namespace epm
