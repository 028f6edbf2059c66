#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "epm/norms.hpp"
#include "epm/reference_profile.hpp"
#include "epm/solver.hpp"
#include "epm/taylor_green.hpp"
#include "epm/weights.hpp"

namespace epm {

using StepObserver = std::function<void(const Stepper&, int step)>;

// h = C_m dx^{1/m} with C_m = h_factor * 0.04^{1-1/m}; m = 0 means the fixed
// ratio h = h_factor * dx.
double influence_radius(double dx, int m, double h_factor);

WeightTriple triple_for(PresetTag preset, const std::vector<double>& custom_coeffs, int dim);

struct StepErrorRow {
  int k;
  double t, vel_rel, pres_rel;
};

struct TaylorGreenConfig {
  PresetTag preset = PresetTag::GS;
  std::vector<double> custom_coeffs;
  double dx = 0.04;
  int m = 0;
  double h_factor = 3.1;
  double eps = 0.1;
  double T = 0.1;
  TaylorGreenParams params{};
  bool pressure_recalc = true;
  StepObserver observer;
};

struct TaylorGreenReport {
  double h = 0, eps = 0, tau = 0, c0h = 0;
  int K = 0;
  std::vector<StepErrorRow> steps;
  double vel_err_printed = 0, vel_err_squared = 0;
  double pres_err_printed = 0, pres_err_squared = 0;
  bool diverged = false;
  int divergence_step = -1;
  StepDiagnostics diagnostics;
  double runtime_sec = 0;
};

TaylorGreenReport run_taylor_green(const TaylorGreenConfig& cfg);

struct ConvergenceRow {
  double dx = 0, h = 0, vel_err = 0, pres_err = 0;
  bool diverged = false;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool rates_valid = false;
  double vel_rate = 0, pres_rate = 0;  // in h, from the two finest stable grids
};

ConvergenceReport run_taylor_green_convergence(PresetTag preset, const std::vector<double>& dxs,
                                               int m,
                                               SpaceTimeVariant variant = SpaceTimeVariant::Squared);

// Perturbed lattice over the expanded unit square, H = 3 dx: sites
// ((i-1/2+e1/2) dx, (j-1/2+e2/2) dx) with e uniform in [-eps_max, eps_max].
DomainSpec perturbed_lattice_domain(double dx);
ParticleSystem perturbed_lattice(double dx, double eps_max, std::uint64_t seed);

struct TruncationConfig {
  PresetTag preset = PresetTag::GS;
  double h_factor = 3.1;
  double eps_max = 0.0;
  std::vector<std::uint64_t> seeds{0};
  double dx = 1.0 / 16.0;
};

struct TruncationResult {
  std::vector<double> per_seed;
  double mean = 0;
};

// Relative truncation error of the Laplacian on phi = sin(2 pi (x1+x2)):
// max_i |lap phi_i - lap_h phi_i| / max_i |lap phi_i| over particles in the
// interior box.
TruncationResult truncation_error_study(const TruncationConfig& cfg);

struct CavityConfig {
  PresetTag preset = PresetTag::GS;
  double Re = 100.0;
  double dx = 0.01;
  double h_factor = 3.1;
  double eps = 0.1;
  double H = 0.1;
  double steady_tol = 1e-3;  // threshold on max |du|/tau in U^2/L units
  long max_steps = 200000;
  double T_cap = std::numeric_limits<double>::infinity();
  ReferenceProfile reference;  // vertical velocity along the horizontal centerline
  StepObserver observer;
};

struct CavityReport {
  bool steady = false;
  long steps = 0;
  double end_time = 0;
  bool diverged = false;
  int divergence_step = -1;
  double profile_error = 0;
  std::vector<double> sample_x, sample_numeric, sample_ref;
  double tau = 0, h = 0;
  StepDiagnostics diagnostics;
  double runtime_sec = 0;
};

CavityReport run_cavity(const CavityConfig& cfg);

// Weighted relative L2 profile metric with left-difference abscissa weights.
double profile_error(const std::vector<double>& abscissa, const std::vector<double>& numeric,
                     const std::vector<double>& reference);

struct DamBreakConfig {
  double tank_w = 0.6, tank_h = 0.6;
  double col_w = 0.15, col_h = 0.3;
  double dx = 0.005;
  double h_factor = 2.6;
  double H_factor = 5.2;
  double eps = 0.05;
  double T = 1.3;
  double rho = 1000.0, nu = 1e-6, g = 9.81;
  PresetTag preset = PresetTag::GS;
  bool collision = true;
  double collision_distance_factor = 0.8;
  double collision_restitution = 0.2;
  std::vector<double> sensor_heights{0.003, 0.015, 0.03, 0.08};
  double settle_fraction = 0.6;  // averaging window start, as fraction of T
  StepObserver observer;
};

struct DamBreakReport {
  std::vector<double> times;
  std::vector<std::vector<double>> sensors;  // [sensor][step]
  std::vector<double> settled_mean;
  bool diverged = false;
  int divergence_step = -1;
  bool pressures_nonnegative = true;
  std::size_t fluid_count_start = 0, fluid_count_end = 0;
  double min_pressure_seen = 0;
  double tau = 0, h = 0;
  StepDiagnostics diagnostics;
  double runtime_sec = 0;
};

DamBreakReport run_dambreak(const DamBreakConfig& cfg);

}  // namespace epm
