#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "epm/domain.hpp"
#include "epm/neighbor_list.hpp"
#include "epm/operators.hpp"
#include "epm/particle_system.hpp"

namespace epm {

using FieldFn = std::function<Vec3(const Vec3&, double)>;

struct SolverConfig {
  double rho = 1.0;
  double nu = 1.0;
  double eps = 0.1;
  double tau = 0.0;  // 0 = auto: use dt_max
  double T = 1.0;
  double dx = 0.0;   // lattice spacing; collision distance reference
  FieldFn body_force;         // null = zero
  FieldFn boundary_velocity;  // null = zero
  double f_inf = 0.0;         // sup norm of the body force over the run
  bool pressure_recalc = true;
  bool free_surface = false;
  struct Collision {
    bool enabled = false;
    double distance_factor = 0.8;
    double restitution = 0.2;
  } collision;
};

// min{ h eps/4, sqrt(h)/(4 sqrt(f_inf)), h^2/(8 nu) }; middle term dropped
// when f_inf = 0.
double dt_max(double h, double eps, double nu, double f_inf);

class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(int step, const std::string& what)
      : std::runtime_error("instability at step " + std::to_string(step) + ": " + what),
        step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

struct StepDiagnostics {
  std::uint64_t degenerate_stencils = 0;
  std::uint64_t shepard_fallbacks = 0;
  std::uint64_t clamped_pressures = 0;
  std::uint64_t collisions_resolved = 0;
};

// Explicit penalty time stepper. One advance() performs:
//   predictor -> penalty_pressure -> position_correct ->
//   (collision_resolve) -> pressure_velocity_update
// rebuilding the neighbor list at x^k, x*, and x^{k+1}. Boundary particles
// never move; their velocity follows the prescribed wall field.
class Stepper {
 public:
  Stepper(ParticleSystem sys, DomainSpec dom, OperatorSet ops, SolverConfig cfg);

  void advance();

  // Sub-steps, exposed for verification; advance() is exactly their
  // composition.
  void predictor();
  void penalty_pressure();
  void position_correct();
  void collision_resolve();
  void pressure_velocity_update();

  const ParticleSystem& system() const { return sys_; }
  ParticleSystem& system() { return sys_; }
  const DomainSpec& domain() const { return dom_; }
  const OperatorSet& operators() const { return ops_; }
  const SolverConfig& config() const { return cfg_; }
  int step_index() const { return k_; }
  double time() const { return k_ * tau_; }
  double tau() const { return tau_; }
  double c0h_value() const { return c0h_; }
  const StepDiagnostics& diagnostics() const { return diag_; }

  // Tentative arrays (valid after the corresponding sub-step).
  const std::vector<double>& tentative_pressure() const { return pstar_; }
  const std::array<std::vector<double>, 3>& tentative_velocity() const { return ustar_; }
  const std::array<std::vector<double>, 3>& tentative_position() const { return xstar_; }

 private:
  void check_finite(const char* stage);
  Vec3 body_force_at(const Vec3& x, double t) const;
  Vec3 wall_velocity_at(const Vec3& x, double t) const;

  ParticleSystem sys_;
  DomainSpec dom_;
  OperatorSet ops_;
  SolverConfig cfg_;
  double tau_;
  double c0h_;
  int k_ = 0;
  StepDiagnostics diag_;

  NeighborList nl_;
  std::array<std::vector<double>, 3> ustar_, xstar_;
  std::vector<double> pstar_, pnew_;
  std::array<std::vector<double>, 3> scratch_;
};

}  // namespace epm
