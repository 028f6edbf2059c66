#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

#include "epm/neighbor_list.hpp"
#include "epm/particle_system.hpp"
#include "epm/simd_backend.hpp"
#include "epm/weights.hpp"

namespace epm {

struct OperatorDiagnostics {
  std::atomic<std::uint64_t> degenerate_stencils{0};
  std::atomic<std::uint64_t> shepard_fallbacks{0};
};

// Discrete operators over a neighbor list. Normalization constants come from
// the weight moments once at construction; they do not depend on h.
class OperatorSet {
 public:
  OperatorSet(WeightTriple triple, double h, int dim);

  double h() const { return h_; }
  int dim() const { return dim_; }
  double c_pi() const { return c_pi_; }
  double c_grad() const { return c_grad_; }
  double c_lap() const { return c_lap_; }
  const WeightTriple& triple() const { return triple_; }
  OperatorDiagnostics& diagnostics() const { return *diag_; }

  // Interpolant: c_pi * sum_j V_j phi_j w_pi_h(r_ij), j = i included.
  double interpolate(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                     std::size_t i) const;

  // (c_grad/h) sum_{j!=i} V_j (phi_j -/+ phi_i) e_ij w_grad_h(r_ij)
  Vec3 gradient(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                std::size_t i, bool plus = false) const;
  Vec3 gradient_plus(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                     std::size_t i) const {
    return gradient(sys, nl, field, i, true);
  }

  // (c_lap/h^2) sum_{j!=i} V_j (phi_j - phi_i) w_lap_h(r_ij)
  double laplacian(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                   std::size_t i) const;

  // Partition-of-unity average with weights V_j w_pi_h; self term included.
  double shepard(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                 std::size_t i) const;

  // sum_j V_j w_pi_h(r_ij) including the self term (rest density sum).
  double kernel_density(const ParticleSystem& sys, const NeighborList& nl, std::size_t i) const;

  // Bulk forms, data-parallel over particles.
  void gradient_all(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                    double* ox, double* oy, double* oz, bool plus = false) const;
  void laplacian_all(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                     double* out) const;
  // Componentwise Laplacian of a vector field with one weight evaluation.
  void laplacian_vec_all(const ParticleSystem& sys, const NeighborList& nl, const double* fx,
                         const double* fy, const double* fz, double* ox, double* oy,
                         double* oz) const;
  void shepard_all(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                   double* out) const;
  void kernel_density_all(const ParticleSystem& sys, const NeighborList& nl, double* out) const;

 private:
  WeightTriple triple_;
  double h_;
  int dim_;
  double c_pi_, c_grad_, c_lap_;
  std::unique_ptr<OperatorDiagnostics> diag_;
};

// Lattice-sum approximation of C_0: (vol_total/N) sum over integer z with
// |z| s < h of w_h(s |z|), s = (vol_total/N)^{1/d}.
double c0h(const ReferenceWeight& w, double h, std::size_t n_particles, double vol_total, int dim);

}  // namespace epm
