#pragma once

#include "epm/neighbor_list.hpp"
#include "epm/particle_system.hpp"
#include "epm/vec.hpp"

namespace epm {

// Literal SPH/MPS operator forms, kept as independent oracles: kernels and
// their radial derivatives are written out here in closed form rather than
// routed through the weights module.
enum class SphBaseKernel { Cubic, Quintic, Wendland };

class SphDirectOps {
 public:
  // a_d is the unity-condition normalization of the base kernel.
  SphDirectOps(SphBaseKernel base, double a_d, double h, int dim)
      : base_(base), a_(a_d), h_(h), dim_(dim) {}

  double kernel(double q) const;        // normalized w^S(q)
  double kernel_deriv(double q) const;  // d w^S / dq

  // sum_{j!=i} V_j (phi_j - phi_i) grad_i W_h(r_ij)
  Vec3 gradient(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                std::size_t i) const;
  // 2 sum_{j!=i} V_j (phi_i - phi_j)/r_ij * dW_h/dr(r_ij)
  double laplacian(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                   std::size_t i) const;

 private:
  double dwh_dr(double r) const;  // d/dr of the scaled kernel
  SphBaseKernel base_;
  double a_, h_;
  int dim_;
};

class MpsDirectOps {
 public:
  // n0 and lambda0 are the rest particle-number density and C_2(w^MPS_h).
  MpsDirectOps(double h, int dim, double n0, double lambda0)
      : h_(h), dim_(dim), n0_(n0), lambda0_(lambda0) {}

  double kernel_h(double r) const;  // w^MPS_h(r)

  // (d/n0) sum_{j!=i} (phi_j - phi_i)/r_ij e_ij w^MPS_h(r_ij)
  Vec3 gradient(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                std::size_t i) const;
  // (2d/(n0 lambda0)) sum_{j!=i} (phi_j - phi_i) w^MPS_h(r_ij)
  double laplacian(const ParticleSystem& sys, const NeighborList& nl, const double* field,
                   std::size_t i) const;

 private:
  double h_;
  int dim_;
  double n0_, lambda0_;
};

}  // namespace epm
