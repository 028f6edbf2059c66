#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "epm/domain.hpp"
#include "epm/vec.hpp"

namespace epm {

enum class ParticleKind : std::uint8_t { Fluid = 0, Boundary = 1 };

// Particle state in structure-of-arrays layout. Component arrays for axes
// beyond dim exist but hold zeros.
struct ParticleSystem {
  int dim = 2;
  std::array<std::vector<double>, 3> pos;
  std::array<std::vector<double>, 3> vel;
  std::vector<double> pressure;
  std::vector<double> volume;
  std::vector<ParticleKind> kind;

  std::size_t size() const { return volume.size(); }

  void resize(std::size_t n) {
    for (int a = 0; a < 3; ++a) {
      pos[a].assign(n, 0.0);
      vel[a].assign(n, 0.0);
    }
    pressure.assign(n, 0.0);
    volume.assign(n, 0.0);
    kind.assign(n, ParticleKind::Fluid);
  }

  Vec3 position(std::size_t i) const { return {pos[0][i], pos[1][i], pos[2][i]}; }
  Vec3 velocity(std::size_t i) const { return {vel[0][i], vel[1][i], vel[2][i]}; }
  void set_position(std::size_t i, const Vec3& x) {
    pos[0][i] = x[0];
    pos[1][i] = x[1];
    pos[2][i] = x[2];
  }
  void set_velocity(std::size_t i, const Vec3& u) {
    vel[0][i] = u[0];
    vel[1][i] = u[1];
    vel[2][i] = u[2];
  }

  std::size_t count(ParticleKind k) const {
    std::size_t n = 0;
    for (auto kk : kind)
      if (kk == k) ++n;
    return n;
  }

  double total_volume() const {
    double s = 0.0;
    for (double v : volume) s += v;
    return s;
  }
};

// Square/cubic lattice fill of the domain at spacing dx: sites at
// lo + (i - 1/2) dx. With dummy layers enabled, the lattice continues into
// the expanded shell on non-periodic axes (kind Boundary). Volumes are dx^d.
ParticleSystem lattice_init(const DomainSpec& dom, double dx, bool include_dummy_layers);

// Minimum over all pairs of the minimum-image distance. O(N^2) free function
// for small N; experiments use the cell list instead.
double min_pair_distance(const ParticleSystem& sys, const DomainSpec& dom);

}  // namespace epm
