#pragma once

#include <cstdint>
#include <vector>

#include "epm/domain.hpp"
#include "epm/particle_system.hpp"

namespace epm {

// Fixed-radius neighbor pairs in CSR layout. Slot k of particle i (k in
// [offsets[i], offsets[i+1])) holds neighbor j = idx[k] together with the
// minimum-image displacement x_j - x_i, its length r < h, and V_j. Self is
// excluded; membership uses strict r < h matching w(r) = 0 for r >= 1.
// Per-particle slots are sorted by j so traversal order is deterministic.
struct NeighborList {
  double h = 0.0;
  double cell_size = 0.0;
  std::vector<std::uint64_t> offsets;  // size N+1
  std::vector<std::int32_t> idx;
  std::vector<double> dx, dy, dz;      // dz left empty for 2-D
  std::vector<double> r;
  std::vector<double> vj;              // gathered neighbor volumes

  std::size_t size() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::uint64_t begin(std::size_t i) const { return offsets[i]; }
  std::uint64_t end(std::size_t i) const { return offsets[i + 1]; }
  std::size_t degree(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
};

// Cell-list search with cell size ~ h tiled from box_lo; one-ring scan.
// Periodic axes require h < edge/2 (minimum image would be ill-defined).
// Buffers in `out` are reused across calls to avoid reallocation.
void build_neighbor_list(const ParticleSystem& sys, const DomainSpec& dom, double h,
                         NeighborList& out);

inline NeighborList build_neighbor_list(const ParticleSystem& sys, const DomainSpec& dom,
                                        double h) {
  NeighborList nl;
  build_neighbor_list(sys, dom, h, nl);
  return nl;
}

}  // namespace epm
