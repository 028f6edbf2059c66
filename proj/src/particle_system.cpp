#include "epm/particle_system.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace epm {

namespace {

// floor(len/dx) robust against cases like 1/0.04 = 24.9999...
int lattice_count(double len, double dx) {
  return static_cast<int>(std::floor(len / dx + 1e-9));
}

}  // namespace

ParticleSystem lattice_init(const DomainSpec& dom, double dx, bool include_dummy_layers) {
  dom.validate();
  if (!(dx > 0.0)) throw std::invalid_argument("lattice_init: dx must be > 0");
  for (int a = 0; a < dom.dim; ++a)
    if (dx > dom.edge(a)) throw std::invalid_argument("lattice_init: dx larger than box edge");
  if (include_dummy_layers && !dom.fully_periodic() && dom.H < dx)
    throw std::invalid_argument("lattice_init: dummy layers need H >= dx");

  // Index range per axis: interior sites are i = 1..n; dummy continuation
  // extends the same lattice into the expanded shell.
  std::array<int, 3> i_lo{1, 1, 1}, i_hi{1, 1, 1};
  for (int a = 0; a < dom.dim; ++a) {
    const int n = lattice_count(dom.edge(a), dx);
    i_hi[a] = n;
    if (include_dummy_layers && !dom.periodic[a]) {
      const int m = lattice_count(dom.H, dx);
      i_lo[a] = 1 - m;
      i_hi[a] = n + m;
    }
  }

  ParticleSystem sys;
  sys.dim = dom.dim;
  std::size_t total = 1;
  for (int a = 0; a < dom.dim; ++a) total *= static_cast<std::size_t>(i_hi[a] - i_lo[a] + 1);
  sys.resize(total);

  double vol = 1.0;
  for (int a = 0; a < dom.dim; ++a) vol *= dx;

  const int k_lo = (dom.dim == 3) ? i_lo[2] : 1;
  const int k_hi = (dom.dim == 3) ? i_hi[2] : 1;
  std::size_t idx = 0;
  for (int i = i_lo[0]; i <= i_hi[0]; ++i) {
    for (int j = i_lo[1]; j <= i_hi[1]; ++j) {
      for (int k = k_lo; k <= k_hi; ++k) {
        Vec3 x{dom.box_lo[0] + (i - 0.5) * dx, dom.box_lo[1] + (j - 0.5) * dx, 0.0};
        if (dom.dim == 3) x[2] = dom.box_lo[2] + (k - 0.5) * dx;
        bool interior = true;
        for (int a = 0; a < dom.dim; ++a)
          if (x[a] <= dom.box_lo[a] || x[a] >= dom.box_hi[a]) interior = false;
        sys.set_position(idx, x);
        sys.volume[idx] = vol;
        sys.kind[idx] = interior ? ParticleKind::Fluid : ParticleKind::Boundary;
        ++idx;
      }
    }
  }
  return sys;
}

double min_pair_distance(const ParticleSystem& sys, const DomainSpec& dom) {
  const std::size_t n = sys.size();
  if (n < 2) throw std::invalid_argument("min_pair_distance: needs at least 2 particles");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 xi = sys.position(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d2 = norm2(min_image_displacement(xi, sys.position(j), dom));
      if (d2 < best) best = d2;
    }
  }
  return std::sqrt(best);
}

}  // namespace epm
