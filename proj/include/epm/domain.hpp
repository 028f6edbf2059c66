#pragma once

#include <array>
#include <stdexcept>

#include "epm/vec.hpp"

namespace epm {

// Simulation box. Non-periodic axes are expanded by H on both sides; the
// expanded shell hosts fixed wall (dummy) particles.
struct DomainSpec {
  int dim = 2;
  Vec3 box_lo{0.0, 0.0, 0.0};
  Vec3 box_hi{1.0, 1.0, 1.0};
  std::array<bool, 3> periodic{false, false, false};
  double H = 0.0;  // expansion width, used on non-periodic axes only

  double edge(int axis) const { return box_hi[axis] - box_lo[axis]; }

  bool fully_periodic() const {
    for (int a = 0; a < dim; ++a)
      if (!periodic[a]) return false;
    return true;
  }

  // Lower/upper corner of the expanded box (equals the box on periodic axes).
  double expanded_lo(int axis) const { return periodic[axis] ? box_lo[axis] : box_lo[axis] - H; }
  double expanded_hi(int axis) const { return periodic[axis] ? box_hi[axis] : box_hi[axis] + H; }

  double volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= edge(a);
    return v;
  }

  double expanded_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= expanded_hi(a) - expanded_lo(a);
    return v;
  }

  void validate() const {
    if (dim != 2 && dim != 3) throw std::invalid_argument("domain: dim must be 2 or 3");
    for (int a = 0; a < dim; ++a)
      if (!(box_lo[a] < box_hi[a])) throw std::invalid_argument("domain: box_lo must be < box_hi");
    if (!fully_periodic() && !(H > 0.0))
      throw std::invalid_argument("domain: H must be > 0 for non-periodic domains");
  }
};

// y - x with each periodic component shifted by whole box lengths so its
// magnitude is minimal.
inline Vec3 min_image_displacement(const Vec3& x, const Vec3& y, const DomainSpec& dom) {
  Vec3 d = y - x;
  for (int a = 0; a < dom.dim; ++a) {
    if (dom.periodic[a]) {
      const double e = dom.edge(a);
      d[a] -= e * std::round(d[a] / e);
    }
  }
  return d;
}

// Map periodic components into [box_lo, box_hi); points on the upper face
// land on the lower face.
inline Vec3 wrap_position(const Vec3& x, const DomainSpec& dom) {
  Vec3 y = x;
  for (int a = 0; a < dom.dim; ++a) {
    if (!dom.periodic[a]) continue;
    const double e = dom.edge(a);
    y[a] -= e * std::floor((y[a] - dom.box_lo[a]) / e);
    if (y[a] >= dom.box_hi[a]) y[a] = dom.box_lo[a];
  }
  return y;
}

}  // namespace epm
