#pragma once

#include <cmath>
#include <numbers>

#include "epm/vec.hpp"

namespace epm {

struct TaylorGreenParams {
  double U = 1.0;
  double L = 1.0;
  double Re = 10.0;
  double rho = 1.0;
  double nu() const { return U * L / Re; }
};

struct TaylorGreenState {
  Vec3 velocity;
  double pressure;
};

// Decaying vortex solution of the 2-D incompressible equations on (0,L)^2.
inline TaylorGreenState taylor_green_exact(const Vec3& x, double t, const TaylorGreenParams& p) {
  const double k = 2.0 * std::numbers::pi / p.L;
  const double decay = std::exp(-8.0 * std::numbers::pi * std::numbers::pi * p.U * t / (p.L * p.Re));
  TaylorGreenState s;
  s.velocity = {-p.U * decay * std::cos(k * x[0]) * std::sin(k * x[1]),
                p.U * decay * std::sin(k * x[0]) * std::cos(k * x[1]), 0.0};
  s.pressure =
      -0.25 * p.rho * p.U * p.U * decay * decay * (std::cos(2.0 * k * x[0]) + std::cos(2.0 * k * x[1]));
  return s;
}

}  // namespace epm
