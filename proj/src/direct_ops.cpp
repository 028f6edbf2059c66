#include "epm/direct_ops.hpp"

#include <cmath>

namespace epm {

double SphDirectOps::kernel(double q) const {
  if (q >= 1.0) return 0.0;
  switch (base_) {
    case SphBaseKernel::Cubic:
      if (q < 0.5) return a_ * (1.0 + q * q * (6.0 * q - 6.0));
      return a_ * 2.0 * (1.0 - q) * (1.0 - q) * (1.0 - q);
    case SphBaseKernel::Quintic: {
      const double t3 = 3.0 - 3.0 * q, t2 = 2.0 - 3.0 * q, t1 = 1.0 - 3.0 * q;
      double v = std::pow(t3, 5);
      if (q < 2.0 / 3.0) v -= 6.0 * std::pow(t2, 5);
      if (q < 1.0 / 3.0) v += 15.0 * std::pow(t1, 5);
      return a_ * v;
    }
    case SphBaseKernel::Wendland: {
      const double u = 1.0 - q;
      return a_ * u * u * u * u * (1.0 + 4.0 * q);
    }
  }
  return 0.0;
}

double SphDirectOps::kernel_deriv(double q) const {
  if (q >= 1.0) return 0.0;
  switch (base_) {
    case SphBaseKernel::Cubic:
      if (q < 0.5) return a_ * (-12.0 * q + 18.0 * q * q);
      return a_ * -6.0 * (1.0 - q) * (1.0 - q);
    case SphBaseKernel::Quintic: {
      const double t3 = 3.0 - 3.0 * q, t2 = 2.0 - 3.0 * q, t1 = 1.0 - 3.0 * q;
      double v = -15.0 * std::pow(t3, 4);
      if (q < 2.0 / 3.0) v += 90.0 * std::pow(t2, 4);
      if (q < 1.0 / 3.0) v += -225.0 * std::pow(t1, 4);
      return a_ * v;
    }
    case SphBaseKernel::Wendland: {
      const double u = 1.0 - q;
      return a_ * -20.0 * q * u * u * u;
    }
  }
  return 0.0;
}

double SphDirectOps::dwh_dr(double r) const {
  double scale = h_;
  for (int a = 1; a <= dim_; ++a) scale *= h_;  // h^{d+1}
  return kernel_deriv(r / h_) / scale;
}

Vec3 SphDirectOps::gradient(const ParticleSystem& sys, const NeighborList& nl,
                            const double* field, std::size_t i) const {
  (void)sys;
  Vec3 g{0.0, 0.0, 0.0};
  for (std::uint64_t k = nl.begin(i); k < nl.end(i); ++k) {
    const double r = nl.r[k];
    const double coef = nl.vj[k] * (field[nl.idx[k]] - field[i]) * (-dwh_dr(r)) / r;
    g[0] += coef * nl.dx[k];
    g[1] += coef * nl.dy[k];
    if (dim_ == 3) g[2] += coef * nl.dz[k];
  }
  return g;
}

double SphDirectOps::laplacian(const ParticleSystem& sys, const NeighborList& nl,
                               const double* field, std::size_t i) const {
  (void)sys;
  double out = 0.0;
  for (std::uint64_t k = nl.begin(i); k < nl.end(i); ++k) {
    const double r = nl.r[k];
    out += nl.vj[k] * (field[i] - field[nl.idx[k]]) / r * dwh_dr(r);
  }
  return 2.0 * out;
}

double MpsDirectOps::kernel_h(double r) const {
  const double q = r / h_;
  if (q <= 0.0 || q >= 1.0) return 0.0;
  double hd = h_;
  for (int a = 1; a < dim_; ++a) hd *= h_;
  return (1.0 / q - 1.0) / hd;
}

Vec3 MpsDirectOps::gradient(const ParticleSystem& sys, const NeighborList& nl,
                            const double* field, std::size_t i) const {
  (void)sys;
  Vec3 g{0.0, 0.0, 0.0};
  for (std::uint64_t k = nl.begin(i); k < nl.end(i); ++k) {
    const double r = nl.r[k];
    const double coef = (field[nl.idx[k]] - field[i]) / (r * r) * kernel_h(r);
    g[0] += coef * nl.dx[k];
    g[1] += coef * nl.dy[k];
    if (dim_ == 3) g[2] += coef * nl.dz[k];
  }
  return (static_cast<double>(dim_) / n0_) * g;
}

double MpsDirectOps::laplacian(const ParticleSystem& sys, const NeighborList& nl,
                               const double* field, std::size_t i) const {
  (void)sys;
  double out = 0.0;
  for (std::uint64_t k = nl.begin(i); k < nl.end(i); ++k)
    out += (field[nl.idx[k]] - field[i]) * kernel_h(nl.r[k]);
  return (2.0 * dim_ / (n0_ * lambda0_)) * out;
}

}  // namespace epm
