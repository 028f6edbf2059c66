#include "epm/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace epm {

double l2_space_norm(const double* field, const double* volume, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += volume[i] * field[i] * field[i];
  return std::sqrt(s);
}

double l2_space_norm_vec(const double* fx, const double* fy, const double* fz,
                         const double* volume, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double m2 = fx[i] * fx[i] + fy[i] * fy[i];
    if (fz) m2 += fz[i] * fz[i];
    s += volume[i] * m2;
  }
  return std::sqrt(s);
}

double SpaceTimeError::relative(SpaceTimeVariant v) const {
  if (v == SpaceTimeVariant::Printed) return std::sqrt(sum_diff_) / std::sqrt(sum_ref_);
  return std::sqrt(sum_diff2_ / sum_ref2_);
}

bool SpaceTimeError::undefined(SpaceTimeVariant v) const {
  return v == SpaceTimeVariant::Printed ? !(sum_ref_ > 0.0) : !(sum_ref2_ > 0.0);
}

void mean_shift_pressure(const double* p, const double* volume, std::size_t n, double* out) {
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += volume[i] * p[i];
  for (std::size_t i = 0; i < n; ++i) out[i] = p[i] - mean;
}

double convergence_rate(double e1, double e2, double h1, double h2) {
  if (!(e1 > 0.0) || !(e2 > 0.0) || !(h1 > 0.0) || !(h2 > 0.0) || h1 == h2)
    throw std::invalid_argument("convergence_rate: errors and radii must be positive, h1 != h2");
  return std::log(e1 / e2) / std::log(h1 / h2);
}

}  // namespace epm
