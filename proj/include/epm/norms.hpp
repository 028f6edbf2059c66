#pragma once

#include <cstddef>
#include <vector>

namespace epm {

// Volume-weighted discrete l2 norm: (sum_j V_j |phi_j|^2)^{1/2}.
double l2_space_norm(const double* field, const double* volume, std::size_t n);
// Vector fields use the per-particle Euclidean magnitude.
double l2_space_norm_vec(const double* fx, const double* fy, const double* fz,
                         const double* volume, std::size_t n);

enum class SpaceTimeVariant {
  Printed,  // (sum_k tau ||phi^k||)^{1/2}, as the formula is printed
  Squared   // (sum_k tau ||phi^k||^2)^{1/2}, the conventional Bochner norm
};

// Accumulates per-step norms of a difference and a reference and reports the
// relative space-time error under either variant.
class SpaceTimeError {
 public:
  void add(double tau, double diff_norm, double ref_norm) {
    sum_diff_ += tau * diff_norm;
    sum_ref_ += tau * ref_norm;
    sum_diff2_ += tau * diff_norm * diff_norm;
    sum_ref2_ += tau * ref_norm * ref_norm;
    ++steps_;
  }
  double relative(SpaceTimeVariant v) const;
  bool undefined(SpaceTimeVariant v) const;
  int steps() const { return steps_; }

 private:
  double sum_diff_ = 0.0, sum_ref_ = 0.0, sum_diff2_ = 0.0, sum_ref2_ = 0.0;
  int steps_ = 0;
};

// p_i - sum_j V_j p_j (volume-weighted mean shift; exact zero mean when
// sum V = 1).
void mean_shift_pressure(const double* p, const double* volume, std::size_t n, double* out);

// log(e1/e2) / log(h1/h2)
double convergence_rate(double e1, double e2, double h1, double h2);

}  // namespace epm
