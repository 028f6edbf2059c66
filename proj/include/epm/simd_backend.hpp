#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "epm/weights.hpp"

namespace epm {

// Inner pairwise loops run through one of these kernel sets, selected once at
// runtime. The scalar set is the reference; the AVX2 set mirrors its
// arithmetic sequence element-for-element (no FMA, identical operation
// order), so both backends produce bitwise-identical results. Equivalence
// tests assert exact equality.
enum class Backend { Scalar, Avx2 };

struct BatchOps {
  // out[k] = (r[k] < h) ? h^{-d} w(r[k]/h) : 0, evaluated as piecewise
  // A(q) + (B(q) + c2/q)/q with q = r*inv_h.
  void (*eval_wh)(const CompiledWeight& w, double h, double inv_h, double inv_hd,
                  const double* r, std::size_t n, double* out);
  // out[k] = src[idx[k]]
  void (*gather)(const double* src, const std::int32_t* idx, std::size_t n, double* out);
  // t[k] = vj[k] * (pj[k] - phi_i) * w[k]
  void (*pair_terms_diff)(const double* vj, const double* pj, double phi_i, const double* w,
                          std::size_t n, double* t);
  // t[k] = vj[k] * (pj[k] + phi_i) * w[k]
  void (*pair_terms_plus)(const double* vj, const double* pj, double phi_i, const double* w,
                          std::size_t n, double* t);
  // s[k] = t[k] / r[k]; tx[k] = s[k]*dx[k]; ty[k] = s[k]*dy[k]; tz optional
  void (*directional_terms)(const double* t, const double* r, const double* dx, const double* dy,
                            const double* dz, std::size_t n, double* tx, double* ty, double* tz);
  // t[k] = vj[k] * w[k]
  void (*weighted_volume)(const double* vj, const double* w, std::size_t n, double* t);
  // t[k] = vj[k] * pj[k] * w[k]
  void (*weighted_field)(const double* vj, const double* pj, const double* w, std::size_t n,
                         double* t);
};

bool avx2_available();
Backend detect_backend();            // honors EPM_BACKEND (scalar | avx2 | auto)
Backend active_backend();
void force_backend(Backend b);
std::string backend_name(Backend b);

const BatchOps& batch_ops();                 // active backend
const BatchOps& batch_ops(Backend backend);  // explicit choice (tests)

// Reference-coordinate evaluation (h = 1) used by quadrature and eval().
double scalar_eval_compiled(const CompiledWeight& w, double q);

// Sequential sum in slot order; keeps accumulation deterministic and
// backend-independent.
inline double ordered_sum(const double* t, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += t[k];
  return s;
}

}  // namespace epm
