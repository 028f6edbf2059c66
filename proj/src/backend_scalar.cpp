// Scalar reference kernels. The AVX2 variants in backend_avx2.cpp mirror this
// arithmetic exactly; any change here must be replicated there.

#include "epm/simd_backend.hpp"

namespace epm {

namespace {

inline double horner(const double* c, int deg, double q) {
  double v = c[deg];
  for (int i = deg - 1; i >= 0; --i) v = v * q + c[i];
  return v;
}

inline double eval_piece(const CompiledWeight& w, int p, double q) {
  double v = w.degA[p] >= 0 ? horner(w.A[p].data(), w.degA[p], q) : 0.0;
  if (w.degB[p] >= 0 || w.c2[p] != 0.0) {
    const double inv_q = 1.0 / q;
    double u = w.degB[p] >= 0 ? horner(w.B[p].data(), w.degB[p], q) : 0.0;
    if (w.c2[p] != 0.0) u = u + w.c2[p] * inv_q;
    v = v + u * inv_q;
  }
  return v;
}

void eval_wh_scalar(const CompiledWeight& w, double h, double inv_h, double inv_hd,
                    const double* r, std::size_t n, double* out) {
  for (std::size_t k = 0; k < n; ++k) {
    const double rk = r[k];
    double v = 0.0;
    if (rk < h) {
      const double q = rk * inv_h;
      if (q == 0.0) {
        v = w.w0;
      } else {
        for (int p = 0; p < w.npieces; ++p) {
          if (q >= w.knots[p] && q < w.knots[p + 1]) {
            v = eval_piece(w, p, q);
            break;
          }
        }
      }
    }
    out[k] = v * inv_hd;
  }
}

void gather_scalar(const double* src, const std::int32_t* idx, std::size_t n, double* out) {
  for (std::size_t k = 0; k < n; ++k) out[k] = src[idx[k]];
}

void pair_terms_diff_scalar(const double* vj, const double* pj, double phi_i, const double* w,
                            std::size_t n, double* t) {
  for (std::size_t k = 0; k < n; ++k) t[k] = vj[k] * (pj[k] - phi_i) * w[k];
}

void pair_terms_plus_scalar(const double* vj, const double* pj, double phi_i, const double* w,
                            std::size_t n, double* t) {
  for (std::size_t k = 0; k < n; ++k) t[k] = vj[k] * (pj[k] + phi_i) * w[k];
}

void directional_terms_scalar(const double* t, const double* r, const double* dx, const double* dy,
                              const double* dz, std::size_t n, double* tx, double* ty, double* tz) {
  for (std::size_t k = 0; k < n; ++k) {
    const double s = t[k] / r[k];
    tx[k] = s * dx[k];
    ty[k] = s * dy[k];
    if (tz) tz[k] = s * dz[k];
  }
}

void weighted_volume_scalar(const double* vj, const double* w, std::size_t n, double* t) {
  for (std::size_t k = 0; k < n; ++k) t[k] = vj[k] * w[k];
}

void weighted_field_scalar(const double* vj, const double* pj, const double* w, std::size_t n,
                           double* t) {
  for (std::size_t k = 0; k < n; ++k) t[k] = vj[k] * pj[k] * w[k];
}

}  // namespace

const BatchOps& scalar_batch_ops() {
  static const BatchOps ops{eval_wh_scalar,        gather_scalar,
                            pair_terms_diff_scalar, pair_terms_plus_scalar,
                            directional_terms_scalar, weighted_volume_scalar,
                            weighted_field_scalar};
  return ops;
}

double scalar_eval_compiled(const CompiledWeight& w, double q) {
  double out;
  eval_wh_scalar(w, 1.0, 1.0, 1.0, &q, 1, &out);
  return out;
}

}  // namespace epm
