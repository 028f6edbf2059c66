// AVX2 variants of the batch kernels. Each operation replicates the scalar
// reference arithmetic lane-for-lane (same operation order, no FMA), so
// outputs are bitwise identical to backend_scalar.cpp. Remainders of the
// 4-wide loops run through the scalar kernels.

#include "backend_impl.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace epm {

namespace {

const BatchOps& scalar() { return scalar_batch_ops(); }

inline __m256d horner4(const double* c, int deg, __m256d q) {
  __m256d v = _mm256_set1_pd(c[deg]);
  for (int i = deg - 1; i >= 0; --i)
    v = _mm256_add_pd(_mm256_mul_pd(v, q), _mm256_set1_pd(c[i]));
  return v;
}

void eval_wh_avx2(const CompiledWeight& w, double h, double inv_h, double inv_hd, const double* r,
                  std::size_t n, double* out) {
  const __m256d vh = _mm256_set1_pd(h);
  const __m256d vinv_h = _mm256_set1_pd(inv_h);
  const __m256d vinv_hd = _mm256_set1_pd(inv_hd);
  const __m256d vone = _mm256_set1_pd(1.0);
  const __m256d vzero = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vr = _mm256_loadu_pd(r + k);
    const __m256d support = _mm256_cmp_pd(vr, vh, _CMP_LT_OQ);
    const __m256d q = _mm256_mul_pd(vr, vinv_h);
    __m256d acc = vzero;
    for (int p = 0; p < w.npieces; ++p) {
      const __m256d in_lo = _mm256_cmp_pd(q, _mm256_set1_pd(w.knots[p]), _CMP_GE_OQ);
      const __m256d in_hi = _mm256_cmp_pd(q, _mm256_set1_pd(w.knots[p + 1]), _CMP_LT_OQ);
      const __m256d mask = _mm256_and_pd(in_lo, in_hi);
      if (_mm256_movemask_pd(mask) == 0) continue;
      __m256d v = w.degA[p] >= 0 ? horner4(w.A[p].data(), w.degA[p], q) : vzero;
      if (w.degB[p] >= 0 || w.c2[p] != 0.0) {
        const __m256d inv_q = _mm256_div_pd(vone, q);
        __m256d u = w.degB[p] >= 0 ? horner4(w.B[p].data(), w.degB[p], q) : vzero;
        if (w.c2[p] != 0.0)
          u = _mm256_add_pd(u, _mm256_mul_pd(_mm256_set1_pd(w.c2[p]), inv_q));
        v = _mm256_add_pd(v, _mm256_mul_pd(u, inv_q));
      }
      acc = _mm256_blendv_pd(acc, v, mask);
    }
    // q == 0 lanes take the defined origin value.
    const __m256d at_origin = _mm256_cmp_pd(q, vzero, _CMP_EQ_OQ);
    acc = _mm256_blendv_pd(acc, _mm256_set1_pd(w.w0), at_origin);
    const __m256d res = _mm256_and_pd(_mm256_mul_pd(acc, vinv_hd), support);
    _mm256_storeu_pd(out + k, res);
  }
  if (k < n) scalar().eval_wh(w, h, inv_h, inv_hd, r + k, n - k, out + k);
}

void gather_avx2(const double* src, const std::int32_t* idx, std::size_t n, double* out) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    _mm256_storeu_pd(out + k, _mm256_i32gather_pd(src, vi, 8));
  }
  if (k < n) scalar().gather(src, idx + k, n - k, out + k);
}

void pair_terms_diff_avx2(const double* vj, const double* pj, double phi_i, const double* w,
                          std::size_t n, double* t) {
  const __m256d vphi = _mm256_set1_pd(phi_i);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pj + k), vphi);
    const __m256d s = _mm256_mul_pd(_mm256_loadu_pd(vj + k), d);
    _mm256_storeu_pd(t + k, _mm256_mul_pd(s, _mm256_loadu_pd(w + k)));
  }
  if (k < n) scalar().pair_terms_diff(vj + k, pj + k, phi_i, w + k, n - k, t + k);
}

void pair_terms_plus_avx2(const double* vj, const double* pj, double phi_i, const double* w,
                          std::size_t n, double* t) {
  const __m256d vphi = _mm256_set1_pd(phi_i);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_add_pd(_mm256_loadu_pd(pj + k), vphi);
    const __m256d s = _mm256_mul_pd(_mm256_loadu_pd(vj + k), d);
    _mm256_storeu_pd(t + k, _mm256_mul_pd(s, _mm256_loadu_pd(w + k)));
  }
  if (k < n) scalar().pair_terms_plus(vj + k, pj + k, phi_i, w + k, n - k, t + k);
}

void directional_terms_avx2(const double* t, const double* r, const double* dx, const double* dy,
                            const double* dz, std::size_t n, double* tx, double* ty, double* tz) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d s = _mm256_div_pd(_mm256_loadu_pd(t + k), _mm256_loadu_pd(r + k));
    _mm256_storeu_pd(tx + k, _mm256_mul_pd(s, _mm256_loadu_pd(dx + k)));
    _mm256_storeu_pd(ty + k, _mm256_mul_pd(s, _mm256_loadu_pd(dy + k)));
    if (tz) _mm256_storeu_pd(tz + k, _mm256_mul_pd(s, _mm256_loadu_pd(dz + k)));
  }
  if (k < n) scalar().directional_terms(t + k, r + k, dx + k, dy + k, dz ? dz + k : nullptr,
                                        n - k, tx + k, ty + k, tz ? tz + k : nullptr);
}

void weighted_volume_avx2(const double* vj, const double* w, std::size_t n, double* t) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(t + k, _mm256_mul_pd(_mm256_loadu_pd(vj + k), _mm256_loadu_pd(w + k)));
  if (k < n) scalar().weighted_volume(vj + k, w + k, n - k, t + k);
}

void weighted_field_avx2(const double* vj, const double* pj, const double* w, std::size_t n,
                         double* t) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d s = _mm256_mul_pd(_mm256_loadu_pd(vj + k), _mm256_loadu_pd(pj + k));
    _mm256_storeu_pd(t + k, _mm256_mul_pd(s, _mm256_loadu_pd(w + k)));
  }
  if (k < n) scalar().weighted_field(vj + k, pj + k, w + k, n - k, t + k);
}

}  // namespace

const BatchOps& avx2_batch_ops() {
  static const BatchOps ops{eval_wh_avx2,        gather_avx2,
                            pair_terms_diff_avx2, pair_terms_plus_avx2,
                            directional_terms_avx2, weighted_volume_avx2,
                            weighted_field_avx2};
  return ops;
}

}  // namespace epm

#else

namespace epm {

const BatchOps& avx2_batch_ops() { return scalar_batch_ops(); }

}  // namespace epm

#endif
