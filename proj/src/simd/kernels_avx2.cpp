// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "ynls/simd/kernels.hpp"

namespace ynls::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Lanes hold [re0, im0, re1, im1]. For conj(a)*b we keep
//   pp = a*b          -> [ar br, ai bi, ...]   re = sum(pp)
//   px = a*swap(b)    -> [ar bi, ai br, ...]   im = sum(even) - sum(odd)
inline cplx finish_conj(__m256d pp, __m256d px) {
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  return {hsum(pp), hsum(_mm256_mul_pd(px, sign))};
}

cplx cdot_conj_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  __m256d pp0 = _mm256_setzero_pd(), px0 = _mm256_setzero_pd();
  __m256d pp1 = _mm256_setzero_pd(), px1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
    const __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
    const __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
    pp0 = _mm256_fmadd_pd(va0, vb0, pp0);
    px0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), px0);
    pp1 = _mm256_fmadd_pd(va1, vb1, pp1);
    px1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), px1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    pp0 = _mm256_fmadd_pd(va, vb, pp0);
    px0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), px0);
  }
  cplx acc = finish_conj(_mm256_add_pd(pp0, pp1), _mm256_add_pd(px0, px1));
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    acc += cplx(ar * br + ai * bi, ar * bi - ai * br);
  }
  return acc;
}

cplx cdot_conj_strided_avx2(const cplx* a, const cplx* b, const cplx* w,
                            std::ptrdiff_t stride, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  const auto* pw = reinterpret_cast<const double*>(w);
  const long long s2 = 2 * static_cast<long long>(stride);
  __m256i idx = _mm256_set_epi64x(s2 + 1, s2, 1, 0);
  const __m256i step = _mm256_set1_epi64x(2 * s2);
  __m256d pp = _mm256_setzero_pd(), px = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vw = _mm256_i64gather_pd(pw, idx, 8);
    idx = _mm256_add_epi64(idx, step);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d wr = _mm256_permute_pd(vw, 0b0000);
    const __m256d wi = _mm256_permute_pd(vw, 0b1111);
    const __m256d bs = _mm256_permute_pd(vb, 0b0101);
    const __m256d p = _mm256_fmaddsub_pd(vb, wr, _mm256_mul_pd(bs, wi));
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    pp = _mm256_fmadd_pd(va, p, pp);
    px = _mm256_fmadd_pd(va, _mm256_permute_pd(p, 0b0101), px);
  }
  cplx acc = finish_conj(pp, px);
  for (; i < n; ++i) {
    const cplx wi = w[static_cast<std::ptrdiff_t>(i) * stride];
    const double br = b[i].real(), bi = b[i].imag();
    const double pr = br * wi.real() - bi * wi.imag();
    const double pim = br * wi.imag() + bi * wi.real();
    const double ar = a[i].real(), ai = a[i].imag();
    acc += cplx(ar * pr + ai * pim, ar * pim - ai * pr);
  }
  return acc;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double dot_strided_avx2(const double* a, const double* b, const double* w,
                        std::ptrdiff_t stride, std::size_t n) {
  const long long s = stride;
  __m256i idx = _mm256_set_epi64x(3 * s, 2 * s, s, 0);
  const __m256i step = _mm256_set1_epi64x(4 * s);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vw = _mm256_i64gather_pd(w, idx, 8);
    idx = _mm256_add_epi64(idx, step);
    const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(ab, vw, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += a[i] * b[i] * w[static_cast<std::ptrdiff_t>(i) * stride];
  return out;
}

constexpr KernelTable kAvx2{Isa::avx2, cdot_conj_avx2, cdot_conj_strided_avx2,
                            dot_avx2, dot_strided_avx2};

}  // namespace

namespace detail {
const KernelTable& avx2_kernels() { return kAvx2; }
}  // namespace detail

}  // namespace ynls::simd
