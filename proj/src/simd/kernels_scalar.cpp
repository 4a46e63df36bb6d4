#include "ynls/simd/kernels.hpp"

namespace ynls::simd {
namespace {

// Complex products are written out by hand: std::complex operator* carries
// the Annex G inf/nan recovery branch, which blocks vectorization.

cplx cdot_conj_ref(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

cplx cdot_conj_strided_ref(const cplx* a, const cplx* b, const cplx* w,
                           std::ptrdiff_t stride, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx wi = w[static_cast<std::ptrdiff_t>(i) * stride];
    const double br = b[i].real(), bi = b[i].imag();
    const double pr = br * wi.real() - bi * wi.imag();
    const double pi = br * wi.imag() + bi * wi.real();
    const double ar = a[i].real(), ai = a[i].imag();
    re += ar * pr + ai * pi;
    im += ar * pi - ai * pr;
  }
  return {re, im};
}

double dot_ref(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double dot_strided_ref(const double* a, const double* b, const double* w,
                       std::ptrdiff_t stride, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += a[i] * b[i] * w[static_cast<std::ptrdiff_t>(i) * stride];
  return acc;
}

constexpr KernelTable kScalar{Isa::scalar, cdot_conj_ref, cdot_conj_strided_ref,
                              dot_ref, dot_strided_ref};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace ynls::simd
