#pragma once

// Inner-loop kernels for the interaction sums. Each kernel has a portable
// scalar reference and, on x86-64, an AVX2/FMA variant. The variant is picked
// once at startup from the CPU feature set; YNLS_ISA=scalar forces the
// reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace ynls::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;

  // sum_i conj(a[i]) * b[i]
  cplx (*cdot_conj)(const cplx* a, const cplx* b, std::size_t n);

  // sum_i conj(a[i]) * b[i] * w[i * stride]; stride may be zero or negative
  cplx (*cdot_conj_strided)(const cplx* a, const cplx* b, const cplx* w,
                            std::ptrdiff_t stride, std::size_t n);

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  // sum_i a[i] * b[i] * w[i * stride]
  double (*dot_strided)(const double* a, const double* b, const double* w,
                        std::ptrdiff_t stride, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Kernel table for `isa`, or nullptr if it was not compiled in or the CPU
/// lacks the instructions.
const KernelTable* kernels_for(Isa isa);

bool isa_available(Isa isa);

/// The active table used by the library.
const KernelTable& kernels();

/// Override the active table (tests, benchmarks). Throws if unavailable.
void set_active_isa(Isa isa);

std::string_view isa_name(Isa isa);

namespace detail {
#ifdef YNLS_HAVE_AVX2
const KernelTable& avx2_kernels();
#endif
}  // namespace detail

}  // namespace ynls::simd
