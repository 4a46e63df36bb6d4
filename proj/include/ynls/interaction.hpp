#pragma once

// Shared enumeration engine for (2k+1)-linear interaction sums on the integer
// lattice:
//
//   out(n) = sum_{n = n_1 - n_2 + ... + n_{2k+1}} W(Omega) prod_j J_j f_j(n_j),
//   Omega  = |n|^2 - |n_1|^2 + |n_2|^2 - ... - |n_{2k+1}|^2,
//
// with J_j conjugation on even slots (identity for real data). Inputs live on
// [-n_in, n_in]^d, outputs on [-n_out, n_out]^d. The last two slots are
// reduced by the SIMD kernels: along the innermost axis Omega is affine in the
// summation index, so W is read with a constant stride.

#include <complex>
#include <span>

namespace ynls {

/// Weight table indexed by Omega in [-radius, radius]; `center` points at Omega = 0.
template <class T>
struct OmegaWeights {
  const T* center = nullptr;
  long radius = 0;
};

/// Largest |Omega| that can occur for the given boxes.
long interaction_omega_bound(int d, int k, int n_in, int n_out);

/// out must hold (2 n_out + 1)^d entries and is overwritten. An empty `weights`
/// (center == nullptr) means W = 1. Throws if the weight table is too short.
template <class T>
void interaction_sum(int d, int n_in, std::span<const T* const> slots, int n_out, OmegaWeights<T> weights,
                     std::span<T> out);

extern template void interaction_sum<std::complex<double>>(int, int, std::span<const std::complex<double>* const>,
                                                           int, OmegaWeights<std::complex<double>>,
                                                           std::span<std::complex<double>>);
extern template void interaction_sum<double>(int, int, std::span<const double* const>, int, OmegaWeights<double>,
                                             std::span<double>);

}  // namespace ynls
