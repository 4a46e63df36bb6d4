#pragma once

// The (2k+1)-linear increment of the interaction-picture nonlinearity,
//
//   X_{s;t}(psi_1, ..., psi_{2k+1})
//     = -i int_s^t U^{-w}(r) N(U^w(r) psi_1, ..., U^w(r) psi_{2k+1}) dr,
//
// evaluated in Fourier space: each interaction n = sum zeta_j n_j carries the
// weight Phi_t(Omega) - Phi_s(Omega) read from a precomputed table.

#include <cstdint>
#include <memory>
#include <span>

#include "ynls/phi.hpp"
#include "ynls/spectral.hpp"

namespace ynls {

struct YoungKernelConfig {
  int d = 1;
  int k = 1;
  int N = 0;
  std::shared_ptr<const OscillatoryTable> table;

  const std::vector<double>& times() const { return table->times; }
  /// Row of `t` in the table grid; throws if t is not a grid time.
  std::size_t time_index(double t) const;
};

/// Validates the desk-scale caps (d=1: N<=32 for k=1, N<=10 for k=2; d=2, k=1:
/// N<=8; other (d, k): at most 17^6 interactions per output box) and the table
/// coverage mu_max >= (2k+2) d N^2. Throws ConfigError.
YoungKernelConfig make_kernel_config(int d, int k, int N, std::shared_ptr<const OscillatoryTable> table,
                                     bool override_caps = false);

void check_desk_caps(int d, int k, int N, bool override_caps);

/// Table with mu_max = (2k+2) d N^2 on `times`.
std::shared_ptr<const OscillatoryTable> make_kernel_table(const SamplePath& path, int d, int k, int N,
                                                          std::span<const double> times);

SpectralState x_increment(const YoungKernelConfig& cfg, std::size_t s_idx, std::size_t t_idx,
                          std::span<const SpectralState> states);

SpectralState x_increment(const YoungKernelConfig& cfg, double s, double t, std::span<const SpectralState> states);

/// X_{s;t}(psi, ..., psi).
SpectralState x_increment(const YoungKernelConfig& cfg, std::size_t s_idx, std::size_t t_idx,
                          const SpectralState& psi);

/// ||X_{s;t}(psi...)||_{H^s} / (|t - s|^gamma prod ||psi_j||_{H^s}).
double x_ratio(const YoungKernelConfig& cfg, double gamma, double s, std::size_t s_idx, std::size_t t_idx,
               std::span<const SpectralState> states);

/// Grid pairs used by x_norm_estimate: every pair when the grid has at most 33
/// times, else dyadic lags with up to 8 evenly spaced starts each.
std::vector<std::pair<std::size_t, std::size_t>> kernel_pairs(std::size_t rows);

/// Lower bound on the C^gamma operator norm of X on H^s: maximum of x_ratio
/// over `trials` draws of random_state inputs and over kernel_pairs.
double x_norm_estimate(const YoungKernelConfig& cfg, double gamma, double s, int trials, std::uint64_t seed);

}  // namespace ynls
