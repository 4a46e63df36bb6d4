#pragma once

// Real modulation paths w on [0, T]. Paths are piecewise linear between grid
// nodes and normalized so that w(0) = 0; a constant shift removed by the
// normalization is kept in `offset` (physical path = values + offset).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ynls {

enum class PathKind { linear, constant, fbm, modulated, external };

std::string to_string(PathKind kind);
PathKind path_kind_from_string(const std::string& s);

struct SamplePath {
  PathKind kind = PathKind::external;
  std::vector<double> t;  // strictly increasing, t.front() == 0
  std::vector<double> w;  // w.front() == 0
  double offset = 0.0;
  // Generator detail, e.g. which fBm sampler ran ("circulant" or "cholesky").
  std::string method;

  double horizon() const { return t.back(); }
  std::size_t segments() const { return t.size() - 1; }
};

/// Throws std::invalid_argument unless the SamplePath invariants hold.
void validate(const SamplePath& path);

/// Build a path from raw samples of the physical w; shifts so w(0) = 0 and
/// records the shift as the offset.
SamplePath path_from_samples(std::vector<double> t, std::vector<double> w,
                             PathKind kind = PathKind::external);

SamplePath make_linear_path(double T, int M);
SamplePath make_constant_path(double c, double T, int M);

enum class FbmMethod { circulant, cholesky };

/// Fractional Brownian motion on the uniform grid with M steps (M a power of
/// two). Uses circulant embedding of the fractional Gaussian noise covariance
/// and falls back to a Cholesky factor if the embedding is not nonnegative.
SamplePath make_fbm_path(double H, double T, int M, std::uint64_t seed,
                         FbmMethod preferred = FbmMethod::circulant);

/// Eigenvalues of the size-2M circulant embedding of unit-step fGn.
std::vector<double> fgn_circulant_eigenvalues(double H, int M);

/// Autocovariance of unit-step fractional Gaussian noise at lag k.
double fgn_autocovariance(double H, long k);

/// w(t) = int_0^t eps^{-1} m(r / eps^2) dr with m tabulated at x_i = i / L on
/// [0, 1), linearly interpolated and extended periodically. Integrated in
/// closed form; requires eps^2 >= 4 T / M.
SamplePath make_modulated_path(std::span<const double> profile, double eps, double T, int M);

/// Piecewise-linear interpolant of the normalized path (offset not applied).
double eval_path(const SamplePath& path, double t);

/// Index j of the segment [t_j, t_{j+1}] containing t (the last segment for t = T).
std::size_t segment_index(const SamplePath& path, double t);

}  // namespace ynls
