#pragma once

// Truncated Fourier representation on the torus [0, 2 pi)^d. Modes n lie in
// the box [-N, N]^d, stored row-major with the last coordinate fastest.
// Coefficients are those of the orthonormal basis e^{i n.x} for the averaged
// inner product, so hs_norm(., 0) is the Euclidean norm of the coefficients.

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace ynls {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 4;

using ModeIndex = std::vector<int>;

struct ModeBox {
  int d = 1;
  int N = 0;

  ModeBox() = default;
  ModeBox(int dim, int radius);

  int side() const { return 2 * N + 1; }
  std::size_t size() const;
  bool contains(std::span<const int> n) const;
  std::size_t index(std::span<const int> n) const;
  ModeIndex mode(std::size_t idx) const;
  long norm2(std::size_t idx) const;

  bool operator==(const ModeBox&) const = default;
};

class SpectralState {
 public:
  SpectralState() = default;
  SpectralState(int d, int N);
  explicit SpectralState(ModeBox box);

  /// c at mode m, zero elsewhere.
  static SpectralState delta(int d, int N, std::span<const int> m, cplx c = 1.0);
  static SpectralState delta(int d, int N, std::initializer_list<int> m, cplx c = 1.0);

  const ModeBox& box() const { return box_; }
  int dim() const { return box_.d; }
  int radius() const { return box_.N; }
  std::size_t size() const { return coeffs_.size(); }

  cplx& operator[](std::size_t i) { return coeffs_[i]; }
  const cplx& operator[](std::size_t i) const { return coeffs_[i]; }
  cplx& at(std::span<const int> n) { return coeffs_[box_.index(n)]; }
  const cplx& at(std::span<const int> n) const { return coeffs_[box_.index(n)]; }
  cplx& at(std::initializer_list<int> n) { return at(std::span<const int>(n.begin(), n.size())); }
  const cplx& at(std::initializer_list<int> n) const { return at(std::span<const int>(n.begin(), n.size())); }

  std::span<cplx> coeffs() { return coeffs_; }
  std::span<const cplx> coeffs() const { return coeffs_; }

  SpectralState& operator+=(const SpectralState& o);
  SpectralState& operator-=(const SpectralState& o);
  SpectralState& operator*=(cplx a);

 private:
  ModeBox box_;
  std::vector<cplx> coeffs_;
};

SpectralState operator+(SpectralState a, const SpectralState& b);
SpectralState operator-(SpectralState a, const SpectralState& b);
SpectralState operator*(cplx a, SpectralState b);

/// (sum_n <n>^{2s} |c(n)|^2)^{1/2}, <n> = (1 + |n|^2)^{1/2}.
double hs_norm(const SpectralState& state, double s);

/// Conjugation map J: c_J(n) = conj(c(-n)).
SpectralState conjugate_reflection(const SpectralState& state);

enum class Direction { forward, inverse };

/// Multiply c(n) by exp(-i |n|^2 w) (forward) or exp(+i |n|^2 w) (inverse).
SpectralState apply_U(const SpectralState& state, double w, Direction dir);

/// Galerkin-truncated product (prod_{odd j} phi_j)(prod_{even j} conj phi_j)
/// of 2k+1 states sharing one mode box (slots counted from 1).
SpectralState nonlinearity(std::span<const SpectralState> states);

/// |n|^2 - sum_j zeta_j |n_j|^2 with zeta = +, -, +, ..., +.
long resonance_offset(std::span<const int> n, std::span<const ModeIndex> slots);

/// c(n) = g(n) / <n>^{s + d/2 + 0.01}, g i.i.d. standard complex Gaussian.
SpectralState random_state(int d, int N, double s, std::uint64_t seed);

/// Largest |Omega| over Galerkin interactions in the box [-N, N]^d.
long max_resonance_offset(int d, int k, int N);

/// Coefficients on the smaller box [-N, N]^d (N <= state radius).
SpectralState restrict_to_box(const SpectralState& state, int N);
/// Zero extension to the larger box [-N, N]^d (N >= state radius).
SpectralState embed_in_box(const SpectralState& state, int N);

void require_same_box(std::span<const SpectralState> states);

}  // namespace ynls
