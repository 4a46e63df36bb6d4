#pragma once

// Thin RAII layer over FFTW for the padded-grid transforms (split-step
// reference, circulant embedding, test oracles).

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace ynls {

using cplx = std::complex<double>;

class FftPlan {
 public:
  enum class Sign { forward = -1, backward = +1 };

  /// Unnormalized complex DFT on a row-major grid of shape `dims`:
  /// out[j] = sum_l in[l] exp(sign * 2 pi i j.l / L).
  FftPlan(std::vector<int> dims, Sign sign);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  /// In-place transform; data.size() must equal the grid size.
  void execute(std::span<cplx> data) const;

  std::size_t size() const { return size_; }
  const std::vector<int>& dims() const { return dims_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::vector<int> dims_;
  std::size_t size_ = 0;
};

/// Smallest power of two >= n.
int next_pow2(int n);

}  // namespace ynls
