#include "ynls/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace ynls {
namespace {
// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FftPlan::Impl {
  fftw_plan plan = nullptr;
  ~Impl() {
    if (plan) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
  }
};

FftPlan::FftPlan(std::vector<int> dims, Sign sign) : impl_(std::make_unique<Impl>()), dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("FftPlan: empty shape");
  size_ = 1;
  for (int n : dims_) {
    if (n <= 0) throw std::invalid_argument("FftPlan: non-positive extent");
    size_ *= static_cast<std::size_t>(n);
  }
  std::vector<cplx> scratch(size_);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard lock(planner_mutex());
  impl_->plan = fftw_plan_dft(static_cast<int>(dims_.size()), dims_.data(), p, p,
                              sign == Sign::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!impl_->plan) throw std::runtime_error("FftPlan: planner failed");
}

FftPlan::~FftPlan() = default;

FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::execute(std::span<cplx> data) const {
  if (data.size() != size_) throw std::invalid_argument("FftPlan: size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->plan, p, p);
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace ynls
