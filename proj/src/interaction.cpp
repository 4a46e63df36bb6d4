#include "ynls/interaction.hpp"

#include <array>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "ynls/parallel.hpp"
#include "ynls/simd/kernels.hpp"
#include "ynls/spectral.hpp"

namespace ynls {

long interaction_omega_bound(int d, int k, int n_in, int n_out) {
  const long in2 = static_cast<long>(n_in) * n_in;
  const long out2 = static_cast<long>(n_out) * n_out;
  return d * out2 + (2L * k + 1) * d * in2;
}

namespace {

using Coords = std::array<int, kMaxDim>;

template <class T>
T conj_if_complex(T v) {
  if constexpr (std::is_same_v<T, std::complex<double>>)
    return std::conj(v);
  else
    return v;
}

template <class T>
T inner(const simd::KernelTable& K, const T* a, const T* b, const T* w, std::ptrdiff_t stride, std::size_t n) {
  if constexpr (std::is_same_v<T, std::complex<double>>)
    return w ? K.cdot_conj_strided(a, b, w, stride, n) : K.cdot_conj(a, b, n);
  else
    return w ? K.dot_strided(a, b, w, stride, n) : K.dot(a, b, n);
}

template <class T>
struct Engine {
  int d;
  int n_in;
  int k;
  std::span<const T* const> slots;
  OmegaWeights<T> weights;
  const simd::KernelTable& K;

  std::vector<Coords> in_modes;
  std::vector<long> in_norm2;
  Coords in_stride{};
  int side_in;

  Engine(int d_, int n_in_, std::span<const T* const> slots_, OmegaWeights<T> w)
      : d(d_), n_in(n_in_), k(static_cast<int>(slots_.size() - 1) / 2), slots(slots_), weights(w),
        K(simd::kernels()), side_in(2 * n_in_ + 1) {
    const ModeBox box(d, n_in);
    in_modes.resize(box.size());
    in_norm2.resize(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
      const ModeIndex m = box.mode(i);
      Coords c{};
      for (int a = 0; a < d; ++a) c[a] = m[a];
      in_modes[i] = c;
      in_norm2[i] = box.norm2(i);
    }
    long s = 1;
    for (int a = d - 1; a >= 0; --a) {
      in_stride[a] = static_cast<int>(s);
      s *= side_in;
    }
  }

  std::size_t in_index(const Coords& m) const {
    std::size_t idx = 0;
    for (int a = 0; a < d; ++a) idx += static_cast<std::size_t>(m[a] + n_in) * in_stride[a];
    return idx;
  }

  // Last two slots: conj(f_{2k}(m)) f_{2k+1}(m + v) W(Omega) summed over m.
  T tail(const Coords& v, long base) const {
    Coords lo{}, hi{};
    long v2 = 0;
    for (int a = 0; a < d; ++a) {
      if (v[a] > 2 * n_in || v[a] < -2 * n_in) return T{};
      lo[a] = std::max(-n_in, -n_in - v[a]);
      hi[a] = std::min(n_in, n_in - v[a]);
      v2 += static_cast<long>(v[a]) * v[a];
    }
    base -= v2;
    const T* fa = slots[2 * k - 1];
    const T* fb = slots[2 * k];
    const int last = d - 1;
    const auto len = static_cast<std::size_t>(hi[last] - lo[last] + 1);
    const std::ptrdiff_t stride = -2L * v[last];

    T acc{};
    Coords m = lo;
    for (;;) {
      long omega0 = base;
      for (int a = 0; a < last; ++a) omega0 -= 2L * m[a] * v[a];
      omega0 -= 2L * lo[last] * v[last];
      Coords mv{};
      for (int a = 0; a < d; ++a) mv[a] = m[a] + v[a];
      const T* pa = fa + in_index(m);
      const T* pb = fb + in_index(mv);
      const T* pw = weights.center ? weights.center + omega0 : nullptr;
      acc += inner<T>(K, pa, pb, pw, stride, len);
      // odometer over the leading coordinates
      int a = last - 1;
      for (; a >= 0; --a) {
        if (++m[a] <= hi[a]) break;
        m[a] = lo[a];
      }
      if (a < 0) break;
    }
    return acc;
  }

  // Outer slots 0 .. 2k-2 (0-based), accumulating q = sum zeta_j n_j,
  // R = sum zeta_j |n_j|^2 and the product of slot values.
  void outer(int level, const Coords& n, long n2, Coords q, long R, T P, T& acc) const {
    if (level == 2 * k - 1) {
      Coords v{};
      for (int a = 0; a < d; ++a) v[a] = n[a] - q[a];
      acc += P * tail(v, n2 - R);
      return;
    }
    const bool plus = level % 2 == 0;
    const T* f = slots[level];
    for (std::size_t i = 0; i < in_modes.size(); ++i) {
      const T val = f[i];
      if (val == T{}) continue;
      Coords q2 = q;
      for (int a = 0; a < d; ++a) q2[a] += plus ? in_modes[i][a] : -in_modes[i][a];
      outer(level + 1, n, n2, q2, plus ? R + in_norm2[i] : R - in_norm2[i],
            P * (plus ? val : conj_if_complex(val)), acc);
    }
  }
};

}  // namespace

template <class T>
void interaction_sum(int d, int n_in, std::span<const T* const> slots, int n_out, OmegaWeights<T> weights,
                     std::span<T> out) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("interaction_sum: unsupported dimension");
  if (slots.size() < 3 || slots.size() % 2 == 0)
    throw std::invalid_argument("interaction_sum: need 2k+1 >= 3 slots");
  const int k = static_cast<int>(slots.size() - 1) / 2;
  const ModeBox out_box(d, n_out);
  if (out.size() != out_box.size()) throw std::invalid_argument("interaction_sum: output size mismatch");
  if (weights.center && weights.radius < interaction_omega_bound(d, k, n_in, n_out))
    throw std::invalid_argument("interaction_sum: weight table does not cover every resonance offset");

  const Engine<T> engine(d, n_in, slots, weights);
  const long count = static_cast<long>(out_box.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
  for (long o = 0; o < count; ++o) {
    const ModeIndex nm = out_box.mode(static_cast<std::size_t>(o));
    Coords n{};
    long n2 = 0;
    for (int a = 0; a < d; ++a) {
      n[a] = nm[a];
      n2 += static_cast<long>(nm[a]) * nm[a];
    }
    T acc{};
    engine.outer(0, n, n2, Coords{}, 0, T{1}, acc);
    out[static_cast<std::size_t>(o)] = acc;
  }
}

template void interaction_sum<std::complex<double>>(int, int, std::span<const std::complex<double>* const>, int,
                                                    OmegaWeights<std::complex<double>>,
                                                    std::span<std::complex<double>>);
template void interaction_sum<double>(int, int, std::span<const double* const>, int, OmegaWeights<double>,
                                      std::span<double>);

}  // namespace ynls
