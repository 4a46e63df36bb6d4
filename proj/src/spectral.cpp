#include "ynls/spectral.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ynls/interaction.hpp"

namespace ynls {

ModeBox::ModeBox(int dim, int radius) : d(dim), N(radius) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("mode box dimension must be in [1, 4]");
  if (radius < 0) throw std::invalid_argument("mode box radius must be >= 0");
}

std::size_t ModeBox::size() const {
  std::size_t s = 1;
  for (int a = 0; a < d; ++a) s *= static_cast<std::size_t>(side());
  return s;
}

bool ModeBox::contains(std::span<const int> n) const {
  if (static_cast<int>(n.size()) != d) return false;
  for (int v : n)
    if (v < -N || v > N) return false;
  return true;
}

std::size_t ModeBox::index(std::span<const int> n) const {
  if (!contains(n)) throw std::out_of_range("mode outside the box");
  std::size_t idx = 0;
  for (int v : n) idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(v + N);
  return idx;
}

ModeIndex ModeBox::mode(std::size_t idx) const {
  ModeIndex n(d);
  for (int a = d - 1; a >= 0; --a) {
    n[a] = static_cast<int>(idx % static_cast<std::size_t>(side())) - N;
    idx /= static_cast<std::size_t>(side());
  }
  return n;
}

long ModeBox::norm2(std::size_t idx) const {
  long s = 0;
  for (int v : mode(idx)) s += static_cast<long>(v) * v;
  return s;
}

SpectralState::SpectralState(int d, int N) : SpectralState(ModeBox(d, N)) {}

SpectralState::SpectralState(ModeBox box) : box_(box), coeffs_(box.size()) {}

SpectralState SpectralState::delta(int d, int N, std::span<const int> m, cplx c) {
  SpectralState s(d, N);
  s.at(m) = c;
  return s;
}

SpectralState SpectralState::delta(int d, int N, std::initializer_list<int> m, cplx c) {
  return delta(d, N, std::span<const int>(m.begin(), m.size()), c);
}

SpectralState& SpectralState::operator+=(const SpectralState& o) {
  if (!(box_ == o.box_)) throw std::invalid_argument("state box mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralState& SpectralState::operator-=(const SpectralState& o) {
  if (!(box_ == o.box_)) throw std::invalid_argument("state box mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralState& SpectralState::operator*=(cplx a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

SpectralState operator+(SpectralState a, const SpectralState& b) { return a += b; }
SpectralState operator-(SpectralState a, const SpectralState& b) { return a -= b; }
SpectralState operator*(cplx a, SpectralState b) { return b *= a; }

double hs_norm(const SpectralState& state, double s) {
  const ModeBox& box = state.box();
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double a2 = std::norm(state[i]);
    if (a2 == 0.0) continue;
    acc += (s == 0.0 ? 1.0 : std::pow(1.0 + static_cast<double>(box.norm2(i)), s)) * a2;
  }
  return std::sqrt(acc);
}

SpectralState conjugate_reflection(const SpectralState& state) {
  SpectralState out(state.box());
  const std::size_t n = state.size();
  // reversing the row-major index maps n to -n
  for (std::size_t i = 0; i < n; ++i) out[i] = std::conj(state[n - 1 - i]);
  return out;
}

SpectralState apply_U(const SpectralState& state, double w, Direction dir) {
  SpectralState out(state.box());
  const double sign = dir == Direction::forward ? -1.0 : 1.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double phase = sign * static_cast<double>(state.box().norm2(i)) * w;
    out[i] = state[i] * cplx(std::cos(phase), std::sin(phase));
  }
  return out;
}

void require_same_box(std::span<const SpectralState> states) {
  if (states.empty()) throw std::invalid_argument("no states given");
  for (const auto& s : states)
    if (!(s.box() == states.front().box())) throw std::invalid_argument("states must share (d, N)");
}

SpectralState nonlinearity(std::span<const SpectralState> states) {
  if (states.size() < 3 || states.size() % 2 == 0)
    throw std::invalid_argument("nonlinearity needs 2k+1 >= 3 states");
  require_same_box(states);
  const ModeBox box = states.front().box();
  std::vector<const cplx*> slots;
  for (const auto& s : states) slots.push_back(s.coeffs().data());
  SpectralState out(box);
  interaction_sum<cplx>(box.d, box.N, slots, box.N, {}, out.coeffs());
  return out;
}

long resonance_offset(std::span<const int> n, std::span<const ModeIndex> slots) {
  auto sq = [](std::span<const int> v) {
    long s = 0;
    for (int x : v) s += static_cast<long>(x) * x;
    return s;
  };
  long omega = sq(n);
  for (std::size_t j = 0; j < slots.size(); ++j) omega -= (j % 2 == 0 ? 1 : -1) * sq(slots[j]);
  return omega;
}

SpectralState random_state(int d, int N, double s, std::uint64_t seed) {
  SpectralState out(d, N);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double decay = s + 0.5 * d + 0.01;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    out[i] = cplx(re, im) / std::pow(1.0 + static_cast<double>(out.box().norm2(i)), 0.5 * decay);
  }
  return out;
}

SpectralState restrict_to_box(const SpectralState& state, int N) {
  if (N > state.radius()) throw std::invalid_argument("restrict_to_box: target box is larger");
  SpectralState out(state.dim(), N);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = state.at(out.box().mode(i));
  return out;
}

SpectralState embed_in_box(const SpectralState& state, int N) {
  if (N < state.radius()) throw std::invalid_argument("embed_in_box: target box is smaller");
  SpectralState out(state.dim(), N);
  for (std::size_t i = 0; i < state.size(); ++i) out.at(state.box().mode(i)) = state[i];
  return out;
}

long max_resonance_offset(int d, int k, int N) { return interaction_omega_bound(d, k, N, N); }

}  // namespace ynls
