#include "ynls/young.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ynls/errors.hpp"
#include "ynls/interaction.hpp"

namespace ynls {

std::size_t YoungKernelConfig::time_index(double t) const {
  const auto& ts = table->times;
  const auto it = std::lower_bound(ts.begin(), ts.end(), t - 1e-12 * std::max(1.0, ts.back()));
  if (it == ts.end() || std::abs(*it - t) > 1e-12 * std::max(1.0, ts.back()))
    throw std::invalid_argument("time is not on the kernel table grid");
  return static_cast<std::size_t>(it - ts.begin());
}

void check_desk_caps(int d, int k, int N, bool override_caps) {
  if (d < 1 || d > kMaxDim) throw ConfigError("dimension d must be in [1, 4]");
  if (k < 1) throw ConfigError("nonlinearity index k must be >= 1");
  if (N < 0) throw ConfigError("truncation radius N must be >= 0");
  if (override_caps) return;
  int cap = -1;
  if (d == 1 && k == 1) cap = 32;
  if (d == 1 && k == 2) cap = 10;
  if (d == 2 && k == 1) cap = 8;
  if (cap >= 0) {
    if (N > cap)
      throw ConfigError("N = " + std::to_string(N) + " exceeds the desk-scale cap " + std::to_string(cap) +
                        " for this (d, k); pass the override flag to run anyway");
    return;
  }
  const double interactions = std::pow(2.0 * N + 1.0, d * (2.0 * k + 1.0));
  if (interactions > std::pow(17.0, 6.0))
    throw ConfigError("(2N+1)^{d(2k+1)} interactions exceed the desk-scale budget; pass the override flag");
}

YoungKernelConfig make_kernel_config(int d, int k, int N, std::shared_ptr<const OscillatoryTable> table,
                                     bool override_caps) {
  check_desk_caps(d, k, N, override_caps);
  if (!table) throw ConfigError("kernel config needs a table");
  if (table->mu_max < max_resonance_offset(d, k, N))
    throw ConfigError("table mu_max " + std::to_string(table->mu_max) + " is below the largest resonance offset " +
                      std::to_string(max_resonance_offset(d, k, N)));
  return {d, k, N, std::move(table)};
}

std::shared_ptr<const OscillatoryTable> make_kernel_table(const SamplePath& path, int d, int k, int N,
                                                          std::span<const double> times) {
  return std::make_shared<const OscillatoryTable>(
      build_phi_table(path, static_cast<int>(max_resonance_offset(d, k, N)), times));
}

SpectralState x_increment(const YoungKernelConfig& cfg, std::size_t s_idx, std::size_t t_idx,
                          std::span<const SpectralState> states) {
  if (states.size() != static_cast<std::size_t>(2 * cfg.k + 1))
    throw std::invalid_argument("x_increment needs 2k+1 states");
  require_same_box(states);
  const ModeBox box = states.front().box();
  if (box.d != cfg.d || box.N != cfg.N) throw std::invalid_argument("state box does not match the kernel config");
  const OscillatoryTable& tab = *cfg.table;
  if (s_idx > t_idx || t_idx >= tab.rows()) throw std::invalid_argument("x_increment: need s <= t on the grid");

  const auto rs = tab.row(s_idx);
  const auto rt = tab.row(t_idx);
  std::vector<cplx> dphi(tab.width());
  for (std::size_t i = 0; i < dphi.size(); ++i) dphi[i] = rt[i] - rs[i];

  std::vector<const cplx*> slots;
  for (const auto& s : states) slots.push_back(s.coeffs().data());
  SpectralState out(box);
  interaction_sum<cplx>(box.d, box.N, slots, box.N, {dphi.data() + tab.mu_max, tab.mu_max}, out.coeffs());
  out *= cplx(0.0, -1.0);
  return out;
}

SpectralState x_increment(const YoungKernelConfig& cfg, double s, double t, std::span<const SpectralState> states) {
  return x_increment(cfg, cfg.time_index(s), cfg.time_index(t), states);
}

SpectralState x_increment(const YoungKernelConfig& cfg, std::size_t s_idx, std::size_t t_idx,
                          const SpectralState& psi) {
  const std::vector<SpectralState> states(static_cast<std::size_t>(2 * cfg.k + 1), psi);
  return x_increment(cfg, s_idx, t_idx, states);
}

double x_ratio(const YoungKernelConfig& cfg, double gamma, double s, std::size_t s_idx, std::size_t t_idx,
               std::span<const SpectralState> states) {
  const double dt = cfg.times()[t_idx] - cfg.times()[s_idx];
  if (!(dt > 0.0)) throw std::invalid_argument("x_ratio needs s < t");
  double denom = std::pow(dt, gamma);
  for (const auto& st : states) denom *= hs_norm(st, s);
  if (denom == 0.0) return 0.0;
  return hs_norm(x_increment(cfg, s_idx, t_idx, states), s) / denom;
}

std::vector<std::pair<std::size_t, std::size_t>> kernel_pairs(std::size_t rows) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (rows <= 33) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = i + 1; j < rows; ++j) pairs.emplace_back(i, j);
    return pairs;
  }
  for (std::size_t lag = 1; lag < rows; lag *= 2) {
    const std::size_t available = rows - lag;
    const std::size_t count = std::min<std::size_t>(available, 8);
    for (std::size_t q = 0; q < count; ++q) {
      const std::size_t i = count == 1 ? 0 : q * (available - 1) / (count - 1);
      pairs.emplace_back(i, i + lag);
    }
  }
  return pairs;
}

double x_norm_estimate(const YoungKernelConfig& cfg, double gamma, double s, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("x_norm_estimate needs trials >= 1");
  const auto pairs = kernel_pairs(cfg.times().size());
  const int slots = 2 * cfg.k + 1;
  double best = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<SpectralState> states;
    for (int j = 0; j < slots; ++j)
      states.push_back(random_state(cfg.d, cfg.N, s, seed * 1000003ULL + static_cast<std::uint64_t>(trial * slots + j)));
    for (const auto& [i, j] : pairs) best = std::max(best, x_ratio(cfg, gamma, s, i, j, states));
  }
  return best;
}

}  // namespace ynls
