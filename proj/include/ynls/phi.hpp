#pragma once

// Oscillatory integrals Phi_t(a) = int_0^t exp(i a w(r)) dr for piecewise-linear
// paths, integer-frequency tables for the Young kernel, and grid estimates of
// the (rho, gamma)-irregularity semi-norm
//
//   sup_a sup_{s<t} (1 + |a|)^rho |Phi_t(a) - Phi_s(a)| / |t - s|^gamma.
//
// All integrals are evaluated segment by segment in closed form, so the only
// error is rounding.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ynls/paths.hpp"

namespace ynls {

using cplx = std::complex<double>;

/// (e^{ix} - 1) / (ix); 4th-order Taylor expansion for |x| < 1e-6.
cplx segment_factor(double x);

/// Phi_t(a) - Phi_s(a). Requires 0 <= s <= t <= T.
cplx phi_increment(const SamplePath& path, double a, double s, double t);

/// Phi at each of the ascending `times` (all in [0, T]) in one sweep over the path.
std::vector<cplx> phi_prefix(const SamplePath& path, double a, std::span<const double> times);

struct OscillatoryTable {
  int mu_max = 0;
  std::vector<double> times;
  std::vector<cplx> values;  // row i holds Phi_{times[i]}(mu), mu = -mu_max..mu_max

  std::size_t width() const { return 2 * static_cast<std::size_t>(mu_max) + 1; }
  std::size_t rows() const { return times.size(); }
  cplx at(std::size_t i, int mu) const { return values[i * width() + static_cast<std::size_t>(mu + mu_max)]; }
  std::span<const cplx> row(std::size_t i) const { return {values.data() + i * width(), width()}; }
};

/// Phi at every integer frequency |mu| <= mu_max and every time of `times`
/// (ascending, starting at 0). Negative frequencies are stored as conjugates.
OscillatoryTable build_phi_table(const SamplePath& path, int mu_max, std::span<const double> times);

struct TimePair {
  double s;
  double t;
};

/// Deterministic pair sample on the path nodes: a quarter-octave ladder of
/// lags, each with evenly spaced start nodes, about `target` pairs in total.
std::vector<TimePair> sample_pairs(const SamplePath& path, std::size_t target);

/// Frequencies in [0, a_max]: the integers plus 16 points per unit interval
/// from the base-3 radical-inverse (Halton) sequence. |Phi increments| are
/// even in a, so negative frequencies are not needed.
std::vector<double> make_a_grid(double a_max);

struct IrregularityReport {
  double rho = 0.0;
  double gamma = 1.0;
  double norm_estimate = 0.0;  // grid supremum, a lower bound on the true norm
  double a_max = 0.0;
  std::size_t pair_count = 0;
  std::vector<double> trend;        // norm restricted to |a| <= trend_a_max[l]
  std::vector<double> trend_a_max;  // a_max / 2^{L-1-l}
  double trend_slope = 0.0;         // least-squares slope of log(trend) vs log(trend_a_max)
};

/// sup_a (1+|a|)^rho * sup_pairs |Phi increment| / (t-s)^gamma with an a_max
/// doubling trend over `trend_levels` levels.
IrregularityReport irregularity_norm(const SamplePath& path, double rho, double gamma,
                                     std::span<const double> a_grid, std::span<const TimePair> pairs,
                                     int trend_levels = 5);

/// sup over pairs of |Phi_t(a) - Phi_s(a)| / (t - s)^gamma for every a in a_grid.
std::vector<double> pair_sup_profile(const SamplePath& path, double gamma, std::span<const double> a_grid,
                                     std::span<const TimePair> pairs);

/// Growth threshold below which a trend is treated as bounded.
inline constexpr double kBoundedTrendSlope = 0.05;

double log_log_slope(std::span<const double> x, std::span<const double> y);

struct IrregularityEstimate {
  double gamma = 1.0;
  double rho_estimate = 0.0;  // largest rho on the sweep grid with a bounded trend
  std::vector<IrregularityReport> reports;
};

/// Sweep rho over `rho_grid` (default 0, 0.1, ..., 2) at fixed gamma and
/// report the largest rho whose trend over `levels` a_max doublings has slope
/// below kBoundedTrendSlope.
IrregularityEstimate estimate_irregularity(const SamplePath& path, double gamma, double a_max, int levels,
                                           std::size_t pair_target = 20000,
                                           std::span<const double> rho_grid = {});

}  // namespace ynls
