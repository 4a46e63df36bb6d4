#include "ynls/phi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ynls/parallel.hpp"

namespace ynls {

cplx segment_factor(double x) {
  if (std::abs(x) < 1e-6) {
    const double x2 = x * x;
    return {1.0 - x2 / 6.0 + x2 * x2 / 120.0, x / 2.0 - x * x2 / 24.0};
  }
  // (e^{ix} - 1)/(ix) = sinc(x/2) e^{ix/2}, free of the 1 - cos cancellation
  const double h = 0.5 * x;
  const double sinc = std::sin(h) / h;
  return {sinc * std::cos(h), sinc * std::sin(h)};
}

namespace {

void check_time(const SamplePath& path, double& t) {
  const double T = path.horizon();
  const double slack = 1e-12 * T;
  if (!(t >= -slack && t <= T + slack)) throw std::out_of_range("time outside [0, T]");
  t = std::clamp(t, 0.0, T);
}

double value_at(const SamplePath& path, std::size_t j, double t) {
  if (t == path.t[j]) return path.w[j];
  const double u = (t - path.t[j]) / (path.t[j + 1] - path.t[j]);
  return path.w[j] + u * (path.w[j + 1] - path.w[j]);
}

// int_alpha^beta exp(i a w(r)) dr for [alpha, beta] inside segment j, w normalized.
cplx partial_segment(const SamplePath& path, std::size_t j, double a, double alpha, double beta) {
  if (beta <= alpha) return 0.0;
  const double wa = value_at(path, j, alpha);
  const double wb = beta == path.t[j + 1] ? path.w[j + 1] : value_at(path, j, beta);
  const double phase = a * wa;
  return (beta - alpha) * cplx(std::cos(phase), std::sin(phase)) * segment_factor(a * (wb - wa));
}

cplx full_segment(const SamplePath& path, std::size_t j, double a) {
  const double phase = a * path.w[j];
  return (path.t[j + 1] - path.t[j]) * cplx(std::cos(phase), std::sin(phase)) *
         segment_factor(a * (path.w[j + 1] - path.w[j]));
}

cplx offset_phase(const SamplePath& path, double a) {
  const double p = a * path.offset;
  return {std::cos(p), std::sin(p)};
}

}  // namespace

cplx phi_increment(const SamplePath& path, double a, double s, double t) {
  check_time(path, s);
  check_time(path, t);
  if (s > t) throw std::invalid_argument("phi_increment: need s <= t");
  if (s == t) return 0.0;
  const std::size_t j0 = segment_index(path, s);
  const std::size_t j1 = segment_index(path, t);
  cplx acc;
  if (j0 == j1) {
    acc = partial_segment(path, j0, a, s, t);
  } else {
    acc = partial_segment(path, j0, a, s, path.t[j0 + 1]);
    for (std::size_t j = j0 + 1; j < j1; ++j) acc += full_segment(path, j, a);
    acc += partial_segment(path, j1, a, path.t[j1], t);
  }
  return acc * offset_phase(path, a);
}

std::vector<cplx> phi_prefix(const SamplePath& path, double a, std::span<const double> times) {
  const std::size_t M = path.segments();
  std::vector<cplx> out(times.size());
  cplx acc = 0.0;
  std::size_t j = 0;
  double prev = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    double tau = times[i];
    check_time(path, tau);
    if (tau < prev) throw std::invalid_argument("phi_prefix: times must be ascending");
    prev = tau;
    while (j < M && path.t[j + 1] <= tau) acc += full_segment(path, j++, a);
    out[i] = j == M ? acc : acc + partial_segment(path, j, a, path.t[j], tau);
  }
  const cplx shift = offset_phase(path, a);
  for (auto& v : out) v *= shift;
  return out;
}

OscillatoryTable build_phi_table(const SamplePath& path, int mu_max, std::span<const double> times) {
  if (mu_max < 0) throw std::invalid_argument("build_phi_table: mu_max must be >= 0");
  if (times.empty() || times.front() != 0.0) throw std::invalid_argument("build_phi_table: time grid must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("build_phi_table: time grid must be increasing");

  OscillatoryTable table;
  table.mu_max = mu_max;
  table.times.assign(times.begin(), times.end());
  const std::size_t W = table.width();
  table.values.assign(times.size() * W, cplx{});

#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (int mu = 1; mu <= mu_max; ++mu) {
    const std::vector<cplx> col = phi_prefix(path, mu, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      table.values[i * W + static_cast<std::size_t>(mu_max + mu)] = col[i];
      table.values[i * W + static_cast<std::size_t>(mu_max - mu)] = std::conj(col[i]);
    }
  }
  for (std::size_t i = 0; i < times.size(); ++i) table.values[i * W + static_cast<std::size_t>(mu_max)] = times[i];
  return table;
}

std::vector<TimePair> sample_pairs(const SamplePath& path, std::size_t target) {
  const std::size_t K = path.t.size();
  std::vector<std::size_t> lags;
  for (int p = 0;; ++p) {
    const auto lag = static_cast<std::size_t>(std::llround(std::pow(2.0, p / 4.0)));
    if (lag > K - 1) break;
    if (lags.empty() || lags.back() != lag) lags.push_back(lag);
  }
  const std::size_t budget = std::max<std::size_t>(1, target / lags.size());
  std::vector<TimePair> pairs;
  pairs.reserve(budget * lags.size());
  for (std::size_t lag : lags) {
    const std::size_t available = K - lag;
    const std::size_t count = std::min(available, budget);
    for (std::size_t q = 0; q < count; ++q) {
      const std::size_t i = count == 1 ? 0 : q * (available - 1) / (count - 1);
      pairs.push_back({path.t[i], path.t[i + lag]});
    }
  }
  return pairs;
}

std::vector<double> make_a_grid(double a_max) {
  if (!(a_max >= 0.0)) throw std::invalid_argument("a_max must be nonnegative");
  std::vector<double> offsets;
  for (int i = 1; i <= 16; ++i) {
    double r = 0.0, f = 1.0 / 3.0;
    for (int n = i; n > 0; n /= 3, f /= 3.0) r += f * (n % 3);
    offsets.push_back(r);
  }
  std::vector<double> grid;
  for (long u = 0; u <= static_cast<long>(std::floor(a_max)); ++u) {
    grid.push_back(static_cast<double>(u));
    for (double h : offsets)
      if (u + h <= a_max) grid.push_back(u + h);
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

std::vector<double> pair_sup_profile(const SamplePath& path, double gamma, std::span<const double> a_grid,
                                     std::span<const TimePair> pairs) {
  std::vector<double> times;
  times.reserve(2 * pairs.size());
  for (const auto& p : pairs) {
    if (!(p.s < p.t)) throw std::invalid_argument("irregularity pairs need s < t");
    times.push_back(p.s);
    times.push_back(p.t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<std::size_t> is(pairs.size()), it(pairs.size());
  std::vector<double> inv_len(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    is[q] = static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), pairs[q].s) - times.begin());
    it[q] = static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), pairs[q].t) - times.begin());
    inv_len[q] = std::pow(pairs[q].t - pairs[q].s, -gamma);
  }

  std::vector<double> profile(a_grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (std::size_t ia = 0; ia < a_grid.size(); ++ia) {
    const std::vector<cplx> P = phi_prefix(path, a_grid[ia], times);
    double best = 0.0;
    for (std::size_t q = 0; q < pairs.size(); ++q) best = std::max(best, std::abs(P[it[q]] - P[is[q]]) * inv_len[q]);
    profile[ia] = best;
  }
  return profile;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

namespace {

IrregularityReport report_from_profile(double rho, double gamma, std::span<const double> a_grid,
                                       std::span<const double> profile, std::size_t pair_count, int levels) {
  if (levels < 1) levels = 1;
  IrregularityReport r;
  r.rho = rho;
  r.gamma = gamma;
  r.pair_count = pair_count;
  r.a_max = *std::max_element(a_grid.begin(), a_grid.end());
  for (int l = 0; l < levels; ++l) {
    const double cap = r.a_max / std::pow(2.0, levels - 1 - l);
    double best = 0.0;
    for (std::size_t i = 0; i < a_grid.size(); ++i)
      if (std::abs(a_grid[i]) <= cap * (1.0 + 1e-12))
        best = std::max(best, std::pow(1.0 + std::abs(a_grid[i]), rho) * profile[i]);
    r.trend_a_max.push_back(cap);
    r.trend.push_back(best);
  }
  r.norm_estimate = r.trend.back();
  bool positive = std::all_of(r.trend.begin(), r.trend.end(), [](double v) { return v > 0.0; });
  r.trend_slope = positive ? log_log_slope(r.trend_a_max, r.trend) : 0.0;
  return r;
}

void check_norm_args(double gamma, std::span<const double> a_grid, std::size_t pairs) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
  if (a_grid.empty()) throw std::invalid_argument("empty frequency grid");
  if (pairs == 0) throw std::invalid_argument("empty pair list");
}

}  // namespace

IrregularityReport irregularity_norm(const SamplePath& path, double rho, double gamma,
                                     std::span<const double> a_grid, std::span<const TimePair> pairs,
                                     int trend_levels) {
  check_norm_args(gamma, a_grid, pairs.size());
  const std::vector<double> profile = pair_sup_profile(path, gamma, a_grid, pairs);
  return report_from_profile(rho, gamma, a_grid, profile, pairs.size(), trend_levels);
}

IrregularityEstimate estimate_irregularity(const SamplePath& path, double gamma, double a_max, int levels,
                                           std::size_t pair_target, std::span<const double> rho_grid) {
  std::vector<double> rhos(rho_grid.begin(), rho_grid.end());
  if (rhos.empty())
    for (int i = 0; i <= 20; ++i) rhos.push_back(0.1 * i);

  const std::vector<double> a_grid = make_a_grid(a_max);
  const std::vector<TimePair> pairs = sample_pairs(path, pair_target);
  check_norm_args(gamma, a_grid, pairs.size());
  const std::vector<double> profile = pair_sup_profile(path, gamma, a_grid, pairs);

  IrregularityEstimate est;
  est.gamma = gamma;
  for (double rho : rhos) {
    est.reports.push_back(report_from_profile(rho, gamma, a_grid, profile, pairs.size(), levels));
    if (est.reports.back().trend_slope < kBoundedTrendSlope) est.rho_estimate = std::max(est.rho_estimate, rho);
  }
  return est;
}

}  // namespace ynls
