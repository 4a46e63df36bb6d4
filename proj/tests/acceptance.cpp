// Acceptance run: one PASS/FAIL line per criterion with the measured value, the
// pinned threshold and the runtime against its budget. Optional arguments
// select criteria by number (e.g. `acceptance 3 11`).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ynls/phi.hpp"
#include "ynls/resonance.hpp"
#include "ynls/solver.hpp"

using namespace ynls;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_abs(const SpectralState& a) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

double max_diff(const SpectralState& a, const SpectralState& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

YoungKernelConfig kernel_on(const SamplePath& p, int d, int k, int N, const std::vector<double>& times) {
  return make_kernel_config(d, k, N, make_kernel_table(p, d, k, N, times));
}

SolverConfig solver_config(int d, int k, int N, double s, double T, int steps, Scheme scheme) {
  SolverConfig c;
  c.d = d;
  c.k = k;
  c.N = N;
  c.s = s;
  c.T = T;
  c.gamma = 0.75;
  c.lambda = 0.5;
  c.rho = 0.5;
  c.scheme = scheme;
  c.partition = uniform_partition(T, steps);
  c.validate();
  return c;
}

Outcome phi_exactness() {
  const double T = 10.0;
  const auto p = make_linear_path(T, 1000);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ut(0.0, T), ua(0.1, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double s = ut(rng), t = ut(rng);
    if (s > t) std::swap(s, t);
    const double a = (rng() & 1 ? 1.0 : -1.0) * ua(rng);
    const cplx exact = (std::exp(cplx(0, a * t)) - std::exp(cplx(0, a * s))) / cplx(0, a);
    worst = std::max(worst, std::abs(phi_increment(p, a, s, t) - exact));
  }
  return {worst <= 1e-12, fmt("max abs error %.3e (<= 1e-12)", worst)};
}

Outcome irregularity_dichotomy() {
  const auto p = make_linear_path(1.0, 4096);
  const auto grid = make_a_grid(512.0);
  const auto pairs = sample_pairs(p, 20000);
  const auto profile_report = [&](double rho) { return irregularity_norm(p, rho, 0.5, grid, pairs, 5); };
  const auto lo = profile_report(0.4);
  const auto hi = profile_report(0.8);
  const bool pass = lo.trend_slope < 0.05 && hi.trend_slope > 0.2;
  return {pass, fmt("slope(0.4,0.5) = %.4f (< 0.05), slope(0.8,0.5) = %.4f (> 0.2)", lo.trend_slope,
                    hi.trend_slope)};
}

Outcome fbm_consistency() {
  const std::vector<double> rhos = [] {
    std::vector<double> r;
    for (int i = 0; i <= 15; ++i) r.push_back(0.1 * i);
    return r;
  }();
  std::vector<double> estimates;
  int bounded_at_15 = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto p = make_fbm_path(0.5, 1.0, 1 << 14, seed);
    const auto est = estimate_irregularity(p, 0.55, 256.0, 5, 20000, rhos);
    estimates.push_back(est.rho_estimate);
    if (est.reports.back().trend_slope < kBoundedTrendSlope) ++bounded_at_15;
  }
  const double med = median(estimates);
  const auto [mn, mx] = std::minmax_element(estimates.begin(), estimates.end());
  const bool pass = med > 0.4 && med < 1.2 && bounded_at_15 == 0;
  return {pass, fmt("median rho %.2f in (0.4, 1.2), range [%.2f, %.2f], bounded at rho=1.5 in %d/20 seeds (0)", med,
                    *mn, *mx, bounded_at_15)};
}

Outcome kernel_correctness() {
  const auto p = make_fbm_path(0.5, 1.0, 256, 77);
  std::vector<double> times(17);
  for (int i = 0; i <= 16; ++i) times[i] = i / 16.0;
  const auto cfg = kernel_on(p, 1, 1, 6, times);
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int c = 0; c < 20; ++c) {
    std::size_t i = rng() % 17, j = rng() % 17;
    if (i == j) j = (j + 1) % 17;
    if (i > j) std::swap(i, j);
    std::vector<SpectralState> in;
    for (int q = 0; q < 3; ++q) in.push_back(random_state(1, 6, 0.0, 1000 + 3 * c + q));
    const auto fast = x_increment(cfg, i, j, in);
    const auto ref = oracle::duhamel_x(p, times[i], times[j], in);
    worst = std::max(worst, max_diff(fast, ref) / max_abs(ref));
  }
  return {worst <= 1e-10, fmt("max relative error %.3e over 20 cases (<= 1e-10)", worst)};
}

Outcome sewing_rate() {
  const double gamma = 0.55, lambda = 0.5, s = 0.5;
  const int d = 1, k = 1, N = 4;
  const int fine_steps = 1 << 12;  // grid step 2^-14 on [0, 2^-2]
  const double T = 0.25;
  const auto p = make_fbm_path(0.5, T, fine_steps, 9);
  const auto times = uniform_partition(T, fine_steps);
  const auto cfg = kernel_on(p, d, k, N, times);
  const auto psi_a = random_state(d, N, 1.0, 31);
  const auto psi_b = random_state(d, N, 1.0, 32);
  Trajectory g;
  g.times = times;
  for (double t : times) g.states.push_back(psi_a + cplx(std::pow(t, lambda)) * psi_b);

  std::vector<double> hs, errs;
  for (int l = 0; l <= 4; ++l) {
    const std::size_t idx = static_cast<std::size_t>(fine_steps) >> l;
    const auto riemann = young_integral(cfg, g, 0, idx);
    const auto one_step = x_increment(cfg, std::size_t{0}, idx, g.states[0]);
    hs.push_back(times[idx]);
    errs.push_back(hs_norm(riemann - one_step, s));
  }
  const double slope = log_log_slope(hs, errs);
  const double need = gamma + lambda - 0.2;
  return {slope >= need, fmt("fitted exponent %.3f (>= %.2f), errors %.2e .. %.2e", slope, need, errs.back(),
                             errs.front())};
}

Outcome plane_wave_solve() {
  const cplx c = 1.0;
  const ModeIndex m{1};
  const int N = 2, k = 1;
  const auto p = make_fbm_path(0.5, 1.0, 4096, 12);
  std::vector<double> meshes, err_e, err_p;
  double at_1e3_e = 0, at_1e3_p = 0;
  for (int steps : {250, 500, 1000, 2000}) {
    const auto kernel = kernel_on(p, 1, k, N, uniform_partition(1.0, steps));
    const auto phi0 = SpectralState::delta(1, N, m, c);
    auto worst = [&](const Trajectory& tr) {
      double e = 0;
      for (std::size_t i = 0; i < tr.times.size(); ++i)
        e = std::max(e, relative_l2(tr.states[i], plane_wave_exact(c, m, N, tr.times[i], k)));
      return e;
    };
    const double ee = worst(solve_euler_young(solver_config(1, k, N, 1.0, 1.0, steps, Scheme::euler_young), phi0, kernel));
    const double ep = worst(solve_picard(solver_config(1, k, N, 1.0, 1.0, steps, Scheme::picard), phi0, kernel));
    meshes.push_back(1.0 / steps);
    err_e.push_back(ee);
    err_p.push_back(ep);
    if (steps == 1000) {
      at_1e3_e = ee;
      at_1e3_p = ep;
    }
  }
  const double oe = log_log_slope(meshes, err_e), op = log_log_slope(meshes, err_p);
  const bool pass = at_1e3_e <= 1e-3 && at_1e3_p <= 1e-3 && std::abs(oe - 1) <= 0.2 && std::abs(op - 1) <= 0.2;
  return {pass, fmt("error at mesh 1e-3: euler %.2e, picard %.2e (<= 1e-3); order euler %.3f, picard %.3f (1 +- 0.2)",
                    at_1e3_e, at_1e3_p, oe, op)};
}

Outcome split_step_cross_check() {
  const int d = 1, k = 1, N = 16;
  const double T = 0.1;
  auto phi0 = random_state(d, N, 3.0, 4242);
  phi0 *= 0.5 / hs_norm(phi0, 1.0);
  const auto p = make_linear_path(T, 1000);
  const int steps = 100;
  const auto kernel = kernel_on(p, d, k, N, uniform_partition(T, steps));
  const auto sol = solve_picard(solver_config(d, k, N, 1.0, T, steps, Scheme::picard), phi0, kernel);
  const auto u = apply_U(sol.states.back(), T, Direction::forward);
  const auto ref = reference_split_step(phi0, T, 1e-4, d, k, N);
  const double err = relative_l2(u, restrict_to_box(ref.states.back(), N));
  return {err <= 1e-3, fmt("relative L2 difference %.3e (<= 1e-3)", err)};
}

Outcome picard_contraction() {
  const int d = 1, k = 1, N = 8;
  const double T = 0.25, s = 1.0;
  const auto p = make_fbm_path(0.5, T, 4096, 5);
  auto phi0 = random_state(d, N, s, 88);
  phi0 *= 1e-2 / hs_norm(phi0, s);
  const int steps = 250;
  const auto kernel = kernel_on(p, d, k, N, uniform_partition(T, steps));
  const auto sol = solve_picard(solver_config(d, k, N, s, T, steps, Scheme::picard), phi0, kernel);
  double worst_ratio = 0;
  for (std::size_t i = 1; i < sol.residuals.size(); ++i)
    worst_ratio = std::max(worst_ratio, sol.residuals[i] / sol.residuals[i - 1]);
  const bool pass = sol.iterations <= 15 && worst_ratio < 0.5 && sol.residuals.back() < 1e-10;
  return {pass, fmt("%d iterations (<= 15), worst residual ratio %.3e (< 0.5), final residual %.2e", sol.iterations,
                    worst_ratio, sol.residuals.back())};
}

Outcome mass_conservation() {
  const int d = 1, k = 1, N = 8;
  const double T = 0.5;
  const auto p = make_fbm_path(0.5, T, 4096, 6);
  auto phi0 = random_state(d, N, 2.0, 99);
  phi0 *= 0.5 / hs_norm(phi0, 0.0);
  std::vector<double> drift;
  for (int steps : {500, 1000}) {
    const auto kernel = kernel_on(p, d, k, N, uniform_partition(T, steps));
    drift.push_back(mass_drift(solve_picard(solver_config(d, k, N, 1.0, T, steps, Scheme::picard), phi0, kernel)));
  }
  const double ratio = drift[0] / drift[1];
  return {drift[0] <= 1e-4 && ratio >= 1.5,
          fmt("drift at 1e-3: %.3e (<= 1e-4), at 5e-4: %.3e, ratio %.3f (>= 1.5)", drift[0], drift[1], ratio)};
}

Outcome counting_identity() {
  const auto a = verify_counting_partition(-4, 4, 1, 1);
  const auto b = verify_counting_partition(-2, 2, 2, 1);
  const bool pass = a.violations == 0 && b.violations == 0 && a.memberships == a.zero_sum_tuples &&
                    b.memberships == b.zero_sum_tuples;
  return {pass, fmt("d=1: %ld tuples, %ld violations; d=2: %ld tuples, %ld violations (0)", a.total_tuples,
                    a.violations, b.total_tuples, b.violations)};
}

Outcome multilinear_boundedness() {
  std::vector<double> r;
  for (int N : {4, 8, 16}) r.push_back(estimate_ratio_eq21(2, 1, 1.0, 0.3, 0.0, 1, N, 50, 7).max_ratio_over_trials);
  const double g1 = r[1] / r[0], g2 = r[2] / r[1];
  return {g1 < 2 && g2 < 2, fmt("max ratios %.4f, %.4f, %.4f; growth %.3f, %.3f (< 2)", r[0], r[1], r[2], g1, g2)};
}

Outcome mu_uniformity() {
  const int blocks[] = {4, 4, 2, 2};
  const auto sweep = dyadic_mu_sweep(blocks, 2, 1, 0.1, 4, 3);
  double lo = 1e300, hi = 0;
  for (const auto& r : sweep) {
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  return {hi / lo < 10.0, fmt("%zu strata, max/min ratio %.3f (< 10)", sweep.size(), hi / lo)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "phi exactness on the linear path", 1, phi_exactness},
      {2, "irregularity dichotomy for w(t) = t", 30, irregularity_dichotomy},
      {3, "fBm irregularity consistency", 300, fbm_consistency},
      {4, "kernel vs Duhamel quadrature", 60, kernel_correctness},
      {5, "sewing rate of the Riemann sums", 120, sewing_rate},
      {6, "plane-wave solve", 60, plane_wave_solve},
      {7, "cross-validation against split step", 300, split_step_cross_check},
      {8, "Picard contraction", 120, picard_contraction},
      {9, "mass conservation", 300, mass_conservation},
      {10, "counting identity", 60, counting_identity},
      {11, "multilinear boundedness", 600, multilinear_boundedness},
      {12, "mu-uniformity of the dyadic estimate", 300, mu_uniformity},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("[%s] C%-2d %s: %s; runtime %.2f s (< %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
