#include <doctest.h>

#include <cmath>
#include <random>

#include "ynls/phi.hpp"

#include "ynls/errors.hpp"
#include "ynls/solver.hpp"

using namespace ynls;

namespace {

struct Setup {
  SolverConfig cfg;
  YoungKernelConfig kernel;
};

Setup make_setup(const SamplePath& path, int d, int k, int N, double T, int steps, Scheme scheme) {
  Setup su;
  su.cfg.d = d;
  su.cfg.k = k;
  su.cfg.N = N;
  su.cfg.T = T;
  su.cfg.gamma = 0.75;
  su.cfg.lambda = 0.5;
  su.cfg.scheme = scheme;
  su.cfg.validate();
  su.kernel = make_kernel_config(d, k, N, make_kernel_table(path, d, k, N, uniform_partition(T, steps)));
  return su;
}

double max_abs(const SpectralState& a) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

SpectralState smooth_data(int d, int N, double l2, std::uint64_t seed) {
  auto st = random_state(d, N, 2.0, seed);
  st *= l2 / hs_norm(st, 0.0);
  return st;
}

}  // namespace

TEST_CASE("exponent validation") {
  SolverConfig c;
  c.gamma = 0.6;
  c.lambda = 0.7;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("0<λ<γ≤1"), ConfigError);
  c.lambda = 0.3;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("γ+λ>1"), ConfigError);
  c.gamma = 1.2;
  c.lambda = 0.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.gamma = 0.75;
  c.N = 40;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.N = 8;
  c.s = 0.0;
  c.rho = 0.5;
  CHECK(c.validate().size() == 1);
  c.s = 0.1;
  CHECK(c.validate().empty());
  c.partition = {0.0, 0.5, 0.4, 1.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("default lambda") {
  for (double g : {0.55, 0.6, 0.75, 0.9, 1.0}) {
    const double l = default_lambda(g);
    CHECK(l > 0);
    CHECK(l < g);
    CHECK(g + l > 1);
  }
  CHECK(default_lambda(0.6) == doctest::Approx(0.404));
  CHECK_THROWS_AS(default_lambda(0.5), ConfigError);
  CHECK(scheme_from_string("picard") == Scheme::picard);
  CHECK_THROWS_AS(scheme_from_string("rk4"), ConfigError);
}

TEST_CASE("plane wave closed forms") {
  const ModeIndex m{1};
  CHECK(std::abs(plane_wave_exact(cplx(0.3, 0.4), m, 4, 0.0, 1).at({1}) - cplx(0.3, 0.4)) == 0.0);
  for (double t : {0.1, 1.0, 7.0}) CHECK(std::abs(plane_wave_exact(cplx(0.3, 0.4), m, 4, t, 2).at({1})) ==
                                           doctest::Approx(0.5).epsilon(1e-15));
  const auto p = make_linear_path(4.0, 64);
  CHECK(std::abs(plane_wave_physical(1.0, m, 2, p, M_PI, 1).at({1}) - 1.0) <= 1e-14);
}

TEST_CASE("Euler stays on the single-mode subspace and follows the scalar recursion") {
  const auto p = make_fbm_path(0.5, 1.0, 256, 7);
  auto su = make_setup(p, 1, 1, 3, 1.0, 64, Scheme::euler_young);
  const cplx c(0.6, 0.2);
  const auto tr = solve_euler_young(su.cfg, SpectralState::delta(1, 3, {2}, c), su.kernel);
  cplx z = c;
  for (std::size_t j = 1; j < tr.states.size(); ++j) {
    // the mode is resonance free, so each step multiplies by 1 - i |z|^2 dt
    z *= 1.0 - cplx(0, std::norm(z) * (tr.times[j] - tr.times[j - 1]));
    auto rest = tr.states[j];
    CHECK(std::abs(rest.at({2}) - z) <= 1e-14);
    rest.at({2}) = 0.0;
    CHECK(max_abs(rest) == 0.0);
  }
  // the phase follows -|c|^2 t to first order
  CHECK(std::abs(std::arg(z / c) + std::norm(c)) < 0.05);
}

TEST_CASE("zero data stays zero") {
  const auto p = make_fbm_path(0.5, 1.0, 64, 1);
  auto su = make_setup(p, 1, 1, 4, 1.0, 16, Scheme::picard);
  const SpectralState zero(1, 4);
  const auto tr = solve_picard(su.cfg, zero, su.kernel);
  CHECK(tr.iterations == 1);
  for (const auto& st : tr.states) CHECK(max_abs(st) == 0.0);
  const auto eu = solve_euler_young(su.cfg, zero, su.kernel);
  for (const auto& st : eu.states) CHECK(max_abs(st) == 0.0);
}

TEST_CASE("Young integral of constant and zero trajectories") {
  const auto p = make_fbm_path(0.5, 1.0, 128, 19);
  auto su = make_setup(p, 1, 1, 4, 1.0, 32, Scheme::picard);
  Trajectory g;
  g.times = uniform_partition(1.0, 32);
  const auto psi = random_state(1, 4, 0.0, 5);
  g.states.assign(g.times.size(), psi);
  const auto sum = young_integral(su.kernel, g, 3, 29);
  const auto direct = x_increment(su.kernel, std::size_t{3}, std::size_t{29}, psi);
  double diff = 0;
  for (std::size_t i = 0; i < sum.size(); ++i) diff = std::max(diff, std::abs(sum[i] - direct[i]));
  CHECK(diff <= 1e-13 * max_abs(direct));
  g.states.assign(g.times.size(), SpectralState(1, 4));
  CHECK(max_abs(young_integral(su.kernel, g, 0, 32)) == 0.0);
  CHECK_THROWS(young_integral(su.kernel, g, 4, 40));
}

TEST_CASE("Picard converges to the Euler solution on the same partition") {
  const auto p = make_fbm_path(0.5, 0.25, 512, 2);
  auto su = make_setup(p, 1, 1, 4, 0.25, 64, Scheme::picard);
  const auto phi0 = smooth_data(1, 4, 0.3, 8);
  const auto pic = solve_picard(su.cfg, phi0, su.kernel);
  const auto eu = solve_euler_young(su.cfg, phi0, su.kernel);
  CHECK(holder_distance(pic, eu, su.cfg.lambda, 0.0) <= 1e-9);
  for (std::size_t i = 1; i < pic.residuals.size(); ++i) CHECK(pic.residuals[i] < pic.residuals[i - 1]);
}

TEST_CASE("uniqueness from a perturbed initial iterate") {
  const auto p = make_fbm_path(0.5, 0.25, 512, 3);
  auto su = make_setup(p, 1, 1, 4, 0.25, 32, Scheme::picard);
  const auto phi0 = smooth_data(1, 4, 0.3, 9);
  Trajectory start;
  start.times = uniform_partition(0.25, 32);
  for (std::size_t i = 0; i < start.times.size(); ++i) start.states.push_back(phi0 + random_state(1, 4, 0.0, 100 + i));
  const auto a = solve_picard(su.cfg, phi0, su.kernel);
  const auto b = solve_picard(su.cfg, phi0, su.kernel, &start);
  CHECK(holder_distance(a, b, su.cfg.lambda, 0.0) <= 10 * su.cfg.tol);
}

TEST_CASE("solution map is Lipschitz at fixed partition") {
  const auto p = make_fbm_path(0.5, 0.25, 512, 4);
  auto su = make_setup(p, 1, 1, 4, 0.25, 32, Scheme::picard);
  const auto phi0 = smooth_data(1, 4, 0.3, 10);
  const auto dir = smooth_data(1, 4, 1.0, 11);
  const auto base = solve_picard(su.cfg, phi0, su.kernel);
  std::vector<double> ratios;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const auto pert = solve_picard(su.cfg, phi0 + cplx(delta) * dir, su.kernel);
    ratios.push_back(holder_distance(pert, base, su.cfg.lambda, 0.0) / delta);
  }
  for (double r : ratios) {
    CHECK(std::isfinite(r));
    CHECK(r > 0);
  }
  CHECK(*std::max_element(ratios.begin(), ratios.end()) / *std::min_element(ratios.begin(), ratios.end()) < 2.0);
}

TEST_CASE("Picard solutions stay bounded in the Hoelder norm under refinement") {
  const auto p = make_fbm_path(0.5, 0.25, 1024, 5);
  const auto phi0 = smooth_data(1, 4, 0.3, 12);
  std::vector<double> norms;
  for (int steps : {16, 32, 64}) {
    auto su = make_setup(p, 1, 1, 4, 0.25, steps, Scheme::picard);
    norms.push_back(holder_norm(solve_picard(su.cfg, phi0, su.kernel), su.cfg.lambda, 0.0));
  }
  CHECK(norms[2] < 1.5 * norms[0]);
  CHECK(norms[1] < 1.5 * norms[0]);
}

TEST_CASE("failures are reported as numerical errors") {
  const auto p = make_linear_path(1.0, 16);
  auto su = make_setup(p, 1, 1, 2, 1.0, 8, Scheme::euler_young);
  CHECK_THROWS_AS(solve_euler_young(su.cfg, SpectralState::delta(1, 2, {1}, 1e3), su.kernel), NumericalFailure);
  su.cfg.max_iter = 2;
  su.cfg.tol = 1e-300;
  CHECK_THROWS_WITH_AS(solve_picard(su.cfg, SpectralState::delta(1, 2, {1}, 0.5), su.kernel),
                       doctest::Contains("halving T"), NumericalFailure);
}

TEST_CASE("Hoelder norm examples") {
  Trajectory c;
  c.times = {0.0, 0.5, 1.0};
  const auto psi = random_state(1, 3, 0.0, 3);
  c.states.assign(3, psi);
  CHECK(holder_seminorm(c, 0.5, 1.0) == 0.0);
  CHECK(holder_norm(c, 0.5, 1.0) == doctest::Approx(hs_norm(psi, 1.0)).epsilon(1e-15));
  Trajectory lin;
  lin.times = {0.0, 0.25, 0.5, 1.0};
  for (double t : lin.times) lin.states.push_back(cplx(t) * psi);
  CHECK(holder_seminorm(lin, 1.0, 0.5) == doctest::Approx(hs_norm(psi, 0.5)).epsilon(1e-14));
  CHECK(mass_drift(c) == 0.0);
}

TEST_CASE("split step: plane wave, mass and second order") {
  const auto pw = SpectralState::delta(1, 6, {2}, cplx(0.8, 0.1));
  const auto tr = reference_split_step(pw, 0.5, 0.01, 1, 1, 6);
  const auto lin = make_linear_path(0.5, 50);
  CHECK(tr.states.back().radius() == 12);
  CHECK(relative_l2(restrict_to_box(tr.states.back(), 6), plane_wave_physical(cplx(0.8, 0.1), ModeIndex{2}, 6, lin, 0.5, 1)) <= 1e-13);

  const auto phi0 = smooth_data(1, 8, 1.0, 21);
  const auto a = reference_split_step(phi0, 0.5, 0.01, 1, 1, 8);
  double per_step = 0;
  for (std::size_t j = 1; j < a.states.size(); ++j)
    per_step = std::max(per_step, std::abs(std::pow(hs_norm(a.states[j], 0), 2) - std::pow(hs_norm(a.states[j - 1], 0), 2)));
  CHECK(per_step <= 1e-13);
  const auto b = reference_split_step(phi0, 0.5, 0.005, 1, 1, 8);
  const auto c = reference_split_step(phi0, 0.5, 0.0025, 1, 1, 8);
  const double e1 = relative_l2(a.states.back(), c.states.back());
  const double e2 = relative_l2(b.states.back(), c.states.back());
  // with the finest run as reference, e1 / e2 = 2^p + 1
  const double order = std::log2((e1 - e2) / e2);
  CHECK(order == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("uniform and random partitions of equal mesh give close Young integrals") {
  const int fine = 1 << 12;
  const double lambda = 0.5;
  const auto p = make_fbm_path(0.5, 1.0, fine, 15);
  const auto grid = uniform_partition(1.0, fine);
  const auto kernel = make_kernel_config(1, 1, 4, make_kernel_table(p, 1, 1, 4, grid));
  const auto a = random_state(1, 4, 1.0, 61), b = random_state(1, 4, 1.0, 62);
  auto traj_on = [&](const std::vector<std::size_t>& nodes) {
    Trajectory g;
    for (std::size_t i : nodes) {
      g.times.push_back(grid[i]);
      g.states.push_back(a + cplx(std::pow(grid[i], lambda)) * b);
    }
    return young_integral(kernel, g, 0, nodes.size() - 1);
  };
  std::mt19937_64 rng(4);
  std::vector<double> meshes, gaps;
  for (int l = 4; l <= 8; ++l) {
    const std::size_t step = static_cast<std::size_t>(fine) >> l;
    std::vector<std::size_t> uni, rnd{0};
    for (std::size_t i = 0; i <= static_cast<std::size_t>(fine); i += step) uni.push_back(i);
    std::uniform_int_distribution<std::size_t> gap(step / 2, step);
    while (rnd.back() + step < static_cast<std::size_t>(fine)) rnd.push_back(rnd.back() + gap(rng));
    rnd.push_back(fine);
    meshes.push_back(static_cast<double>(step) / fine);
    gaps.push_back(hs_norm(traj_on(uni) - traj_on(rnd), 0.5));
  }
  // expected rate gamma + lambda - 1 with gamma = 1 for the Lipschitz kernel
  CHECK(log_log_slope(meshes, gaps) >= lambda - 0.2);
}
