#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ynls/phi.hpp"

using namespace ynls;

namespace {

cplx linear_closed_form(double a, double s, double t) {
  return (std::exp(cplx(0, a * t)) - std::exp(cplx(0, a * s))) / cplx(0, a);
}

}  // namespace

TEST_CASE("segment factor branches agree near the switch") {
  for (double x : {1e-9, 5e-7, 9.99e-7, 1.01e-6, 2e-6, 1e-5}) {
    const cplx direct = (std::exp(cplx(0, x)) - 1.0) / cplx(0, x);
    // the direct form loses digits to cancellation, the series does not
    const cplx series = 1.0 + cplx(0, x) / 2.0 - x * x / 6.0 - cplx(0, x * x * x) / 24.0;
    CHECK(std::abs(segment_factor(x) - series) <= 1e-12);
    if (x > 1e-7) CHECK(std::abs(segment_factor(x) - direct) <= 1e-9);
  }
  CHECK(segment_factor(0.0) == cplx(1.0, 0.0));
}

TEST_CASE("linear path closed forms") {
  const auto p = make_linear_path(4.0, 64);
  CHECK(std::abs(phi_increment(p, 1.0, 0.0, M_PI) - cplx(0, 2)) <= 1e-12);
  CHECK(std::abs(phi_increment(p, 0.0, 0.3, 2.9) - 2.6) <= 1e-15);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 4), ua(-30, 30);
  for (int i = 0; i < 200; ++i) {
    double s = u(rng), t = u(rng), a = ua(rng);
    if (s > t) std::swap(s, t);
    if (std::abs(a) < 1e-3) continue;
    CHECK(std::abs(phi_increment(p, a, s, t) - linear_closed_form(a, s, t)) <= 1e-12);
  }
}

TEST_CASE("additivity, modulus bound and conjugation on an fBm path") {
  const auto p = make_fbm_path(0.4, 1.0, 512, 21);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1), ua(-200, 200);
  for (int i = 0; i < 300; ++i) {
    double x[3] = {u(rng), u(rng), u(rng)};
    std::sort(x, x + 3);
    const double a = ua(rng);
    const cplx whole = phi_increment(p, a, x[0], x[2]);
    const cplx left = phi_increment(p, a, x[0], x[1]);
    const cplx right = phi_increment(p, a, x[1], x[2]);
    CHECK(std::abs(whole - left - right) <= 1e-13);
    CHECK(std::abs(whole) <= (x[2] - x[0]) * (1 + 1e-14));
    CHECK(std::abs(phi_increment(p, -a, x[0], x[2]) - std::conj(whole)) <= 1e-15);
  }
}

TEST_CASE("fbm increment matches refined Gauss-Legendre quadrature") {
  const auto p = make_fbm_path(0.5, 1.0, 256, 4);
  CHECK(std::abs(phi_increment(p, 7.3, 0.1, 0.9) - oracle::phi_quadrature(p, 7.3, 0.1, 0.9)) <= 1e-12);
  CHECK(std::abs(phi_increment(p, -41.0, 0.0, 1.0) - oracle::phi_quadrature(p, -41.0, 0.0, 1.0)) <= 1e-12);
}

TEST_CASE("offset enters as a unimodular phase") {
  const auto p = make_constant_path(1.0, 1.0, 4);
  CHECK(std::abs(phi_increment(p, 2.0, 0.25, 0.75) - 0.5 * std::exp(cplx(0, 2.0))) <= 1e-15);
}

TEST_CASE("prefix sweep equals individual increments") {
  const auto p = make_fbm_path(0.6, 1.0, 128, 2);
  const std::vector<double> times{0.0, 0.1, 0.37, 0.5, 1.0};
  const auto pre = phi_prefix(p, 12.5, times);
  REQUIRE(pre.size() == times.size());
  CHECK(pre[0] == cplx{});
  for (std::size_t i = 1; i < times.size(); ++i)
    CHECK(std::abs(pre[i] - phi_increment(p, 12.5, 0.0, times[i])) <= 1e-14);
}

TEST_CASE("table layout and symmetries") {
  const auto p = make_fbm_path(0.5, 1.0, 256, 9);
  std::vector<double> times;
  for (int i = 0; i <= 16; ++i) times.push_back(i / 16.0);
  const auto zero = build_phi_table(p, 0, times);
  for (std::size_t i = 0; i < times.size(); ++i) CHECK(zero.at(i, 0) == cplx(times[i], 0.0));

  const auto tab = build_phi_table(p, 40, times);
  CHECK(tab.width() == 81);
  for (int mu = -40; mu <= 40; ++mu) CHECK(tab.at(0, mu) == cplx{});
  double worst = 0;
  for (std::size_t i = 0; i < tab.rows(); ++i)
    for (int mu = 1; mu <= 40; ++mu) worst = std::max(worst, std::abs(tab.at(i, -mu) - std::conj(tab.at(i, mu))));
  CHECK(worst <= 1e-15);
  std::mt19937_64 rng(5);
  for (int c = 0; c < 5; ++c) {
    const std::size_t i = rng() % tab.rows();
    const int mu = static_cast<int>(rng() % 81) - 40;
    CHECK(std::abs(tab.at(i, mu) - phi_increment(p, mu, 0.0, times[i])) <= 1e-13);
  }
}

TEST_CASE("irregularity of a constant path") {
  const auto p = make_constant_path(1.0, 1.0, 64);
  const auto pairs = sample_pairs(p, 500);
  const auto grid = make_a_grid(32);
  const auto r = irregularity_norm(p, 0.0, 1.0, grid, pairs);
  CHECK(r.norm_estimate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.pair_count == pairs.size());
  const auto est = estimate_irregularity(p, 1.0, 32, 4, 500);
  CHECK(est.rho_estimate == 0.0);
}

TEST_CASE("a-grid holds the integers and Halton points") {
  const auto g = make_a_grid(4);
  CHECK(g.front() == 0.0);
  CHECK(g.back() <= 4.0);
  for (int n = 0; n <= 4; ++n) CHECK(std::count(g.begin(), g.end(), static_cast<double>(n)) == 1);
  CHECK(g.size() >= 4 * 17);
  CHECK(std::is_sorted(g.begin(), g.end()));
}

TEST_CASE("log-log slope of a power law") {
  const std::vector<double> x{1, 2, 4, 8}, y{3, 3 * std::sqrt(2.0), 6, 6 * std::sqrt(2.0)};
  CHECK(log_log_slope(x, y) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("linear path sits on the boundary rho + gamma = 1") {
  const auto p = make_linear_path(1.0, 1024);
  const auto est = estimate_irregularity(p, 0.5, 256, 5, 4000);
  CHECK(std::abs(est.rho_estimate - 0.5) <= 0.1 + 1e-12);
}
