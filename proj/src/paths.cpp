#include "ynls/paths.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ynls/fft.hpp"

namespace ynls {

std::string to_string(PathKind kind) {
  switch (kind) {
    case PathKind::linear: return "linear";
    case PathKind::constant: return "constant";
    case PathKind::fbm: return "fbm";
    case PathKind::modulated: return "modulated";
    case PathKind::external: return "external";
  }
  return "external";
}

PathKind path_kind_from_string(const std::string& s) {
  if (s == "linear") return PathKind::linear;
  if (s == "constant") return PathKind::constant;
  if (s == "fbm") return PathKind::fbm;
  if (s == "modulated") return PathKind::modulated;
  if (s == "external") return PathKind::external;
  throw std::invalid_argument("unknown path kind: " + s);
}

void validate(const SamplePath& path) {
  if (path.t.size() < 2) throw std::invalid_argument("path needs at least one segment");
  if (path.t.size() != path.w.size()) throw std::invalid_argument("path t/w length mismatch");
  if (path.t.front() != 0.0) throw std::invalid_argument("path must start at t = 0");
  if (path.w.front() != 0.0) throw std::invalid_argument("path must be normalized to w(0) = 0");
  for (std::size_t j = 1; j < path.t.size(); ++j)
    if (!(path.t[j] > path.t[j - 1])) throw std::invalid_argument("path times must be strictly increasing");
  for (double v : path.w)
    if (!std::isfinite(v)) throw std::invalid_argument("path values must be finite");
}

SamplePath path_from_samples(std::vector<double> t, std::vector<double> w, PathKind kind) {
  if (t.empty() || t.size() != w.size()) throw std::invalid_argument("path t/w length mismatch");
  SamplePath p;
  p.kind = kind;
  p.offset = w.front();
  for (double& v : w) v -= p.offset;
  w.front() = 0.0;
  p.t = std::move(t);
  p.w = std::move(w);
  validate(p);
  return p;
}

namespace {

std::vector<double> uniform_grid(double T, int M) {
  if (!(T > 0.0)) throw std::invalid_argument("path horizon T must be positive");
  if (M < 1) throw std::invalid_argument("path needs M >= 1 steps");
  std::vector<double> t(static_cast<std::size_t>(M) + 1);
  for (int j = 0; j <= M; ++j) t[j] = T * j / M;
  t.back() = T;
  return t;
}

bool is_pow2(int m) { return m > 0 && (m & (m - 1)) == 0; }

std::vector<double> fgn_circulant(double H, int M, std::mt19937_64& rng, bool& ok) {
  const std::vector<double> lambda = fgn_circulant_eigenvalues(H, M);
  const double lmax = *std::max_element(lambda.begin(), lambda.end());
  ok = *std::min_element(lambda.begin(), lambda.end()) >= -1e-10 * lmax;
  if (!ok) return {};

  const int n = 2 * M;
  std::normal_distribution<double> normal;
  std::vector<cplx> W(n);
  auto amp = [&](int j, double denom) { return std::sqrt(std::max(lambda[j], 0.0) / denom); };
  W[0] = amp(0, n) * normal(rng);
  W[M] = amp(M, n) * normal(rng);
  for (int j = 1; j < M; ++j) {
    const double re = normal(rng);
    const double im = normal(rng);
    W[j] = amp(j, 2.0 * n) * cplx(re, im);
    W[n - j] = std::conj(W[j]);
  }
  FftPlan(std::vector<int>{n}, FftPlan::Sign::forward).execute(W);
  std::vector<double> x(M);
  for (int j = 0; j < M; ++j) x[j] = W[j].real();
  return x;
}

std::vector<double> fgn_cholesky(double H, int M, std::mt19937_64& rng) {
  Eigen::MatrixXd cov(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) cov(i, j) = fgn_autocovariance(H, i - j);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw std::runtime_error("fGn covariance is not positive definite");
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(M);
  for (int i = 0; i < M; ++i) z(i) = normal(rng);
  const Eigen::VectorXd x = llt.matrixL() * z;
  return {x.data(), x.data() + M};
}

}  // namespace

SamplePath make_linear_path(double T, int M) {
  SamplePath p;
  p.kind = PathKind::linear;
  p.t = uniform_grid(T, M);
  p.w = p.t;
  return p;
}

SamplePath make_constant_path(double c, double T, int M) {
  SamplePath p;
  p.kind = PathKind::constant;
  p.t = uniform_grid(T, M);
  p.w.assign(p.t.size(), 0.0);
  p.offset = c;
  return p;
}

double fgn_autocovariance(double H, long k) {
  const double a = std::abs(static_cast<double>(k));
  const double e = 2.0 * H;
  return 0.5 * (std::pow(a + 1.0, e) - 2.0 * std::pow(a, e) + std::pow(std::abs(a - 1.0), e));
}

std::vector<double> fgn_circulant_eigenvalues(double H, int M) {
  const int n = 2 * M;
  std::vector<cplx> c(n);
  for (int j = 0; j <= M; ++j) c[j] = fgn_autocovariance(H, j);
  for (int j = 1; j < M; ++j) c[n - j] = c[j];
  FftPlan(std::vector<int>{n}, FftPlan::Sign::forward).execute(c);
  std::vector<double> lambda(n);
  for (int j = 0; j < n; ++j) lambda[j] = c[j].real();
  return lambda;
}

SamplePath make_fbm_path(double H, double T, int M, std::uint64_t seed, FbmMethod preferred) {
  if (!(H > 0.0 && H < 1.0)) throw std::invalid_argument("Hurst index must lie in (0, 1)");
  if (!is_pow2(M)) throw std::invalid_argument("fBm sampler needs M to be a power of two");
  SamplePath p;
  p.kind = PathKind::fbm;
  p.t = uniform_grid(T, M);

  std::mt19937_64 rng(seed);
  std::vector<double> noise;
  bool ok = false;
  if (preferred == FbmMethod::circulant) noise = fgn_circulant(H, M, rng, ok);
  if (ok) {
    p.method = "circulant";
  } else {
    rng.seed(seed);
    noise = fgn_cholesky(H, M, rng);
    p.method = "cholesky";
  }

  const double scale = std::pow(T / M, H);
  p.w.assign(p.t.size(), 0.0);
  for (int j = 0; j < M; ++j) p.w[j + 1] = p.w[j] + scale * noise[j];
  return p;
}

SamplePath make_modulated_path(std::span<const double> profile, double eps, double T, int M) {
  if (profile.empty()) throw std::invalid_argument("modulation profile is empty");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (eps * eps < 4.0 * T / M)
    throw std::invalid_argument("eps too small for the grid: need eps^2 >= 4 T / M");

  const std::size_t L = profile.size();
  // prefix[c] = int_0^{c/L} m
  std::vector<double> prefix(L + 1, 0.0);
  for (std::size_t c = 0; c < L; ++c)
    prefix[c + 1] = prefix[c] + 0.5 * (profile[c] + profile[(c + 1) % L]) / static_cast<double>(L);
  const double period_integral = prefix[L];

  auto antiderivative = [&](double x) {
    const double whole = std::floor(x);
    const double y = (x - whole) * static_cast<double>(L);
    auto c = static_cast<std::size_t>(y);
    if (c >= L) c = L - 1;
    const double u = y - static_cast<double>(c);
    const double m0 = profile[c];
    const double m1 = profile[(c + 1) % L];
    return whole * period_integral + prefix[c] + (m0 * u + 0.5 * (m1 - m0) * u * u) / static_cast<double>(L);
  };

  SamplePath p;
  p.kind = PathKind::modulated;
  p.t = uniform_grid(T, M);
  p.w.resize(p.t.size());
  for (std::size_t j = 0; j < p.t.size(); ++j) p.w[j] = eps * antiderivative(p.t[j] / (eps * eps));
  p.w.front() = 0.0;
  return p;
}

std::size_t segment_index(const SamplePath& path, double t) {
  const auto it = std::upper_bound(path.t.begin(), path.t.end(), t);
  std::size_t j = static_cast<std::size_t>(it - path.t.begin());
  j = j == 0 ? 0 : j - 1;
  return std::min(j, path.segments() - 1);
}

double eval_path(const SamplePath& path, double t) {
  const double T = path.horizon();
  const double slack = 1e-12 * T;
  if (!(t >= -slack && t <= T + slack)) throw std::out_of_range("eval_path: t outside [0, T]");
  t = std::clamp(t, 0.0, T);
  const std::size_t j = segment_index(path, t);
  if (t == path.t[j]) return path.w[j];
  if (t == path.t[j + 1]) return path.w[j + 1];
  const double h = path.t[j + 1] - path.t[j];
  const double u = (t - path.t[j]) / h;
  return path.w[j] + u * (path.w[j + 1] - path.w[j]);
}

}  // namespace ynls
