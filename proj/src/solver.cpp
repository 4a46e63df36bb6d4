#include "ynls/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ynls/errors.hpp"
#include "ynls/fft.hpp"

namespace ynls {

std::string to_string(Scheme s) { return s == Scheme::euler_young ? "euler_young" : "picard"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "euler_young") return Scheme::euler_young;
  if (s == "picard") return Scheme::picard;
  throw ConfigError("unknown scheme '" + s + "' (expected euler_young or picard)");
}

std::vector<std::string> SolverConfig::validate() const {
  check_desk_caps(d, k, N, override_caps);
  if (!(lambda > 0.0 && lambda < gamma && gamma <= 1.0))
    throw ConfigError("exponents violate 0<λ<γ≤1 (gamma=" + std::to_string(gamma) +
                      ", lambda=" + std::to_string(lambda) + ")");
  if (!(gamma + lambda > 1.0))
    throw ConfigError("exponents violate γ+λ>1 (gamma=" + std::to_string(gamma) +
                      ", lambda=" + std::to_string(lambda) + ")");
  if (!(T > 0.0)) throw ConfigError("T must be positive");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (!partition.empty()) {
    if (partition.size() < 2 || partition.front() != 0.0)
      throw ConfigError("partition must start at 0 and contain at least two times");
    for (std::size_t i = 1; i < partition.size(); ++i)
      if (!(partition[i] > partition[i - 1])) throw ConfigError("partition must be strictly increasing");
    if (std::abs(partition.back() - T) > 1e-12 * T) throw ConfigError("partition must end at T");
  }
  std::vector<std::string> warnings;
  const double threshold = 0.5 * d - rho / k;
  if (!(s > threshold)) {
    std::ostringstream msg;
    msg << "s = " << s << " is not above d/2 - rho/k = " << threshold
        << "; the well-posedness theory does not cover this regime";
    warnings.push_back(msg.str());
  }
  return warnings;
}

double default_lambda(double gamma) {
  if (!(gamma > 0.5 && gamma <= 1.0)) throw ConfigError("no admissible lambda: need 1/2 < gamma <= 1");
  const double lam = std::min(0.99 * gamma, 1.01 * (1.0 - gamma));
  if (lam > 0.0 && lam < gamma && gamma + lam > 1.0) return lam;
  return 0.5;
}

std::vector<double> uniform_partition(double T, int steps) {
  if (!(T > 0.0) || steps < 1) throw std::invalid_argument("uniform_partition needs T > 0 and steps >= 1");
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  for (int j = 0; j <= steps; ++j) t[j] = T * j / steps;
  t.back() = T;
  return t;
}

namespace {

std::vector<std::size_t> rows_for(const YoungKernelConfig& kernel, std::span<const double> times) {
  std::vector<std::size_t> rows(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) rows[i] = kernel.time_index(times[i]);
  return rows;
}

std::vector<double> solver_times(const SolverConfig& cfg, const YoungKernelConfig& kernel) {
  if (cfg.partition.empty()) return kernel.times();
  return cfg.partition;
}

bool finite(const SpectralState& st) {
  for (const auto& c : st.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

void check_inputs(const SolverConfig& cfg, const SpectralState& phi0, const YoungKernelConfig& kernel) {
  cfg.validate();
  if (phi0.dim() != cfg.d || phi0.radius() != cfg.N) throw ConfigError("initial datum does not match (d, N)");
  if (kernel.d != cfg.d || kernel.k != cfg.k || kernel.N != cfg.N)
    throw ConfigError("kernel (d, k, N) does not match the solver config");
}

std::vector<double> hs_weights(const ModeBox& box, double s) {
  std::vector<double> w(box.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(1.0 + static_cast<double>(box.norm2(i)), s);
  return w;
}

double weighted_dist(const SpectralState& a, const SpectralState& b, const std::vector<double>& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * std::norm(a[i] - b[i]);
  return std::sqrt(acc);
}

}  // namespace

SpectralState young_integral(const YoungKernelConfig& kernel, const Trajectory& g, std::size_t s_idx,
                             std::size_t t_idx) {
  if (g.states.size() != g.times.size() || g.times.empty())
    throw std::invalid_argument("young_integral: malformed trajectory");
  if (s_idx > t_idx || t_idx >= g.times.size()) throw std::out_of_range("young_integral: index out of range");
  SpectralState acc(g.states.front().box());
  std::size_t prev = kernel.time_index(g.times[s_idx]);
  for (std::size_t j = s_idx; j < t_idx; ++j) {
    const std::size_t next = kernel.time_index(g.times[j + 1]);
    acc += x_increment(kernel, prev, next, g.states[j]);
    prev = next;
  }
  return acc;
}

Trajectory solve_euler_young(const SolverConfig& cfg, const SpectralState& phi0, const YoungKernelConfig& kernel) {
  check_inputs(cfg, phi0, kernel);
  Trajectory out;
  out.times = solver_times(cfg, kernel);
  out.scheme = to_string(Scheme::euler_young);
  const auto rows = rows_for(kernel, out.times);
  const double limit = 1e6 * hs_norm(phi0, cfg.s);
  out.states.reserve(out.times.size());
  out.states.push_back(phi0);
  for (std::size_t j = 0; j + 1 < out.times.size(); ++j) {
    SpectralState next = out.states[j] + x_increment(kernel, rows[j], rows[j + 1], out.states[j]);
    const double norm = hs_norm(next, cfg.s);
    if (!finite(next) || (limit > 0.0 && norm > limit))
      throw NumericalFailure("blow-up detected at step " + std::to_string(j + 1) + " (t = " +
                                 std::to_string(out.times[j + 1]) + ")",
                             static_cast<long>(j + 1));
    out.states.push_back(std::move(next));
  }
  out.iterations = 1;
  return out;
}

Trajectory solve_picard(const SolverConfig& cfg, const SpectralState& phi0, const YoungKernelConfig& kernel,
                        const Trajectory* initial) {
  check_inputs(cfg, phi0, kernel);
  const auto times = solver_times(cfg, kernel);
  const auto rows = rows_for(kernel, times);

  Trajectory cur;
  if (initial) {
    if (initial->times.size() != times.size()) throw ConfigError("initial iterate does not match the partition");
    cur = *initial;
  } else {
    cur.times = times;
    cur.states.assign(times.size(), phi0);
  }

  std::vector<double> residuals;
  for (int m = 1; m <= cfg.max_iter; ++m) {
    Trajectory next;
    next.times = times;
    next.states.reserve(times.size());
    SpectralState acc = phi0;
    next.states.push_back(acc);
    for (std::size_t j = 0; j + 1 < times.size(); ++j) {
      acc += x_increment(kernel, rows[j], rows[j + 1], cur.states[j]);
      next.states.push_back(acc);
    }
    const double r = holder_distance(next, cur, cfg.lambda, cfg.s);
    residuals.push_back(r);
    if (!std::isfinite(r))
      throw NumericalFailure("Picard iterate became non-finite at iteration " + std::to_string(m), m, r);
    cur = std::move(next);
    if (r < cfg.tol) {
      cur.scheme = to_string(Scheme::picard);
      cur.iterations = m;
      cur.residuals = std::move(residuals);
      return cur;
    }
  }
  std::ostringstream msg;
  msg << "Picard iteration did not converge in " << cfg.max_iter << " iterations (last residual "
      << residuals.back() << "); the horizon T = " << cfg.T << " is likely too long, try halving T";
  throw NumericalFailure(msg.str(), cfg.max_iter, residuals.back());
}

Trajectory solve(const SolverConfig& cfg, const SpectralState& phi0, const YoungKernelConfig& kernel) {
  return cfg.scheme == Scheme::picard ? solve_picard(cfg, phi0, kernel) : solve_euler_young(cfg, phi0, kernel);
}

double sup_norm(const Trajectory& traj, double s) {
  double best = 0.0;
  for (const auto& st : traj.states) best = std::max(best, hs_norm(st, s));
  return best;
}

double holder_seminorm(const Trajectory& traj, double lambda, double s) {
  if (traj.states.size() < 2) throw std::invalid_argument("holder_seminorm needs at least two times");
  const auto w = hs_weights(traj.states.front().box(), s);
  double best = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i)
    for (std::size_t j = i + 1; j < traj.states.size(); ++j) {
      const double dt = traj.times[j] - traj.times[i];
      best = std::max(best, weighted_dist(traj.states[j], traj.states[i], w) / std::pow(dt, lambda));
    }
  return best;
}

double holder_norm(const Trajectory& traj, double lambda, double s) {
  return sup_norm(traj, s) + holder_seminorm(traj, lambda, s);
}

double holder_distance(const Trajectory& a, const Trajectory& b, double lambda, double s) {
  if (a.states.size() != b.states.size() || a.times.size() != a.states.size())
    throw std::invalid_argument("holder_distance: trajectories differ in length");
  Trajectory diff;
  diff.times = a.times;
  diff.states.reserve(a.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) diff.states.push_back(a.states[i] - b.states[i]);
  return holder_norm(diff, lambda, s);
}

Trajectory reference_split_step(const SpectralState& phi0, double T, double dt, int d, int k, int N) {
  if (phi0.dim() != d || phi0.radius() != N) throw std::invalid_argument("initial datum does not match (d, N)");
  if (!(T > 0.0) || !(dt > 0.0)) throw std::invalid_argument("split step needs T > 0 and dt > 0");
  const long steps = std::lround(T / dt);
  if (steps < 1 || std::abs(steps * dt - T) > 1e-9 * T) throw std::invalid_argument("T must be a multiple of dt");
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  // Odd grid of 2R+1 points per axis: every grid frequency is a mode of the
  // box [-R, R]^d, so the field is returned without loss.
  const int R = (k + 1) * N;
  const int L = 2 * R + 1;
  const std::vector<int> dims(static_cast<std::size_t>(d), L);
  const FftPlan to_phys(dims, FftPlan::Sign::backward);
  const FftPlan to_freq(dims, FftPlan::Sign::forward);
  const ModeBox wide(d, R);
  const std::size_t G = wide.size();

  // box index -> grid index (negative frequencies wrap around)
  std::vector<std::size_t> to_grid(G);
  for (std::size_t i = 0; i < G; ++i) {
    const ModeIndex m = wide.mode(i);
    std::size_t g = 0;
    for (int a = 0; a < d; ++a) g = g * L + static_cast<std::size_t>((m[a] + L) % L);
    to_grid[i] = g;
  }
  std::vector<cplx> half(G);
  for (std::size_t i = 0; i < G; ++i) half[to_grid[i]] = std::polar(1.0, -0.5 * dt * wide.norm2(i));

  std::vector<cplx> u(G);
  const SpectralState start = embed_in_box(phi0, R);
  for (std::size_t i = 0; i < G; ++i) u[to_grid[i]] = start[i];
  const double inv_G = 1.0 / static_cast<double>(G);

  Trajectory out;
  out.scheme = "split_step";
  out.times.reserve(static_cast<std::size_t>(steps) + 1);
  out.states.reserve(static_cast<std::size_t>(steps) + 1);
  out.times.push_back(0.0);
  out.states.push_back(start);
  for (long j = 1; j <= steps; ++j) {
    for (std::size_t g = 0; g < G; ++g) u[g] *= half[g];
    to_phys.execute(u);
    for (auto& v : u) v *= std::polar(1.0, -dt * std::pow(std::norm(v), k));
    to_freq.execute(u);
    for (std::size_t g = 0; g < G; ++g) u[g] *= half[g] * inv_G;
    out.times.push_back(j == steps ? T : j * dt);
    SpectralState st(wide);
    for (std::size_t i = 0; i < G; ++i) st[i] = u[to_grid[i]];
    out.states.push_back(std::move(st));
  }
  out.iterations = 1;
  return out;
}

SpectralState plane_wave_exact(cplx c, std::span<const int> m, int N, double t, int k) {
  const double amp = std::pow(std::abs(c), 2 * k);
  return SpectralState::delta(static_cast<int>(m.size()), N, m, c * std::polar(1.0, -amp * t));
}

SpectralState plane_wave_physical(cplx c, std::span<const int> m, int N, const SamplePath& path, double t, int k) {
  return apply_U(plane_wave_exact(c, m, N, t, k), eval_path(path, t) + path.offset, Direction::forward);
}

double mass_drift(const Trajectory& traj) {
  if (traj.states.empty()) return 0.0;
  const double m0 = std::pow(hs_norm(traj.states.front(), 0.0), 2);
  if (m0 == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& st : traj.states) worst = std::max(worst, std::abs(std::pow(hs_norm(st, 0.0), 2) - m0) / m0);
  return worst;
}

double relative_l2(const SpectralState& a, const SpectralState& b) {
  const double nb = hs_norm(b, 0.0);
  if (nb == 0.0) throw std::invalid_argument("relative_l2: reference state is zero");
  return hs_norm(a - b, 0.0) / nb;
}

}  // namespace ynls
