#pragma once

// Time stepping for the Young equation
//
//   phi(t) = phi_0 + int_0^t X_{d tau}(phi(tau), ..., phi(tau))
//
// in interaction variables (the physical field is u(t) = U^{w(t)} phi(t)), the
// split-step reference for the unmodulated equation, and discrete Hoelder norms.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ynls/paths.hpp"
#include "ynls/spectral.hpp"
#include "ynls/young.hpp"

namespace ynls {

enum class Scheme { euler_young, picard };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct SolverConfig {
  int d = 1;
  int k = 1;
  int N = 8;
  double s = 0.0;
  double gamma = 0.75;
  double lambda = 0.5;
  double rho = 0.5;
  double T = 1.0;
  std::vector<double> partition;  // empty: use the kernel table grid
  Scheme scheme = Scheme::picard;
  double tol = 1e-10;
  int max_iter = 50;
  bool override_caps = false;

  /// Throws ConfigError on hard violations; returns advisory warnings.
  std::vector<std::string> validate() const;
};

/// min(0.99 gamma, 1.01 (1 - gamma)) when that satisfies 0 < lambda < gamma and
/// gamma + lambda > 1, else the midpoint 1/2 of the admissible interval.
double default_lambda(double gamma);

std::vector<double> uniform_partition(double T, int steps);

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralState> states;
  std::string scheme;
  int iterations = 0;
  std::vector<double> residuals;  // successive-iterate distances (Picard)
};

/// First-level Riemann sum sum_j X_{t_j; t_{j+1}}(g(t_j)) over the trajectory
/// times between indices s_idx <= t_idx. Every time must be a table time.
SpectralState young_integral(const YoungKernelConfig& kernel, const Trajectory& g, std::size_t s_idx,
                             std::size_t t_idx);

/// phi_{j+1} = phi_j + X_{t_j; t_{j+1}}(phi_j). Throws NumericalFailure on
/// non-finite values or when the H^s norm exceeds 1e6 times its initial value.
Trajectory solve_euler_young(const SolverConfig& cfg, const SpectralState& phi0, const YoungKernelConfig& kernel);

/// Picard iteration psi_{m+1}(t_i) = phi_0 + young_integral(psi_m, 0, i) from
/// `initial` (default: constant phi_0), stopped when the discrete C^{0,lambda}
/// distance between iterates drops below tol. Throws NumericalFailure after
/// max_iter iterations.
Trajectory solve_picard(const SolverConfig& cfg, const SpectralState& phi0, const YoungKernelConfig& kernel,
                        const Trajectory* initial = nullptr);

/// Runs the scheme selected in cfg.
Trajectory solve(const SolverConfig& cfg, const SpectralState& phi0, const YoungKernelConfig& kernel);

double sup_norm(const Trajectory& traj, double s);
/// max_{i<j} ||phi_j - phi_i||_{H^s} / |t_j - t_i|^lambda.
double holder_seminorm(const Trajectory& traj, double lambda, double s);
/// sup_norm + holder_seminorm: the discrete C^{0,lambda}([0,T]; H^s) norm.
double holder_norm(const Trajectory& traj, double lambda, double s);
/// holder_norm of the pointwise difference (same times required).
double holder_distance(const Trajectory& a, const Trajectory& b, double lambda, double s);

/// Strang splitting for i u_t = -Laplace u + |u|^{2k} u (the case w(t) = t)
/// on the odd grid of 2(k+1)N+1 points per axis. Both sub-flows are exact.
/// Returns the physical field u at t = j dt on the full grid, i.e. as states
/// on the box [-(k+1)N, (k+1)N]^d; restrict_to_box gives the [-N, N]^d part.
Trajectory reference_split_step(const SpectralState& phi0, double T, double dt, int d, int k, int N);

/// c exp(-i |c|^{2k} t) at mode m: the Young solution on the single-mode
/// invariant subspace, in interaction variables.
SpectralState plane_wave_exact(cplx c, std::span<const int> m, int N, double t, int k);

/// plane_wave_exact composed with U^{w(t)}, w the physical path (offset included).
SpectralState plane_wave_physical(cplx c, std::span<const int> m, int N, const SamplePath& path, double t, int k);

/// max_j | ||phi_j||^2 - ||phi_0||^2 | / ||phi_0||^2 (0 for zero data).
double mass_drift(const Trajectory& traj);

/// || a - b ||_{L^2} / || b ||_{L^2}.
double relative_l2(const SpectralState& a, const SpectralState& b);

}  // namespace ynls
