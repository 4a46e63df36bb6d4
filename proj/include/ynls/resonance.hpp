#pragma once

// Brute-force checks of the multilinear lattice estimates behind the kernel
// bound: the resonance sets
//
//   A(mu) = {(n_0, ..., n_{2k+1}) : n_0 - n_1 + ... - n_{2k+1} = 0,
//            |n_0|^2 - |n_1|^2 + ... - |n_{2k+1}|^2 = mu},
//
// the counting identity sum_mu 1_{A(mu)} = 1 on zero-sum tuples, and LHS/RHS
// ratios of the weighted convolution estimate and its two dyadic endpoints.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ynls/spectral.hpp"

namespace ynls {

struct ResonanceTuple {
  std::vector<ModeIndex> n;  // n_0, ..., n_{2k+1}
  long mu = 0;
};

/// Per-coordinate inclusive ranges for one slot.
struct SlotBox {
  std::vector<int> lo;
  std::vector<int> hi;

  static SlotBox cube(int d, int lo, int hi);
  bool contains(std::span<const int> n) const;
};

bool is_zero_sum(const ResonanceTuple& t);
/// |n_0|^2 - |n_1|^2 + ... - |n_{2k+1}|^2.
long tuple_offset(const ResonanceTuple& t);
/// Both membership constraints of A(mu), checked from scratch.
bool in_A(const ResonanceTuple& t, long mu);

/// Every tuple with n_j in boxes[j] (2k+2 boxes) lying in A(mu). n_0 is
/// eliminated through the linear constraint.
std::vector<ResonanceTuple> enumerate_A(long mu, std::span<const SlotBox> boxes, int d, int k);

struct CountingReport {
  long total_tuples = 0;
  long zero_sum_tuples = 0;
  long memberships = 0;  // sum over mu of |A(mu)| restricted to the box
  long violations = 0;   // tuples not in exactly the expected number of A(mu)
  std::map<long, long> counts_per_mu;
};

/// Visits every tuple of [lo, hi]^{d (2k+2)} and counts, for each, the mu in
/// [-mu_bound, mu_bound] whose membership predicate holds. Zero-sum tuples
/// must hit exactly one mu, the others none. lo > hi gives an empty box.
CountingReport verify_counting_partition(int lo, int hi, int d, int k);

enum class EstimateId { eq21, eq26, eq27 };

std::string to_string(EstimateId id);
EstimateId estimate_id_from_string(const std::string& s);

struct EstimateReport {
  EstimateId id = EstimateId::eq21;
  int d = 1;
  int k = 1;
  double s = 0.0;
  double s_prime = 0.0;
  double rho = 0.0;
  int q = 1;
  int N = 0;                // eq21 box radius
  std::vector<int> blocks;  // eq26 / eq27 dyadic scales N_0..N_{2k+1}
  std::optional<long> mu;   // eq26 stratum
  double lhs = 0.0;         // of the maximizing trial
  double rhs = 0.0;
  double ratio = 0.0;
  int trials = 0;
  double max_ratio_over_trials = 0.0;
};

/// || <n_0>^{s'} sum_{n_0 = n_1 - n_2 + ... + n_{2k+1}} W(Omega) prod_j psi_j(n_j) ||_{l^2(n_0)}
/// with W = <Omega>^{-rho} (or 1_{Omega = 0} when mu_zero_only). psi_j are
/// real on [-N, N]^d; n_0 ranges over every reachable mode.
double eq21_lhs(int d, int k, int N, double rho, double s_prime, std::span<const std::vector<double>> psi,
                bool mu_zero_only = false);

/// RHS ||psi_q||_{l^2_{s'}} prod_{j != q} ||psi_j||_{l^2_s}.
double eq21_rhs(int d, int N, double s, double s_prime, int q, std::span<const std::vector<double>> psi);

/// Max of LHS/RHS over `trials` nonnegative test families: the delta at 0,
/// indicators of the most populated spheres |n|^2 = R, and |Gaussian| samples
/// (decaying and flat). Requires 0 <= rho <= 1 (rho = 0 is the unweighted
/// endpoint and needs s >= d/2), s > d/2 - rho/k, -s <= s' <= s,
/// 1 <= q <= 2k+1, and (d, k) != (1, 1) unless allow_11.
EstimateReport estimate_ratio_eq21(int d, int k, double rho, double s, double s_prime, int q, int N, int trials,
                                   std::uint64_t seed, bool allow_11 = false);

/// Modes n with N <= <n> < 2N.
std::vector<ModeIndex> dyadic_shell(int d, int N);

/// Sup estimate of sum prod psi_j(n_j) over zero-sum tuples (eq27) or over
/// A(mu) (eq26), psi_j nonnegative, unit l^2 norm, supported on the dyadic
/// shells of `blocks`; RHS N_max^{-2s} prod N_j^s. The sup is approached by
/// alternating maximization (each psi_j set to the normalized partial
/// gradient) from the uniform family, single-tuple deltas and `trials`
/// random starts. Throws on empty shells or an unattainable mu.
EstimateReport dyadic_block_ratio(EstimateId which, std::span<const int> blocks, std::optional<long> mu, int d,
                                  int k, double s, int trials, std::uint64_t seed);

/// dyadic_block_ratio(eq26) for every attainable mu of the blocks.
std::vector<EstimateReport> dyadic_mu_sweep(std::span<const int> blocks, int d, int k, double s, int trials,
                                            std::uint64_t seed);

}  // namespace ynls
