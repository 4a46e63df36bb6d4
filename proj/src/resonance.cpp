#include "ynls/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "ynls/errors.hpp"
#include "ynls/interaction.hpp"

namespace ynls {

SlotBox SlotBox::cube(int d, int lo, int hi) {
  return {std::vector<int>(static_cast<std::size_t>(d), lo), std::vector<int>(static_cast<std::size_t>(d), hi)};
}

bool SlotBox::contains(std::span<const int> n) const {
  if (n.size() != lo.size()) return false;
  for (std::size_t a = 0; a < n.size(); ++a)
    if (n[a] < lo[a] || n[a] > hi[a]) return false;
  return true;
}

namespace {

long sq(std::span<const int> v) {
  long s = 0;
  for (int x : v) s += static_cast<long>(x) * x;
  return s;
}

// zeta_j for slot j = 0..2k+1 in the convention n_0 - n_1 + n_2 - ... = 0
// rewritten as n_0 = n_1 - n_2 + ... + n_{2k+1}.
int slot_sign(std::size_t j) { return j % 2 == 1 ? 1 : -1; }

}  // namespace

bool is_zero_sum(const ResonanceTuple& t) {
  if (t.n.empty()) return false;
  const std::size_t d = t.n.front().size();
  for (std::size_t a = 0; a < d; ++a) {
    long acc = 0;
    for (std::size_t j = 0; j < t.n.size(); ++j) acc += (j % 2 == 0 ? 1 : -1) * static_cast<long>(t.n[j][a]);
    if (acc != 0) return false;
  }
  return true;
}

long tuple_offset(const ResonanceTuple& t) {
  long acc = 0;
  for (std::size_t j = 0; j < t.n.size(); ++j) acc += (j % 2 == 0 ? 1 : -1) * sq(t.n[j]);
  return acc;
}

bool in_A(const ResonanceTuple& t, long mu) { return is_zero_sum(t) && tuple_offset(t) == mu; }

std::vector<ResonanceTuple> enumerate_A(long mu, std::span<const SlotBox> boxes, int d, int k) {
  const std::size_t slots = static_cast<std::size_t>(2 * k + 2);
  if (boxes.size() != slots) throw std::invalid_argument("enumerate_A needs one box per slot (2k+2)");
  for (const auto& b : boxes)
    if (b.lo.size() != static_cast<std::size_t>(d) || b.hi.size() != static_cast<std::size_t>(d))
      throw std::invalid_argument("enumerate_A: box dimension mismatch");
  std::vector<ResonanceTuple> out;
  for (const auto& b : boxes)
    for (int a = 0; a < d; ++a)
      if (b.lo[a] > b.hi[a]) return out;

  ResonanceTuple cur;
  cur.n.assign(slots, ModeIndex(static_cast<std::size_t>(d)));
  cur.mu = mu;
  for (std::size_t j = 1; j < slots; ++j) cur.n[j] = boxes[j].lo;

  // odometer over n_1 .. n_{2k+1}
  for (;;) {
    ModeIndex n0(static_cast<std::size_t>(d), 0);
    for (std::size_t j = 1; j < slots; ++j)
      for (int a = 0; a < d; ++a) n0[a] += slot_sign(j) * cur.n[j][a];
    if (boxes[0].contains(n0)) {
      cur.n[0] = n0;
      if (tuple_offset(cur) == mu) out.push_back(cur);
    }
    std::size_t j = slots - 1;
    int a = d - 1;
    for (;;) {
      if (++cur.n[j][a] <= boxes[j].hi[a]) break;
      cur.n[j][a] = boxes[j].lo[a];
      if (a > 0) {
        --a;
        continue;
      }
      if (j == 1) return out;
      --j;
      a = d - 1;
    }
  }
}

CountingReport verify_counting_partition(int lo, int hi, int d, int k) {
  CountingReport rep;
  if (lo > hi) return rep;
  if (d < 1 || k < 1) throw std::invalid_argument("verify_counting_partition needs d, k >= 1");
  const int slots = 2 * k + 2;
  const int coords = slots * d;
  const long m = std::max(std::abs(lo), std::abs(hi));
  const long mu_bound = (k + 1L) * d * m * m;

  std::vector<int> x(static_cast<std::size_t>(coords), lo);
  for (;;) {
    ++rep.total_tuples;
    bool zero = true;
    long omega = 0;
    for (int a = 0; a < d; ++a) {
      long acc = 0;
      for (int j = 0; j < slots; ++j) acc += (j % 2 == 0 ? 1 : -1) * static_cast<long>(x[j * d + a]);
      if (acc != 0) zero = false;
    }
    for (int j = 0; j < slots; ++j) {
      long n2 = 0;
      for (int a = 0; a < d; ++a) n2 += static_cast<long>(x[j * d + a]) * x[j * d + a];
      omega += (j % 2 == 0 ? 1 : -1) * n2;
    }
    if (zero) ++rep.zero_sum_tuples;
    long hits = 0;
    for (long mu = -mu_bound; mu <= mu_bound; ++mu)
      if (zero && omega == mu) {
        ++hits;
        ++rep.counts_per_mu[mu];
      }
    rep.memberships += hits;
    if (hits != (zero ? 1 : 0)) ++rep.violations;

    int c = coords - 1;
    for (; c >= 0; --c) {
      if (++x[c] <= hi) break;
      x[c] = lo;
    }
    if (c < 0) break;
  }
  return rep;
}

std::string to_string(EstimateId id) {
  switch (id) {
    case EstimateId::eq21: return "eq21";
    case EstimateId::eq26: return "eq26";
    case EstimateId::eq27: return "eq27";
  }
  return "?";
}

EstimateId estimate_id_from_string(const std::string& s) {
  if (s == "eq21") return EstimateId::eq21;
  if (s == "eq26") return EstimateId::eq26;
  if (s == "eq27") return EstimateId::eq27;
  throw ConfigError("unknown estimate '" + s + "'");
}

double eq21_lhs(int d, int k, int N, double rho, double s_prime, std::span<const std::vector<double>> psi,
                bool mu_zero_only) {
  const std::size_t slots = static_cast<std::size_t>(2 * k + 1);
  const ModeBox in_box(d, N);
  if (psi.size() != slots) throw std::invalid_argument("eq21_lhs needs 2k+1 functions");
  for (const auto& p : psi)
    if (p.size() != in_box.size()) throw std::invalid_argument("eq21_lhs: function size mismatch");

  const int n_out = (2 * k + 1) * N;
  const long radius = interaction_omega_bound(d, k, N, n_out);
  std::vector<double> weights(2 * static_cast<std::size_t>(radius) + 1);
  for (long mu = -radius; mu <= radius; ++mu)
    weights[static_cast<std::size_t>(mu + radius)] =
        mu_zero_only ? (mu == 0 ? 1.0 : 0.0) : std::pow(1.0 + static_cast<double>(mu) * mu, -0.5 * rho);

  std::vector<const double*> ptrs;
  for (const auto& p : psi) ptrs.push_back(p.data());
  const ModeBox out_box(d, n_out);
  std::vector<double> out(out_box.size());
  interaction_sum<double>(d, N, ptrs, n_out, {weights.data() + radius, radius}, out);

  double acc = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] != 0.0) acc += std::pow(1.0 + static_cast<double>(out_box.norm2(i)), s_prime) * out[i] * out[i];
  return std::sqrt(acc);
}

namespace {

double weighted_l2(const ModeBox& box, const std::vector<double>& f, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0) acc += std::pow(1.0 + static_cast<double>(box.norm2(i)), s) * f[i] * f[i];
  return std::sqrt(acc);
}

// Radii R with the most lattice points |n|^2 = R in the box, most populated first.
std::vector<long> populous_spheres(const ModeBox& box, std::size_t count) {
  std::map<long, long> pop;
  for (std::size_t i = 0; i < box.size(); ++i) ++pop[box.norm2(i)];
  std::vector<std::pair<long, long>> v(pop.begin(), pop.end());
  std::stable_sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.second > b.second; });
  std::vector<long> out;
  for (std::size_t i = 0; i < v.size() && out.size() < count; ++i) out.push_back(v[i].first);
  return out;
}

}  // namespace

double eq21_rhs(int d, int N, double s, double s_prime, int q, std::span<const std::vector<double>> psi) {
  const ModeBox box(d, N);
  double rhs = 1.0;
  for (std::size_t j = 0; j < psi.size(); ++j)
    rhs *= weighted_l2(box, psi[j], static_cast<int>(j) + 1 == q ? s_prime : s);
  return rhs;
}

EstimateReport estimate_ratio_eq21(int d, int k, double rho, double s, double s_prime, int q, int N, int trials,
                                   std::uint64_t seed, bool allow_11) {
  if (d < 1 || k < 1) throw ConfigError("need d, k >= 1");
  if (d == 1 && k == 1 && !allow_11) throw ConfigError("(d, k) = (1, 1) is outside the estimate's hypotheses");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("need 0 <= rho <= 1");
  if (rho == 0.0 ? !(s >= 0.5 * d) : !(s > 0.5 * d - rho / k))
    throw ConfigError("need s > d/2 - rho/k (s >= d/2 when rho = 0)");
  if (!(s_prime >= -s && s_prime <= s)) throw ConfigError("need -s <= s' <= s");
  if (q < 1 || q > 2 * k + 1) throw ConfigError("need 1 <= q <= 2k+1");
  if (N < 0) throw ConfigError("need N >= 0");
  if (trials < 1) throw ConfigError("need trials >= 1");

  const ModeBox box(d, N);
  const std::size_t slots = static_cast<std::size_t>(2 * k + 1);
  const std::size_t n_spheres = std::min<std::size_t>(static_cast<std::size_t>(trials) / 5, 4);
  const auto spheres = populous_spheres(box, n_spheres);

  EstimateReport rep;
  rep.id = EstimateId::eq21;
  rep.d = d;
  rep.k = k;
  rep.s = s;
  rep.s_prime = s_prime;
  rep.rho = rho;
  rep.q = q;
  rep.N = N;
  rep.trials = trials;

  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<double>> psi(slots, std::vector<double>(box.size(), 0.0));
    if (t == 0) {
      const ModeIndex zero(static_cast<std::size_t>(d), 0);
      for (auto& p : psi) p[box.index(zero)] = 1.0;
    } else if (static_cast<std::size_t>(t) <= spheres.size()) {
      const long R = spheres[static_cast<std::size_t>(t) - 1];
      for (auto& p : psi)
        for (std::size_t i = 0; i < box.size(); ++i) p[i] = box.norm2(i) == R ? 1.0 : 0.0;
    } else {
      std::mt19937_64 rng(seed * 7919ULL + static_cast<std::uint64_t>(t));
      std::normal_distribution<double> normal;
      const bool flat = t % 2 == 0;
      for (std::size_t j = 0; j < slots; ++j) {
        const double sigma = static_cast<int>(j) + 1 == q ? s_prime : s;
        for (std::size_t i = 0; i < box.size(); ++i) {
          const double decay =
              flat ? 1.0 : std::pow(1.0 + static_cast<double>(box.norm2(i)), -0.5 * (sigma + 0.5 * d + 0.01));
          psi[j][i] = std::abs(normal(rng)) * decay;
        }
      }
    }
    const double lhs = eq21_lhs(d, k, N, rho, s_prime, psi);
    const double rhs = eq21_rhs(d, N, s, s_prime, q, psi);
    const double ratio = lhs / rhs;
    if (ratio > rep.max_ratio_over_trials) {
      rep.max_ratio_over_trials = ratio;
      rep.lhs = lhs;
      rep.rhs = rhs;
      rep.ratio = ratio;
    }
  }
  return rep;
}

std::vector<ModeIndex> dyadic_shell(int d, int N) {
  if (N < 1) throw std::invalid_argument("dyadic scale must be >= 1");
  // N <= <n> < 2N  <=>  N^2 - 1 <= |n|^2 < 4 N^2 - 1
  const long lo2 = static_cast<long>(N) * N - 1;
  const long hi2 = 4L * N * N - 1;
  const int r = 2 * N;
  const ModeBox box(d, r);
  std::vector<ModeIndex> out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const long n2 = box.norm2(i);
    if (n2 >= lo2 && n2 < hi2) out.push_back(box.mode(i));
  }
  return out;
}

namespace {

struct TupleSet {
  int slots = 0;
  std::vector<std::size_t> shell_size;
  std::vector<int> idx;  // tuple-major, `slots` entries per tuple
  std::vector<long> omega;
  std::size_t count() const { return omega.size(); }
};

long mode_key(std::span<const int> n, int r) {
  long key = 0;
  for (int v : n) key = key * (4L * r + 1) + (v + 2L * r);
  return key;
}

TupleSet dyadic_tuples(std::span<const int> blocks, int d, int k) {
  const int slots = 2 * k + 2;
  if (static_cast<int>(blocks.size()) != slots) throw std::invalid_argument("need 2k+2 dyadic blocks");
  std::vector<std::vector<ModeIndex>> shells;
  int r = 1;
  for (int N : blocks) {
    if (N < 1 || (N & (N - 1)) != 0) throw std::invalid_argument("dyadic blocks must be powers of two");
    shells.push_back(dyadic_shell(d, N));
    if (shells.back().empty()) throw std::invalid_argument("empty dyadic shell");
    r = std::max(r, 2 * N);
  }
  const int rr = (2 * k + 1) * r;
  std::unordered_map<long, int> shell0;
  for (std::size_t i = 0; i < shells[0].size(); ++i) shell0[mode_key(shells[0][i], rr)] = static_cast<int>(i);

  TupleSet ts;
  ts.slots = slots;
  for (const auto& sh : shells) ts.shell_size.push_back(sh.size());
  std::vector<int> cur(static_cast<std::size_t>(slots), 0);
  ModeIndex n0(static_cast<std::size_t>(d));
  for (;;) {
    std::fill(n0.begin(), n0.end(), 0);
    long omega = 0;
    for (int j = 1; j < slots; ++j) {
      const ModeIndex& m = shells[j][static_cast<std::size_t>(cur[j])];
      for (int a = 0; a < d; ++a) n0[a] += slot_sign(static_cast<std::size_t>(j)) * m[a];
      omega -= (j % 2 == 0 ? -1 : 1) * sq(m);
    }
    const auto it = shell0.find(mode_key(n0, rr));
    if (it != shell0.end()) {
      cur[0] = it->second;
      ts.idx.insert(ts.idx.end(), cur.begin(), cur.end());
      ts.omega.push_back(omega + sq(n0));
    }
    int j = slots - 1;
    for (; j >= 1; --j) {
      if (++cur[j] < static_cast<int>(shells[j].size())) break;
      cur[j] = 0;
    }
    if (j < 1) break;
  }
  return ts;
}

// Alternating maximization of F(psi) = sum_tuples prod_j psi_j(n_j) over unit
// nonnegative psi_j. Each update replaces psi_i by its normalized partial
// gradient, which never decreases F.
double ascend(const TupleSet& ts, std::span<const std::size_t> members, std::vector<std::vector<double>> psi) {
  double F = 0.0;
  std::vector<double> g;
  for (int round = 0; round < 200; ++round) {
    const double before = F;
    for (int i = 0; i < ts.slots; ++i) {
      g.assign(ts.shell_size[i], 0.0);
      for (std::size_t t : members) {
        const int* id = &ts.idx[t * ts.slots];
        double p = 1.0;
        for (int j = 0; j < ts.slots; ++j)
          if (j != i) p *= psi[j][id[j]];
        g[id[i]] += p;
      }
      double norm = 0.0;
      for (double v : g) norm += v * v;
      norm = std::sqrt(norm);
      if (norm == 0.0) return F;
      for (double& v : g) v /= norm;
      psi[i] = g;
      F = norm;
    }
    if (round > 0 && F - before <= 1e-12 * F) break;
  }
  return F;
}

EstimateReport block_report(EstimateId which, std::span<const int> blocks, std::optional<long> mu, int d, int k,
                            double s, int trials, std::uint64_t seed, const TupleSet& ts) {
  std::vector<std::size_t> members;
  for (std::size_t t = 0; t < ts.count(); ++t)
    if (!mu || ts.omega[t] == *mu) members.push_back(t);
  if (members.empty())
    throw std::invalid_argument(mu ? "mu = " + std::to_string(*mu) + " is not attainable on these blocks"
                                   : "no zero-sum tuples on these blocks");

  const int nmax = *std::max_element(blocks.begin(), blocks.end());
  double rhs = std::pow(static_cast<double>(nmax), -2.0 * s);
  for (int N : blocks) rhs *= std::pow(static_cast<double>(N), s);

  std::vector<std::vector<double>> psi(static_cast<std::size_t>(ts.slots));
  // uniform start
  for (int j = 0; j < ts.slots; ++j)
    psi[j].assign(ts.shell_size[j], 1.0 / std::sqrt(static_cast<double>(ts.shell_size[j])));
  double best = ascend(ts, members, psi);
  // single-tuple delta start: F = 1 before ascent
  {
    const int* id = &ts.idx[members.front() * ts.slots];
    for (int j = 0; j < ts.slots; ++j) {
      psi[j].assign(ts.shell_size[j], 0.0);
      psi[j][id[j]] = 1.0;
    }
    best = std::max({best, 1.0, ascend(ts, members, psi)});
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int t = 0; t < trials; ++t) {
    for (int j = 0; j < ts.slots; ++j) {
      double norm = 0.0;
      for (auto& v : psi[j]) {
        v = std::abs(normal(rng));
        norm += v * v;
      }
      for (auto& v : psi[j]) v /= std::sqrt(norm);
    }
    best = std::max(best, ascend(ts, members, psi));
  }

  EstimateReport rep;
  rep.id = which;
  rep.d = d;
  rep.k = k;
  rep.s = s;
  rep.blocks.assign(blocks.begin(), blocks.end());
  rep.mu = mu;
  rep.lhs = best;
  rep.rhs = rhs;
  rep.ratio = best / rhs;
  rep.trials = trials + 2;
  rep.max_ratio_over_trials = rep.ratio;
  return rep;
}

}  // namespace

EstimateReport dyadic_block_ratio(EstimateId which, std::span<const int> blocks, std::optional<long> mu, int d,
                                  int k, double s, int trials, std::uint64_t seed) {
  if (which == EstimateId::eq21) throw ConfigError("dyadic_block_ratio handles eq26 and eq27");
  if (which == EstimateId::eq26 && !mu) throw ConfigError("eq26 needs a mu value");
  if (which == EstimateId::eq27) mu.reset();
  if (trials < 0) throw ConfigError("trials must be >= 0");
  const TupleSet ts = dyadic_tuples(blocks, d, k);
  return block_report(which, blocks, mu, d, k, s, trials, seed, ts);
}

std::vector<EstimateReport> dyadic_mu_sweep(std::span<const int> blocks, int d, int k, double s, int trials,
                                            std::uint64_t seed) {
  const TupleSet ts = dyadic_tuples(blocks, d, k);
  std::vector<long> mus(ts.omega);
  std::sort(mus.begin(), mus.end());
  mus.erase(std::unique(mus.begin(), mus.end()), mus.end());
  std::vector<EstimateReport> out;
  out.reserve(mus.size());
  for (long mu : mus) out.push_back(block_report(EstimateId::eq26, blocks, mu, d, k, s, trials, seed, ts));
  return out;
}

}  // namespace ynls
