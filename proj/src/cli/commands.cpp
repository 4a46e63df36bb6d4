#include "ynls/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "ynls/errors.hpp"
#include "ynls/io.hpp"
#include "ynls/parallel.hpp"
#include "ynls/phi.hpp"
#include "ynls/resonance.hpp"
#include "ynls/solver.hpp"
#include "ynls/young.hpp"

namespace ynls {
namespace {

const char* kUsage =
    "usage: ynls <command> [options]\n"
    "commands:\n"
    "  gen-path          generate a modulation path CSV\n"
    "  irregularity      grid estimate of the (rho, gamma) irregularity norm\n"
    "  solve             solve the Young equation for one configuration\n"
    "  converge          mesh refinement study\n"
    "  verify-estimates  lattice checks of the multilinear estimates\n"
    "  xnorm             empirical C^gamma norm of the Young kernel\n"
    "run `ynls <command> --help` for the options of a command\n";

// ---------------------------------------------------------------- configs

struct PlaneWave {
  cplx c;
  ModeIndex m;
};

struct Initial {
  SpectralState state;
  std::optional<PlaneWave> plane_wave;
};

struct ExperimentConfig {
  SolverConfig solver;
  int steps = 0;
  bool gamma_given = false;
  bool lambda_given = false;
  json path_spec;  // null when the path comes from --path
  json init_spec;  // null when the datum comes from --init
  bool all_states = true;
};

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {"d",     "k",        "N",         "s",        "gamma",
                                              "lambda", "rho",      "T",         "steps",    "dt",
                                              "scheme", "tol",      "max_iter",  "override_caps",
                                              "path",   "init",     "states"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config field '" + key + "'");

  ExperimentConfig e;
  SolverConfig& c = e.solver;
  try {
    c.d = get_or(j, "d", c.d);
    c.k = get_or(j, "k", c.k);
    c.N = get_or(j, "N", c.N);
    c.s = get_or(j, "s", c.s);
    c.rho = get_or(j, "rho", c.rho);
    c.T = get_or(j, "T", c.T);
    c.tol = get_or(j, "tol", c.tol);
    c.max_iter = get_or(j, "max_iter", c.max_iter);
    c.override_caps = get_or(j, "override_caps", false);
    c.scheme = scheme_from_string(get_or<std::string>(j, "scheme", "picard"));
    e.gamma_given = j.contains("gamma");
    e.lambda_given = j.contains("lambda");
    if (e.gamma_given) c.gamma = j.at("gamma").get<double>();
    if (e.lambda_given) c.lambda = j.at("lambda").get<double>();
    if (j.contains("steps")) {
      e.steps = j.at("steps").get<int>();
    } else if (j.contains("dt")) {
      const double dt = j.at("dt").get<double>();
      if (!(dt > 0.0)) throw ConfigError("dt must be positive");
      e.steps = static_cast<int>(std::lround(c.T / dt));
      if (std::abs(e.steps * dt - c.T) > 1e-9 * c.T) throw ConfigError("T must be a multiple of dt");
    } else {
      e.steps = 100;
    }
    if (e.steps < 1) throw ConfigError("steps must be >= 1");
    if (j.contains("path")) e.path_spec = j.at("path");
    if (j.contains("init")) e.init_spec = j.at("init");
    const std::string states = get_or<std::string>(j, "states", "all");
    if (states != "all" && states != "endpoints") throw ConfigError("states must be 'all' or 'endpoints'");
    e.all_states = states == "all";
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("config: ") + ex.what());
  }
  return e;
}

SamplePath path_from_spec(const json& spec, double T_default) {
  try {
    const PathKind kind = path_kind_from_string(spec.at("kind").get<std::string>());
    const double T = get_or(spec, "T", T_default);
    const int M = get_or(spec, "M", 1024);
    switch (kind) {
      case PathKind::linear: return make_linear_path(T, M);
      case PathKind::constant: return make_constant_path(get_or(spec, "c", 1.0), T, M);
      case PathKind::fbm:
        return make_fbm_path(get_or(spec, "H", 0.5), T, M, get_or<std::uint64_t>(spec, "seed", 0));
      case PathKind::modulated: {
        std::vector<double> profile;
        if (spec.contains("profile_values"))
          profile = spec.at("profile_values").get<std::vector<double>>();
        else if (spec.contains("profile"))
          profile = read_profile(spec.at("profile").get<std::string>());
        else
          throw ConfigError("modulated path needs 'profile' or 'profile_values'");
        return make_modulated_path(profile, spec.at("eps").get<double>(), T, M);
      }
      case PathKind::external: return read_path_csv(spec.at("file").get<std::string>());
    }
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("path section: ") + ex.what());
  }
  throw ConfigError("unsupported path kind");
}

Initial init_from_spec(const json& spec, int d, int N) {
  try {
    const std::string type = spec.at("type").get<std::string>();
    if (type == "plane_wave") {
      const auto c = spec.at("c").get<std::vector<double>>();
      if (c.empty() || c.size() > 2) throw ConfigError("plane_wave c must be [re] or [re, im]");
      PlaneWave pw{cplx(c[0], c.size() == 2 ? c[1] : 0.0), spec.at("m").get<ModeIndex>()};
      if (static_cast<int>(pw.m.size()) != d) throw ConfigError("plane_wave m must have d entries");
      if (!ModeBox(d, N).contains(pw.m)) throw ConfigError("plane_wave m lies outside [-N, N]^d");
      return {SpectralState::delta(d, N, pw.m, pw.c), pw};
    }
    if (type == "random") {
      SpectralState st = random_state(d, N, get_or(spec, "s", 1.0), get_or<std::uint64_t>(spec, "seed", 0));
      if (spec.contains("norm")) {
        const double current = hs_norm(st, get_or(spec, "norm_s", 0.0));
        st *= spec.at("norm").get<double>() / current;
      }
      return {st, std::nullopt};
    }
    if (type == "file") {
      SpectralState st = read_state_csv(spec.at("file").get<std::string>());
      if (st.dim() != d || st.radius() != N) throw ConfigError("initial state file does not match (d, N)");
      return {st, std::nullopt};
    }
    throw ConfigError("unknown init type '" + type + "'");
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("init section: ") + ex.what());
  }
}

// Largest gamma in {0.95, 0.90, ..., 0.55} whose irregularity trend at the
// configured rho stays bounded over five a_max doublings.
double gamma_from_path(const SamplePath& path, double rho) {
  const auto a_grid = make_a_grid(64.0);
  const auto pairs = sample_pairs(path, 4000);
  for (int g = 95; g >= 55; g -= 5) {
    const double gamma = g / 100.0;
    const auto rep = irregularity_norm(path, rho, gamma, a_grid, pairs, 5);
    if (rep.trend_slope < kBoundedTrendSlope) return gamma;
  }
  throw ConfigError("no gamma in [0.55, 0.95] gives a bounded irregularity trend at rho = " + std::to_string(rho) +
                    "; set gamma explicitly");
}

struct Prepared {
  ExperimentConfig cfg;
  SamplePath path;
  Initial init;
  std::vector<std::string> warnings;
  std::string gamma_source;
};

Prepared prepare(const std::string& config_file, const std::string& path_file, const std::string& init_file) {
  Prepared p;
  p.cfg = parse_config(read_json(config_file));
  SolverConfig& c = p.cfg.solver;
  if (!path_file.empty())
    p.path = read_path_csv(path_file);
  else if (!p.cfg.path_spec.is_null())
    p.path = path_from_spec(p.cfg.path_spec, c.T);
  else
    throw ConfigError("no path: pass --path or add a 'path' section to the config");
  if (p.path.horizon() + 1e-12 * c.T < c.T) throw ConfigError("path horizon is shorter than T");

  if (!init_file.empty()) {
    p.init.state = read_state_csv(init_file);
    if (p.init.state.dim() != c.d || p.init.state.radius() != c.N)
      throw ConfigError("initial state file does not match (d, N)");
  } else if (!p.cfg.init_spec.is_null()) {
    p.init = init_from_spec(p.cfg.init_spec, c.d, c.N);
  } else {
    throw ConfigError("no initial datum: pass --init or add an 'init' section to the config");
  }

  p.gamma_source = "config";
  if (!p.cfg.gamma_given) {
    c.gamma = gamma_from_path(p.path, c.rho);
    p.gamma_source = "irregularity";
  }
  if (!p.cfg.lambda_given) c.lambda = default_lambda(c.gamma);
  c.partition = uniform_partition(c.T, p.cfg.steps);
  p.warnings = c.validate();
  return p;
}

YoungKernelConfig kernel_for(const SolverConfig& c, const SamplePath& path) {
  check_desk_caps(c.d, c.k, c.N, c.override_caps);
  return make_kernel_config(c.d, c.k, c.N, make_kernel_table(path, c.d, c.k, c.N, c.partition), c.override_caps);
}

std::string state_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "state_%05zu.csv", i);
  return buf;
}

double plane_wave_error(const Trajectory& traj, const PlaneWave& pw, int N, int k) {
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    worst = std::max(worst, relative_l2(traj.states[i], plane_wave_exact(pw.c, pw.m, N, traj.times[i], k)));
  return worst;
}

json failure_json(const NumericalFailure& f) {
  json j = {{"error", "numerical_failure"}, {"message", f.what()}};
  if (f.step() >= 0) j["step"] = f.step();
  if (f.last_residual() >= 0.0) j["last_residual"] = f.last_residual();
  return j;
}

// ---------------------------------------------------------------- commands

struct Common {
  std::optional<int> threads;
};

void add_threads(CLI::App* sub, Common& common) {
  sub->add_option_function<int>(
      "--threads", [&common](int n) { common.threads = n; },
      "worker threads (default: $YNLS_THREADS, else all cores)");
}

int cmd_gen_path(const std::string& kind, double T, int M, double H, std::uint64_t seed, double c, double eps,
                 const std::string& profile, const std::string& out_file, std::ostream& out) {
  json spec = {{"kind", kind}, {"T", T}, {"M", M}, {"H", H}, {"seed", seed}, {"c", c}};
  if (kind == "modulated") {
    if (profile.empty()) throw ConfigError("--profile is required for --kind modulated");
    if (!(eps > 0.0)) throw ConfigError("--eps is required for --kind modulated");
    spec["profile"] = profile;
    spec["eps"] = eps;
  } else if (kind == "external") {
    throw ConfigError("gen-path generates linear, constant, fbm or modulated paths");
  }
  const SamplePath path = path_from_spec(spec, T);
  write_path_csv(path, out_file);
  json meta = {{"kind", to_string(path.kind)}, {"T", path.horizon()}, {"M", path.segments()},
               {"offset", path.offset}};
  if (!path.method.empty()) meta["method"] = path.method;
  write_json(meta, fs::path(out_file).replace_extension(".json"));
  out << "wrote " << out_file << " (" << path.t.size() << " nodes)\n";
  return kExitOk;
}

int cmd_irregularity(const std::string& path_file, double gamma, std::optional<double> rho, double amax,
                     std::size_t pairs_target, int levels, const std::string& out_file, std::ostream& out) {
  const SamplePath path = read_path_csv(path_file);
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  if (!(amax > 0.0)) throw ConfigError("--amax must be positive");
  if (rho) {
    const auto a_grid = make_a_grid(amax);
    const auto pairs = sample_pairs(path, pairs_target);
    const auto rep = irregularity_norm(path, *rho, gamma, a_grid, pairs, levels);
    write_json(to_json(rep), out_file);
    out << "norm_estimate " << format_double(rep.norm_estimate) << " trend slope "
        << format_double(rep.trend_slope) << '\n';
  } else {
    const auto est = estimate_irregularity(path, gamma, amax, levels, pairs_target);
    json reports = json::array();
    for (const auto& r : est.reports) reports.push_back(to_json(r));
    write_json({{"gamma", est.gamma}, {"rho_estimate", est.rho_estimate}, {"reports", reports}}, out_file);
    out << "rho_estimate " << format_double(est.rho_estimate) << '\n';
  }
  return kExitOk;
}

int cmd_solve(const std::string& config_file, const std::string& path_file, const std::string& init_file,
              const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const Prepared p = prepare(config_file, path_file, init_file);
  const SolverConfig& c = p.cfg.solver;
  for (const auto& w : p.warnings) err << "warning: " << w << '\n';
  const YoungKernelConfig kernel = kernel_for(c, p.path);
  fs::create_directories(out_dir);

  Trajectory traj;
  try {
    traj = solve(c, p.init.state, kernel);
  } catch (const NumericalFailure& f) {
    const json diag = failure_json(f);
    write_json(diag, fs::path(out_dir) / "failure.json");
    throw;
  }

  const fs::path states_dir = fs::path(out_dir) / "states";
  fs::create_directories(states_dir);
  json written = json::array();
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    if (!p.cfg.all_states && i != 0 && i + 1 != traj.states.size()) continue;
    write_state_csv(traj.states[i], states_dir / state_name(i));
    written.push_back({{"index", i}, {"t", traj.times[i]}, {"file", "states/" + state_name(i)}});
  }

  json report = {{"scheme", traj.scheme},
                 {"d", c.d},
                 {"k", c.k},
                 {"N", c.N},
                 {"s", c.s},
                 {"rho", c.rho},
                 {"gamma", c.gamma},
                 {"gamma_source", p.gamma_source},
                 {"lambda", c.lambda},
                 {"T", c.T},
                 {"steps", p.cfg.steps},
                 {"iterations", traj.iterations},
                 {"residuals", traj.residuals},
                 {"mass_drift", mass_drift(traj)},
                 {"sup_norm", sup_norm(traj, c.s)},
                 {"holder_norm", holder_norm(traj, c.lambda, c.s)},
                 {"path_kind", to_string(p.path.kind)},
                 {"warnings", p.warnings},
                 {"states", written}};
  if (p.init.plane_wave) report["plane_wave_error"] = plane_wave_error(traj, *p.init.plane_wave, c.N, c.k);
  write_json(report, fs::path(out_dir) / "report.json");
  out << traj.scheme << ": " << traj.states.size() << " states, mass drift "
      << format_double(report["mass_drift"].get<double>()) << '\n';
  return kExitOk;
}

int cmd_converge(const std::string& config_file, const std::string& path_file, const std::string& init_file,
                 int levels, const std::string& out_file, std::ostream& out) {
  if (levels < 1) throw ConfigError("--levels must be >= 1");
  Prepared p = prepare(config_file, path_file, init_file);
  SolverConfig c = p.cfg.solver;
  const int base = p.cfg.steps;
  const bool exact = p.init.plane_wave.has_value();
  // With a plane wave the closed form is the reference, else the finest run.
  const int runs = exact ? levels : levels + 1;

  std::vector<double> mesh;
  std::vector<SpectralState> finals;
  for (int l = 0; l < runs; ++l) {
    c.partition = uniform_partition(c.T, base << l);
    const auto kernel = kernel_for(c, p.path);
    const Trajectory traj = solve(c, p.init.state, kernel);
    mesh.push_back(c.T / (base << l));
    finals.push_back(traj.states.back());
  }
  const SpectralState reference =
      exact ? plane_wave_exact(p.init.plane_wave->c, p.init.plane_wave->m, c.N, c.T, c.k) : finals.back();

  if (fs::path(out_file).has_parent_path()) fs::create_directories(fs::path(out_file).parent_path());
  std::ofstream csv(out_file);
  if (!csv) throw std::runtime_error("cannot write " + out_file);
  csv << "mesh,error,order\n";
  double prev = 0.0;
  for (int l = 0; l < levels; ++l) {
    const double e = relative_l2(finals[l], reference);
    csv << format_double(mesh[l]) << ',' << format_double(e) << ',';
    if (l > 0 && e > 0.0 && prev > 0.0) csv << format_double(std::log2(prev / e));
    csv << '\n';
    prev = e;
  }
  out << "wrote " << out_file << '\n';
  return kExitOk;
}

struct EstimateArgs {
  std::string which;
  int d = 2;
  int k = 1;
  int N = 4;
  double rho = 1.0;
  double s = 0.3;
  double s_prime = 0.0;
  int q = 1;
  int trials = 20;
  std::uint64_t seed = 0;
  std::vector<int> blocks;
  std::optional<long> mu;
  bool allow_11 = false;
  int lo = 0;
  std::optional<int> hi;
};

int cmd_verify(const EstimateArgs& a, const std::string& out_file, std::ostream& out) {
  if (a.which == "counting") {
    const int hi = a.hi.value_or(a.N);
    const int lo = a.hi ? a.lo : -a.N;
    const CountingReport rep = verify_counting_partition(lo, hi, a.d, a.k);
    json j = to_json(rep);
    j["d"] = a.d;
    j["k"] = a.k;
    j["lo"] = lo;
    j["hi"] = hi;
    write_json(j, out_file);
    out << "counting: " << rep.zero_sum_tuples << " zero-sum tuples, " << rep.violations << " violations\n";
    return kExitOk;
  }
  const EstimateId id = estimate_id_from_string(a.which);
  if (id == EstimateId::eq21) {
    const auto rep = estimate_ratio_eq21(a.d, a.k, a.rho, a.s, a.s_prime, a.q, a.N, a.trials, a.seed, a.allow_11);
    write_json(to_json(rep), out_file);
    out << "eq21 max ratio " << format_double(rep.max_ratio_over_trials) << '\n';
    return kExitOk;
  }
  if (static_cast<int>(a.blocks.size()) != 2 * a.k + 2) throw ConfigError("--blocks needs 2k+2 dyadic scales");
  if (id == EstimateId::eq26 && !a.mu) {
    const auto reps = dyadic_mu_sweep(a.blocks, a.d, a.k, a.s, a.trials, a.seed);
    double lo = INFINITY, hi = 0.0;
    json arr = json::array();
    for (const auto& r : reps) {
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
      arr.push_back(to_json(r));
    }
    write_json({{"estimate_id", "eq26"}, {"blocks", a.blocks}, {"max_ratio", hi}, {"min_ratio", lo},
                {"max_over_min", hi / lo}, {"reports", arr}},
               out_file);
    out << "eq26 sweep over " << reps.size() << " mu values, max/min " << format_double(hi / lo) << '\n';
    return kExitOk;
  }
  const auto rep = dyadic_block_ratio(id, a.blocks, a.mu, a.d, a.k, a.s, a.trials, a.seed);
  write_json(to_json(rep), out_file);
  out << a.which << " ratio " << format_double(rep.ratio) << '\n';
  return kExitOk;
}

int cmd_xnorm(const std::string& path_file, int d, int k, int N, double gamma, double s, int trials,
              std::uint64_t seed, int steps, bool override_caps, const std::string& out_file, std::ostream& out) {
  const SamplePath path = read_path_csv(path_file);
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  if (trials < 1) throw ConfigError("--trials must be >= 1");
  check_desk_caps(d, k, N, override_caps);
  const auto times = uniform_partition(path.horizon(), steps);
  const auto kernel = make_kernel_config(d, k, N, make_kernel_table(path, d, k, N, times), override_caps);
  const double est = x_norm_estimate(kernel, gamma, s, trials, seed);
  write_json({{"d", d},
              {"k", k},
              {"N", N},
              {"gamma", gamma},
              {"s", s},
              {"trials", trials},
              {"seed", seed},
              {"steps", steps},
              {"pair_count", kernel_pairs(times.size()).size()},
              {"x_norm_estimate", est}},
             out_file);
  out << "x_norm_estimate " << format_double(est) << '\n';
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> commands = {"gen-path", "converge", "irregularity",
                                                 "solve",    "xnorm",    "verify-estimates"};
  if (args.size() < 2) {
    err << kUsage;
    return kExitUsage;
  }
  if (args[1] == "--help" || args[1] == "-h") {
    out << kUsage;
    return kExitOk;
  }
  if (!commands.count(args[1])) {
    err << "unknown command '" << args[1] << "'\n" << kUsage;
    return kExitUsage;
  }

  CLI::App app{"Numerical lab for the modulated-dispersion NLS", "ynls"};
  app.require_subcommand(1);
  Common common;
  std::function<int()> action;

  // gen-path
  auto* gen = app.add_subcommand("gen-path", "generate a modulation path CSV");
  std::string g_kind, g_out, g_profile;
  double g_T = 1.0, g_H = 0.5, g_c = 1.0, g_eps = 0.0;
  int g_M = 0;
  std::uint64_t g_seed = 0;
  gen->add_option("--kind", g_kind, "linear | constant | fbm | modulated")->required();
  gen->add_option("--T", g_T, "horizon");
  gen->add_option("--M", g_M, "number of grid steps")->required();
  gen->add_option("--H", g_H, "Hurst index (fbm)");
  gen->add_option("--seed", g_seed, "RNG seed (fbm)");
  gen->add_option("--c", g_c, "value (constant)");
  gen->add_option("--eps", g_eps, "period scale (modulated)");
  gen->add_option("--profile", g_profile, "period profile file (modulated)");
  gen->add_option("--out", g_out, "output CSV")->required();
  add_threads(gen, common);
  gen->callback(
      [&] { action = [&] { return cmd_gen_path(g_kind, g_T, g_M, g_H, g_seed, g_c, g_eps, g_profile, g_out, out); }; });

  // irregularity
  auto* irr = app.add_subcommand("irregularity", "grid estimate of the irregularity norm");
  std::string i_path, i_out;
  double i_gamma = 0.5, i_amax = 256.0;
  std::optional<double> i_rho;
  std::size_t i_pairs = 20000;
  int i_levels = 5;
  irr->add_option("--path", i_path, "path CSV")->required();
  irr->add_option("--gamma", i_gamma, "time exponent");
  irr->add_option_function<double>("--rho", [&](double r) { i_rho = r; }, "decay exponent (omit to sweep)");
  irr->add_option("--amax", i_amax, "largest frequency");
  irr->add_option("--pairs", i_pairs, "target number of (s, t) pairs");
  irr->add_option("--levels", i_levels, "a_max doublings in the trend");
  irr->add_option("--out", i_out, "report JSON")->required();
  add_threads(irr, common);
  irr->callback([&] {
    action = [&] { return cmd_irregularity(i_path, i_gamma, i_rho, i_amax, i_pairs, i_levels, i_out, out); };
  });

  // solve
  auto* sol = app.add_subcommand("solve", "solve the Young equation");
  std::string s_config, s_path, s_init, s_out;
  sol->add_option("--config", s_config, "config JSON")->required();
  sol->add_option("--path", s_path, "path CSV (overrides the config path section)");
  sol->add_option("--init", s_init, "initial state CSV (overrides the config init section)");
  sol->add_option("--out", s_out, "output directory")->required();
  add_threads(sol, common);
  sol->callback([&] { action = [&] { return cmd_solve(s_config, s_path, s_init, s_out, out, err); }; });

  // converge
  auto* conv = app.add_subcommand("converge", "mesh refinement study");
  std::string c_config, c_path, c_init, c_out;
  int c_levels = 4;
  conv->add_option("--config", c_config, "config JSON")->required();
  conv->add_option("--path", c_path, "path CSV");
  conv->add_option("--init", c_init, "initial state CSV");
  conv->add_option("--levels", c_levels, "number of mesh halvings");
  conv->add_option("--out", c_out, "output CSV (mesh,error,order)")->required();
  add_threads(conv, common);
  conv->callback([&] { action = [&] { return cmd_converge(c_config, c_path, c_init, c_levels, c_out, out); }; });

  // verify-estimates
  auto* ver = app.add_subcommand("verify-estimates", "lattice checks of the multilinear estimates");
  EstimateArgs ea;
  std::string v_out, v_blocks;
  ver->add_option("--which", ea.which, "eq21 | eq26 | eq27 | counting")
      ->required()
      ->check(CLI::IsMember({"eq21", "eq26", "eq27", "counting"}));
  ver->add_option("--d", ea.d, "dimension");
  ver->add_option("--k", ea.k, "nonlinearity index");
  ver->add_option("--N", ea.N, "box radius (eq21; counting uses [-N, N])");
  ver->add_option("--rho", ea.rho, "weight exponent (eq21)");
  ver->add_option("--s", ea.s, "Sobolev index");
  ver->add_option("--sprime", ea.s_prime, "index of slot q (eq21)");
  ver->add_option("--q", ea.q, "distinguished slot (eq21)");
  ver->add_option("--trials", ea.trials, "random test families");
  ver->add_option("--seed", ea.seed, "RNG seed");
  ver->add_option("--blocks", v_blocks, "comma-separated dyadic scales N_0,...,N_{2k+1} (eq26, eq27)");
  ver->add_option_function<long>("--mu", [&](long m) { ea.mu = m; }, "resonance stratum (eq26; omit to sweep)");
  ver->add_option("--lo", ea.lo, "lower coordinate bound (counting, with --hi)");
  ver->add_option_function<int>("--hi", [&](int h) { ea.hi = h; }, "upper coordinate bound (counting)");
  ver->add_flag("--allow-11", ea.allow_11, "run eq21 at (d, k) = (1, 1) for exploration");
  ver->add_option("--out", v_out, "report JSON")->required();
  add_threads(ver, common);
  ver->callback([&] {
    action = [&] {
      std::stringstream ss(v_blocks);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          ea.blocks.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw ConfigError("--blocks: malformed entry '" + item + "'");
        }
      }
      return cmd_verify(ea, v_out, out);
    };
  });

  // xnorm
  auto* xn = app.add_subcommand("xnorm", "empirical C^gamma norm of the Young kernel");
  std::string x_path, x_out;
  int x_d = 1, x_k = 1, x_N = 4, x_trials = 4, x_steps = 16;
  double x_gamma = 0.5, x_s = 0.5;
  std::uint64_t x_seed = 0;
  bool x_override = false;
  xn->add_option("--path", x_path, "path CSV")->required();
  xn->add_option("--d", x_d, "dimension");
  xn->add_option("--k", x_k, "nonlinearity index");
  xn->add_option("--N", x_N, "truncation radius");
  xn->add_option("--gamma", x_gamma, "time exponent");
  xn->add_option("--s", x_s, "Sobolev index");
  xn->add_option("--trials", x_trials, "random input draws");
  xn->add_option("--seed", x_seed, "RNG seed");
  xn->add_option("--steps", x_steps, "uniform time grid steps");
  xn->add_flag("--override-caps", x_override, "allow N beyond the desk-scale caps");
  xn->add_option("--out", x_out, "report JSON")->required();
  add_threads(xn, common);
  xn->callback([&] {
    action = [&] {
      return cmd_xnorm(x_path, x_d, x_k, x_N, x_gamma, x_s, x_trials, x_seed, x_steps, x_override, x_out, out);
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    for (auto* sub : app.get_subcommands()) out << sub->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    set_thread_count(resolve_thread_count(common.threads));
    return action();
  } catch (const NumericalFailure& f) {
    err << failure_json(f).dump(2) << '\n';
    return kExitNumerical;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run_command(int argc, const char* const* argv) {
  return run_command(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace ynls
