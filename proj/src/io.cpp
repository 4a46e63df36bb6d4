#include "ynls/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ynls {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

std::ifstream open_in(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  return in;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

bool parse_double(const std::string& s, double& v) {
  try {
    std::size_t used = 0;
    v = std::stod(s, &used);
    for (std::size_t i = used; i < s.size(); ++i)
      if (!std::isspace(static_cast<unsigned char>(s[i]))) return false;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

double to_double(const std::string& s, const fs::path& file) {
  double v = 0.0;
  if (!parse_double(s, v)) throw std::runtime_error("malformed number '" + s + "' in " + file.string());
  return v;
}

}  // namespace

void write_path_csv(const SamplePath& path, const fs::path& file) {
  auto out = open_out(file);
  out << "t,w\n";
  for (std::size_t j = 0; j < path.t.size(); ++j)
    out << format_double(path.t[j]) << ',' << format_double(path.w[j] + path.offset) << '\n';
}

SamplePath read_path_csv(const fs::path& file, PathKind kind) {
  auto in = open_in(file);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,w", 0) != 0)
    throw std::runtime_error(file.string() + ": expected header 't,w'");
  std::vector<double> t, w;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto parts = split(line, ',');
    if (parts.size() != 2) throw std::runtime_error(file.string() + ": expected two columns");
    t.push_back(to_double(parts[0], file));
    w.push_back(to_double(parts[1], file));
  }
  return path_from_samples(std::move(t), std::move(w), kind);
}

std::vector<double> read_profile(const fs::path& file) {
  auto in = open_in(file);
  std::vector<double> m;
  std::string line;
  while (std::getline(in, line)) {
    const auto parts = split(line, ',');
    if (parts.empty()) continue;
    double v = 0.0;
    if (parse_double(parts.back(), v)) m.push_back(v);
  }
  if (m.empty()) throw std::runtime_error(file.string() + ": no profile values");
  return m;
}

fs::path state_sidecar(const fs::path& file) {
  fs::path p = file;
  return p.replace_extension(".json");
}

void write_state_csv(const SpectralState& state, const fs::path& file) {
  auto out = open_out(file);
  const ModeBox& box = state.box();
  for (int a = 0; a < box.d; ++a) out << "n_" << a + 1 << ',';
  out << "re,im\n";
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] == cplx{}) continue;
    for (int v : box.mode(i)) out << v << ',';
    out << format_double(state[i].real()) << ',' << format_double(state[i].imag()) << '\n';
  }
  write_json({{"d", box.d}, {"N", box.N}}, state_sidecar(file));
}

SpectralState read_state_csv(const fs::path& file) {
  const json meta = read_json(state_sidecar(file));
  SpectralState state(meta.at("d").get<int>(), meta.at("N").get<int>());
  const int d = state.dim();
  auto in = open_in(file);
  std::string line;
  std::getline(in, line);
  ModeIndex n(static_cast<std::size_t>(d));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto parts = split(line, ',');
    if (static_cast<int>(parts.size()) != d + 2) throw std::runtime_error(file.string() + ": wrong column count");
    for (int a = 0; a < d; ++a) n[a] = std::stoi(parts[a]);
    if (!state.box().contains(n)) throw std::runtime_error(file.string() + ": mode outside [-N, N]^d");
    state.at(n) = cplx(to_double(parts[d], file), to_double(parts[d + 1], file));
  }
  return state;
}

void write_table_csv(const OscillatoryTable& table, const fs::path& file) {
  auto out = open_out(file);
  out << "t_index,mu,re,im\n";
  for (std::size_t i = 0; i < table.rows(); ++i)
    for (int mu = -table.mu_max; mu <= table.mu_max; ++mu) {
      const cplx v = table.at(i, mu);
      out << i << ',' << mu << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
}

json to_json(const IrregularityReport& r) {
  return {{"rho", r.rho},           {"gamma", r.gamma},           {"norm_estimate", r.norm_estimate},
          {"a_max", r.a_max},       {"pair_count", r.pair_count}, {"trend", r.trend}};
}

json to_json(const EstimateReport& r) {
  json j = {{"estimate_id", to_string(r.id)},
            {"d", r.d},
            {"k", r.k},
            {"s", r.s},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"ratio", r.ratio},
            {"trials", r.trials},
            {"max_ratio_over_trials", r.max_ratio_over_trials}};
  if (r.id == EstimateId::eq21) {
    j["s_prime"] = r.s_prime;
    j["rho"] = r.rho;
    j["q"] = r.q;
    j["N"] = r.N;
  } else {
    j["blocks"] = r.blocks;
    j["mu"] = r.mu ? json(*r.mu) : json(nullptr);
  }
  return j;
}

json to_json(const CountingReport& r) {
  json per_mu = json::object();
  for (const auto& [mu, c] : r.counts_per_mu) per_mu[std::to_string(mu)] = c;
  return {{"total_tuples", r.total_tuples}, {"zero_sum_tuples", r.zero_sum_tuples},
          {"memberships", r.memberships},   {"violations", r.violations},
          {"counts_per_mu", per_mu}};
}

void write_json(const json& j, const fs::path& file) {
  auto out = open_out(file);
  out << j.dump(2) << '\n';
}

json read_json(const fs::path& file) {
  auto in = open_in(file);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(file.string() + ": " + e.what());
  }
}

}  // namespace ynls
