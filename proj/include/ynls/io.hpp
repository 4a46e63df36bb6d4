#pragma once

// File formats: CSV for every tabular artifact (doubles with 17 significant
// digits so values round-trip), JSON for configs and reports.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ynls/paths.hpp"
#include "ynls/phi.hpp"
#include "ynls/resonance.hpp"
#include "ynls/solver.hpp"
#include "ynls/spectral.hpp"

namespace ynls {

namespace fs = std::filesystem;
using json = nlohmann::json;

/// "%.17g".
std::string format_double(double x);

/// Header "t,w"; w is the physical path (normalized values plus offset).
void write_path_csv(const SamplePath& path, const fs::path& file);
SamplePath read_path_csv(const fs::path& file, PathKind kind = PathKind::external);

/// One number per line (a trailing CSV column is taken if lines have commas);
/// non-numeric lines such as headers are skipped.
std::vector<double> read_profile(const fs::path& file);

/// CSV "n_1,...,n_d,re,im" with zero rows omitted, plus a sidecar
/// `<stem>.json` holding {"d","N"}.
void write_state_csv(const SpectralState& state, const fs::path& file);
SpectralState read_state_csv(const fs::path& file);
fs::path state_sidecar(const fs::path& file);

/// CSV "t_index,mu,re,im".
void write_table_csv(const OscillatoryTable& table, const fs::path& file);

json to_json(const IrregularityReport& r);
json to_json(const EstimateReport& r);
json to_json(const CountingReport& r);

void write_json(const json& j, const fs::path& file);
json read_json(const fs::path& file);

}  // namespace ynls
