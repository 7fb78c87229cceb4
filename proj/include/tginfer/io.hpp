#ifndef TGINFER_IO_HPP
#define TGINFER_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tginfer/diagnostics.hpp"
#include "tginfer/model.hpp"
#include "tginfer/sampler.hpp"
#include "tginfer/simulate.hpp"

namespace tginfer::io {

// All files are UTF-8 CSV. Output files open with a "# format: <name>/<version>"
// line; the reports file is plain CSV whose first line is its header. Writes
// go to a temporary file first and are renamed into place, so a failed run
// never leaves a partial file behind.

// ----- roster -----
void save_roster(const std::filesystem::path& path, const Roster& roster);
Roster load_roster(const std::filesystem::path& path);

// ----- informant ids -----
void save_informants(const std::filesystem::path& path, const std::vector<std::string>& ids);
std::vector<std::string> load_informants(const std::filesystem::path& path);

// ----- long-format reports: one answered (or refused) question per row -----
struct ReportsData {
  std::vector<std::string> informant_ids;  // order of first appearance
  ReportMatrix reports;
  InclusionMask observed;
};

// Outcomes: "ego" (the ego column wins), "alter", "tie", "missing". Dyads a
// given informant never mentions load as unobserved. Duplicate
// (informant, dyad) rows, unknown labels and self-dyads are rejected with
// the offending record named.
ReportsData load_reports(const std::filesystem::path& path, const Roster& roster);
void save_reports(const std::filesystem::path& path, const Roster& roster,
                  const std::vector<std::string>& informant_ids, const ReportMatrix& reports,
                  const InclusionMask& observed);

// ----- graph files (truth sidecar, MAP output; identical format, diffable) -----
void save_graph(const std::filesystem::path& path, const Roster& roster, const DyadStateVector& states);
DyadStateVector load_graph(const std::filesystem::path& path, const Roster& roster);

// ----- per-informant error rates (truth sidecar, clamp input) -----
struct RatesData {
  std::vector<std::string> informant_ids;
  std::vector<ErrorRates> rates;
};
void save_rates(const std::filesystem::path& path, const std::vector<std::string>& informant_ids,
                std::span<const ErrorRates> rates);
RatesData load_rates(const std::filesystem::path& path);

// ----- retained draws: chain, iteration, D states, then 3 rates per informant -----
void save_draws(const std::filesystem::path& path, const std::vector<Chain>& chains);
std::vector<Chain> load_draws(const std::filesystem::path& path);

// ----- posterior summary tables -----
void save_marginals(const std::filesystem::path& path, const Roster& roster,
                    const std::vector<StateProbs>& marginals);
void save_rate_summaries(const std::filesystem::path& path, const std::vector<std::string>& informant_ids,
                         const std::vector<InformantSummary>& informants);
void save_rhat(const std::filesystem::path& path, const std::vector<std::string>& informant_ids,
               const std::vector<InformantSummary>& informants);

// ----- run configuration (JSON; unknown keys are errors) -----
struct RunConfig {
  std::vector<std::string> roster_labels;
  GraphPrior prior;
  // Exactly one of the two is set: shared (ratio, strength) or explicit
  // per-informant concentrations.
  std::optional<std::pair<double, double>> rate_prior;
  std::optional<std::vector<ErrorPriors>> informant_priors;
  SamplerConfig sampler;

  Roster roster() const { return Roster(roster_labels); }
  std::vector<ErrorPriors> priors_for(int m_informants) const;
};
RunConfig load_run_config(const std::filesystem::path& path);

// ----- simulation spec (JSON) -----
struct SimulationFile {
  SimulationSpec spec;
  std::vector<std::string> roster_labels;    // "v1".."vN" unless given
  std::vector<std::string> informant_ids;    // "k1".."kM"
};
SimulationFile load_simulation_file(const std::filesystem::path& path);

// ----- orchestration used by the CLI (and end-to-end tests) -----

// reports.csv, truth_graph.csv, truth_rates.csv, roster.csv
void run_simulate(const std::filesystem::path& spec_file, const std::filesystem::path& out_dir);

// draws.csv, marginals.csv, map.csv, rates.csv, rhat.csv, roster.csv, informants.csv
void run_infer(const std::filesystem::path& config_file, const std::filesystem::path& reports_file,
               const std::filesystem::path& out_dir);

// marginals.csv, map.csv, rates.csv, rhat.csv from an existing draws file
void run_summarize(const std::filesystem::path& draws_file, const std::filesystem::path& roster_file,
                   const std::optional<std::filesystem::path>& informants_file,
                   const std::filesystem::path& out_dir);

struct OracleCheckOptions {
  std::optional<std::filesystem::path> clamp_rates_file;  // set -> fixed-error mode
  double tolerance = 0.02;
  int max_dyads = 10;
};

struct OracleCheckResult {
  std::vector<double> per_dyad_diff;  // max abs marginal difference per dyad
  double max_diff = 0;
  double tolerance = 0;
  bool fixed_mode = false;
  bool passed = false;
};

// Runs the sampler and the matching exact oracle on a small instance and
// reports the largest per-dyad marginal discrepancy.
OracleCheckResult run_oracle_check(const std::filesystem::path& config_file,
                                   const std::filesystem::path& reports_file, const OracleCheckOptions& options,
                                   std::ostream& out);

}  // namespace tginfer::io

#endif
