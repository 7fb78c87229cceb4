#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tginfer/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitToleranceFailure = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tginfer: infer a latent tournament graph (with ties) and per-informant\n"
      "error rates from noisy, partially observed dyad reports."};
  app.require_subcommand(1);

  std::string spec_file, config_file, reports_file, draws_file, roster_file, out_dir;
  std::string informants_file, clamp_rates_file;
  double tolerance = 0.02;
  int max_dyads = 10;

  CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset with a truth sidecar");
  simulate->add_option("--spec", spec_file, "Simulation spec (JSON)")->required();
  simulate->add_option("--out-dir", out_dir, "Output directory")->required();

  CLI::App* infer = app.add_subcommand("infer", "Run the Gibbs sampler and write posterior outputs");
  infer->add_option("--config", config_file, "Run configuration (JSON)")->required();
  infer->add_option("--reports", reports_file, "Long-format reports CSV")->required();
  infer->add_option("--out-dir", out_dir, "Output directory")->required();

  CLI::App* summarize = app.add_subcommand("summarize", "Summarize an existing draws file");
  summarize->add_option("--draws", draws_file, "Draws CSV")->required();
  summarize->add_option("--roster", roster_file, "Roster CSV")->required();
  summarize->add_option("--informants", informants_file, "Informant ids CSV (optional)");
  summarize->add_option("--out-dir", out_dir, "Output directory")->required();

  CLI::App* oracle = app.add_subcommand("oracle-check", "Compare sampler marginals against an exact oracle");
  oracle->add_option("--config", config_file, "Run configuration (JSON)")->required();
  oracle->add_option("--reports", reports_file, "Long-format reports CSV")->required();
  oracle->add_option("--clamp-rates", clamp_rates_file,
                     "Rates CSV; clamps the sampler and checks against the fixed-error oracle");
  oracle->add_option("--tolerance", tolerance, "Max allowed per-dyad marginal difference")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--max-dyads", max_dyads, "Enumeration cap for the collapsed oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (simulate->parsed()) {
      tginfer::io::run_simulate(spec_file, out_dir);
    } else if (infer->parsed()) {
      tginfer::io::run_infer(config_file, reports_file, out_dir);
    } else if (summarize->parsed()) {
      std::optional<std::filesystem::path> informants;
      if (!informants_file.empty()) informants = informants_file;
      tginfer::io::run_summarize(draws_file, roster_file, informants, out_dir);
    } else if (oracle->parsed()) {
      tginfer::io::OracleCheckOptions options;
      if (!clamp_rates_file.empty()) options.clamp_rates_file = clamp_rates_file;
      options.tolerance = tolerance;
      options.max_dyads = max_dyads;
      const auto result = tginfer::io::run_oracle_check(config_file, reports_file, options, std::cout);
      return result.passed ? kExitOk : kExitToleranceFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
