#ifndef TGINFER_SAMPLER_HPP
#define TGINFER_SAMPLER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tginfer/model.hpp"
#include "tginfer/random.hpp"

namespace tginfer {

// One Gibbs iterate: the latent graph plus every informant's error rates.
struct ChainState {
  DyadStateVector states;
  std::vector<ErrorRates> rates;
  std::int64_t iteration = 0;
};

using Chain = std::vector<ChainState>;

struct SamplerConfig {
  std::int64_t n_iterations = 0;
  std::int64_t burn_in = 0;
  std::int64_t thin = 1;
  int n_chains = 1;
  std::uint64_t seed = 0;
  // Diagnostic mode: hold error rates fixed at these values and update only
  // the dyad states, which makes every retained draw an independent sample
  // from the per-dyad conditional.
  std::optional<std::vector<ErrorRates>> clamp_rates;
};

void validate(const SamplerConfig& config);

/* Full conditional of one dyad's state given the current error rates:
 *
 *   p(s) ~ prior(s) * prod_k [ (1 - z_k) + z_k * lik(x_k | s, rates_k) ]
 *
 * Accumulated in log space and normalized; masked informants drop out
 * exactly. reports and observed hold the per-informant column for this dyad.
 */
StateProbs dyad_conditional(std::span<const DyadState> reports, std::span<const std::uint8_t> observed,
                            std::span<const ErrorRates> rates, const GraphPrior& prior);

// Inverse-CDF draw over (first_wins, second_wins, tied) in that fixed order.
DyadState draw_dyad_state(const StateProbs& cond, Rng& rng);

// Conjugate posterior concentrations: prior plus count, no offset.
std::array<double, 3> decisive_posterior_concentrations(const SufficientCounts& counts, const ErrorPriors& priors);
std::array<double, 2> tie_posterior_concentrations(const SufficientCounts& counts, const ErrorPriors& priors);

// Draws (reversal, false_tie) from Dirichlet(prior + counts) over
// (reversal, false_tie, correct) outcomes on decisive-truth dyads.
std::pair<double, double> update_decisive_errors(const SufficientCounts& counts, const ErrorPriors& priors,
                                                 Rng& rng);

// Draws false_decisive from Beta(prior + counts) over tied-truth dyads.
double update_tie_errors(const SufficientCounts& counts, const ErrorPriors& priors, Rng& rng);

// First iterate: dyad states i.i.d. from the graph prior, rates from their
// Dirichlet priors.
ChainState init_chain(const GraphPrior& prior, std::span<const ErrorPriors> priors, int n_dyads, Rng& rng);

/* Systematic-scan Gibbs sampler.
 *
 * Each scan redraws every dyad state from its full conditional given the
 * current rates (canonical dyad order), then recomputes sufficient counts
 * and redraws every informant's (reversal, false_tie) pair and then every
 * false_decisive given the new graph. Iteration 1 is the prior draw;
 * iterations after burn_in are retained at the thinning stride. Chains run
 * on independent streams derived from config.seed and are bit-reproducible.
 */
std::vector<Chain> gibbs_run(const ReportMatrix& reports, const InclusionMask& observed, const GraphPrior& prior,
                             std::span<const ErrorPriors> priors, const SamplerConfig& config);

}  // namespace tginfer

#endif
