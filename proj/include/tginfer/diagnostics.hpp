#ifndef TGINFER_DIAGNOSTICS_HPP
#define TGINFER_DIAGNOSTICS_HPP

#include <cstdint>
#include <vector>

#include "tginfer/sampler.hpp"

namespace tginfer {

struct ScalarSummary {
  double mean = 0;
  double q025 = 0;
  double median = 0;
  double q975 = 0;
  double rhat = 1;
};

struct InformantSummary {
  ScalarSummary reversal;
  ScalarSummary false_tie;
  ScalarSummary false_decisive;
};

// Pooled posterior summaries over all retained states of all chains.
// map_graph is the per-dyad marginal argmax with the fixed tie-break order
// (first_wins, second_wins, tied); it is the dyad-wise mode, which need not
// coincide with the joint posterior mode.
struct PosteriorSummary {
  std::vector<StateProbs> dyad_marginals;
  DyadStateVector map_graph;
  std::vector<InformantSummary> informants;
  std::int64_t n_retained = 0;
};

/* Empirical marginals, MAP graph, and rate summaries from retained draws.
 * Quantiles are the linearly interpolated empirical quantiles. R-hat is the
 * classical split-chain potential scale reduction factor per rate scalar,
 * reported as 1 when all draws of a scalar coincide and NaN when the halves
 * are too short (fewer than 2 draws each).
 */
PosteriorSummary summarize(const std::vector<Chain>& chains);

// Per-dyad cross-chain agreement: 1 minus the largest total-variation
// distance between any single chain's marginal triple and the pooled triple.
// 1 means all chains see the same marginal; 0 means some chain is locked on
// a different state entirely.
std::vector<double> dyad_agreement(const std::vector<Chain>& chains);

// Split-chain R-hat on a generic per-chain scalar sequence; exposed for tests.
double split_rhat(const std::vector<std::vector<double>>& chains);

}  // namespace tginfer

#endif
