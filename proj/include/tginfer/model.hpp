#ifndef TGINFER_MODEL_HPP
#define TGINFER_MODEL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tginfer/graph.hpp"

namespace tginfer {

// One informant's error rates.
//   reversal       : probability of swapping winner and loser on a truly
//                    decisive dyad
//   false_tie      : probability of reporting a tie on a truly decisive dyad
//   false_decisive : total probability of reporting some decisive outcome on
//                    a truly tied dyad (either sign; the generative split
//                    between signs lives in the simulator)
// (reversal, false_tie, 1 - reversal - false_tie) share a simplex;
// false_decisive lives in [0, 1] on its own.
struct ErrorRates {
  double reversal = 0;
  double false_tie = 0;
  double false_decisive = 0;
};

void validate(const ErrorRates& rates);

// Dirichlet concentrations for one informant's error rates: a three-part
// prior over (reversal, false_tie, correct) on decisive-truth dyads and a
// two-part (Beta) prior over (false_decisive, correct) on tied-truth dyads.
struct ErrorPriors {
  double reversal = 1;
  double false_tie = 1;
  double correct_decisive = 1;
  double false_decisive = 1;
  double correct_tie = 1;
};

void validate(const ErrorPriors& priors);

// Prior over a single dyad's state: tied with probability tie_prob, each
// decisive direction with probability (1 - tie_prob)/2. Constant across
// dyads; a per-dyad vector would slot in here if ever needed.
struct GraphPrior {
  double tie_prob = 0.5;
};

void validate(const GraphPrior& prior);

// A probability (or frequency) triple over the three dyad states.
struct StateProbs {
  double first_wins = 0;
  double second_wins = 0;
  double tied = 0;

  double at(DyadState s) const {
    switch (s) {
      case DyadState::first_wins: return first_wins;
      case DyadState::second_wins: return second_wins;
      default: return tied;
    }
  }
  double sum() const { return first_wins + second_wins + tied; }
};

StateProbs graph_prior_probs(const GraphPrior& prior);

/* Likelihood of a single observed report given the dyad's true state.
 *
 * Decisive truth: correct -> 1 - reversal - false_tie; reversed -> reversal;
 * tie -> false_tie. Tied truth: either decisive sign -> false_decisive;
 * tie -> 1 - false_decisive. Note the tied-truth branch assigns the full
 * false_decisive mass to each sign, so it normalizes over |report|, not over
 * signed reports.
 */
double dyad_likelihood(DyadState report, DyadState truth, const ErrorRates& rates);

// Sum of log dyad_likelihood over all observed (informant, dyad) cells;
// masked cells contribute nothing.
double joint_log_likelihood(const ReportMatrix& reports, const InclusionMask& observed,
                            const DyadStateVector& truth, std::span<const ErrorRates> rates);

// Shared-concentration priors for all m informants: decisive-truth
// Dir(ratio*strength/2, ratio*strength/2, strength) and tied-truth
// Dir(ratio*strength, strength). ratio must lie in (0, 1) so that the error
// concentrations stay positive while correct reports dominate a priori.
std::vector<ErrorPriors> build_error_priors(double ratio, double strength, int m_informants);

// Per-informant tallies of report outcomes over observed dyads. The first
// three partition the observed decisive-truth cells, the last two the
// observed tied-truth cells.
struct SufficientCounts {
  std::int64_t correct_decisive = 0;
  std::int64_t reversed = 0;
  std::int64_t false_tie = 0;
  std::int64_t false_decisive = 0;
  std::int64_t correct_tie = 0;
};

std::vector<SufficientCounts> sufficient_counts(const ReportMatrix& reports, const InclusionMask& observed,
                                                const DyadStateVector& truth);

}  // namespace tginfer

#endif
