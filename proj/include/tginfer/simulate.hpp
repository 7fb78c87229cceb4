#ifndef TGINFER_SIMULATE_HPP
#define TGINFER_SIMULATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tginfer/model.hpp"

namespace tginfer {

// Recipe for one synthetic dataset. Exactly one of `rates` (explicit, one
// entry per informant) or `rate_prior` (draw each informant's rates from the
// shared prior) must be set.
struct SimulationSpec {
  int n_vertices = 0;
  int n_informants = 0;
  double tie_prob = 0.5;
  std::optional<std::vector<ErrorRates>> rates;
  std::optional<std::pair<double, double>> rate_prior;  // (ratio, strength)
  double missing_rate = 0;
  std::uint64_t seed = 0;
};

void validate(const SimulationSpec& spec);

// Ground truth plus the noisy, partially observed reports generated from it.
// Reports keep their generated values even where the mask hides them;
// inference must be invariant to those hidden cells.
struct SimulatedDataset {
  DyadStateVector truth;
  std::vector<ErrorRates> rates;
  ReportMatrix reports;
  InclusionMask mask;
};

/* Draws truth per dyad from the graph prior, rates per informant (explicit
 * or from the prior), then each report: a decisive-truth dyad is reported
 * correctly / reversed / tied with probabilities (1 - reversal - false_tie,
 * reversal, false_tie); a tied-truth dyad is reported tied with probability
 * 1 - false_decisive, otherwise decisive with the sign chosen uniformly.
 * Cells are then masked unobserved i.i.d. at missing_rate.
 */
SimulatedDataset simulate(const SimulationSpec& spec);

}  // namespace tginfer

#endif
