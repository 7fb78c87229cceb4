#include "tginfer/simulate.hpp"

#include <stdexcept>
#include <tuple>

#include "tginfer/random.hpp"
#include "tginfer/sampler.hpp"

namespace tginfer {

void validate(const SimulationSpec& spec) {
  if (spec.n_vertices < 2) throw std::invalid_argument("simulation: need at least 2 vertices");
  if (spec.n_informants < 1) throw std::invalid_argument("simulation: need at least 1 informant");
  validate(GraphPrior{spec.tie_prob});
  if (!(spec.missing_rate >= 0) || !(spec.missing_rate < 1))
    throw std::invalid_argument("simulation: missing_rate must lie in [0, 1)");
  if (spec.rates.has_value() == spec.rate_prior.has_value())
    throw std::invalid_argument("simulation: set exactly one of explicit rates or a rate prior");
  if (spec.rates) {
    if (static_cast<int>(spec.rates->size()) != spec.n_informants)
      throw std::invalid_argument("simulation: explicit rates need one entry per informant");
    for (const ErrorRates& r : *spec.rates) validate(r);
  }
}

SimulatedDataset simulate(const SimulationSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const int n_dyads = spec.n_vertices * (spec.n_vertices - 1) / 2;
  const int m = spec.n_informants;

  SimulatedDataset data;

  const StateProbs prior = graph_prior_probs(GraphPrior{spec.tie_prob});
  data.truth.resize(n_dyads);
  for (int d = 0; d < n_dyads; ++d) data.truth[d] = draw_dyad_state(prior, rng);

  if (spec.rates) {
    data.rates = *spec.rates;
  } else {
    const std::vector<ErrorPriors> priors =
        build_error_priors(spec.rate_prior->first, spec.rate_prior->second, m);
    data.rates.resize(m);
    static const SufficientCounts no_counts{};
    for (int k = 0; k < m; ++k) {
      std::tie(data.rates[k].reversal, data.rates[k].false_tie) =
          update_decisive_errors(no_counts, priors[k], rng);
      data.rates[k].false_decisive = update_tie_errors(no_counts, priors[k], rng);
    }
  }

  data.reports = ReportMatrix(m, n_dyads, DyadState::tied);
  for (int k = 0; k < m; ++k) {
    const ErrorRates& r = data.rates[k];
    for (int d = 0; d < n_dyads; ++d) {
      const DyadState xi = data.truth[d];
      const double u = rng.uniform01();
      DyadState report;
      if (decisive(xi)) {
        if (u < 1.0 - r.reversal - r.false_tie) report = xi;
        else if (u < 1.0 - r.false_tie) report = reversed(xi);
        else report = DyadState::tied;
      } else {
        // Uniform sign split: the likelihood never models the direction of a
        // falsely decisive report, so each sign carries half the mass.
        if (u < 1.0 - r.false_decisive) report = DyadState::tied;
        else if (u < 1.0 - r.false_decisive / 2.0) report = DyadState::first_wins;
        else report = DyadState::second_wins;
      }
      data.reports(k, d) = report;
    }
  }

  data.mask = InclusionMask(m, n_dyads, 1);
  if (spec.missing_rate > 0)
    for (int k = 0; k < m; ++k)
      for (int d = 0; d < n_dyads; ++d)
        data.mask(k, d) = rng.uniform01() < spec.missing_rate ? 0 : 1;

  return data;
}

}  // namespace tginfer
