#include "tginfer/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <stdexcept>

namespace tginfer {

void validate(const SamplerConfig& config) {
  if (config.n_iterations < 1) throw std::invalid_argument("sampler: n_iterations must be >= 1");
  if (config.burn_in < 0 || config.burn_in >= config.n_iterations)
    throw std::invalid_argument("sampler: need 0 <= burn_in < n_iterations");
  if (config.thin < 1) throw std::invalid_argument("sampler: thin must be >= 1");
  if (config.n_chains < 1) throw std::invalid_argument("sampler: n_chains must be >= 1");
  if (config.clamp_rates)
    for (const auto& r : *config.clamp_rates) validate(r);
}

StateProbs dyad_conditional(std::span<const DyadState> reports, std::span<const std::uint8_t> observed,
                            std::span<const ErrorRates> rates, const GraphPrior& prior) {
  if (reports.size() != observed.size() || reports.size() != rates.size())
    throw std::invalid_argument("dyad_conditional: per-informant spans disagree in length");

  const StateProbs p = graph_prior_probs(prior);
  const std::array<DyadState, 3> order = {DyadState::first_wins, DyadState::second_wins, DyadState::tied};
  std::array<double, 3> logmass = {std::log(p.first_wins), std::log(p.second_wins), std::log(p.tied)};

  for (size_t k = 0; k < reports.size(); ++k) {
    if (!observed[k]) continue;  // factor is exactly 1; never touch the report
    for (int s = 0; s < 3; ++s) logmass[s] += std::log(dyad_likelihood(reports[k], order[s], rates[k]));
  }

  const double top = std::max({logmass[0], logmass[1], logmass[2]});
  if (!(top > -std::numeric_limits<double>::infinity()))
    throw std::runtime_error("dyad_conditional: all three states have zero mass");

  std::array<double, 3> mass;
  double total = 0.0;
  for (int s = 0; s < 3; ++s) total += mass[s] = std::exp(logmass[s] - top);
  return {mass[0] / total, mass[1] / total, mass[2] / total};
}

DyadState draw_dyad_state(const StateProbs& cond, Rng& rng) {
  const double u = rng.uniform01();
  if (u < cond.first_wins) return DyadState::first_wins;
  if (u < cond.first_wins + cond.second_wins) return DyadState::second_wins;
  return DyadState::tied;
}

std::array<double, 3> decisive_posterior_concentrations(const SufficientCounts& counts,
                                                        const ErrorPriors& priors) {
  return {priors.reversal + static_cast<double>(counts.reversed),
          priors.false_tie + static_cast<double>(counts.false_tie),
          priors.correct_decisive + static_cast<double>(counts.correct_decisive)};
}

std::array<double, 2> tie_posterior_concentrations(const SufficientCounts& counts, const ErrorPriors& priors) {
  return {priors.false_decisive + static_cast<double>(counts.false_decisive),
          priors.correct_tie + static_cast<double>(counts.correct_tie)};
}

std::pair<double, double> update_decisive_errors(const SufficientCounts& counts, const ErrorPriors& priors,
                                                 Rng& rng) {
  const auto conc = decisive_posterior_concentrations(counts, priors);
  const std::vector<double> draw = rng.dirichlet(conc);
  return {draw[0], draw[1]};
}

double update_tie_errors(const SufficientCounts& counts, const ErrorPriors& priors, Rng& rng) {
  const auto conc = tie_posterior_concentrations(counts, priors);
  return rng.dirichlet(conc)[0];
}

ChainState init_chain(const GraphPrior& prior, std::span<const ErrorPriors> priors, int n_dyads, Rng& rng) {
  const StateProbs p = graph_prior_probs(prior);
  ChainState state;
  state.iteration = 1;
  state.states.resize(n_dyads);
  for (int d = 0; d < n_dyads; ++d) state.states[d] = draw_dyad_state(p, rng);
  state.rates.reserve(priors.size());
  for (const ErrorPriors& ep : priors) {
    validate(ep);
    static const SufficientCounts no_counts{};
    ErrorRates r;
    std::tie(r.reversal, r.false_tie) = update_decisive_errors(no_counts, ep, rng);
    r.false_decisive = update_tie_errors(no_counts, ep, rng);
    state.rates.push_back(r);
  }
  return state;
}

namespace {

// One systematic scan in place: states, then (reversal, false_tie) for every
// informant, then false_decisive for every informant. The dyad-major copies
// drive the conditionals; the informant-major originals drive the counts.
void scan(ChainState& state, const ReportMatrix& reports, const InclusionMask& observed,
          const ReportMatrix& by_dyad_reports, const InclusionMask& by_dyad_observed, const GraphPrior& prior,
          std::span<const ErrorPriors> priors, bool rates_clamped, Rng& rng) {
  const int n_dyads = by_dyad_reports.rows();
  for (int d = 0; d < n_dyads; ++d) {
    const StateProbs cond =
        dyad_conditional(by_dyad_reports.row(d), by_dyad_observed.row(d), state.rates, prior);
    state.states[d] = draw_dyad_state(cond, rng);
  }
  if (rates_clamped) return;

  const int m = reports.rows();
  const std::vector<SufficientCounts> counts = sufficient_counts(reports, observed, state.states);
  for (int k = 0; k < m; ++k)
    std::tie(state.rates[k].reversal, state.rates[k].false_tie) =
        update_decisive_errors(counts[k], priors[k], rng);
  for (int k = 0; k < m; ++k)
    state.rates[k].false_decisive = update_tie_errors(counts[k], priors[k], rng);
}

}  // namespace

std::vector<Chain> gibbs_run(const ReportMatrix& reports, const InclusionMask& observed, const GraphPrior& prior,
                             std::span<const ErrorPriors> priors, const SamplerConfig& config) {
  validate(config);
  validate(prior);
  const int m = reports.rows();
  const int n_dyads = reports.cols();
  if (observed.rows() != m || observed.cols() != n_dyads)
    throw std::invalid_argument("gibbs_run: report and mask dimensions disagree");
  if (config.clamp_rates) {
    if (static_cast<int>(config.clamp_rates->size()) != m)
      throw std::invalid_argument("gibbs_run: clamped rates need one entry per informant");
  } else if (static_cast<int>(priors.size()) != m) {
    throw std::invalid_argument("gibbs_run: one ErrorPriors entry per informant required");
  }

  // Dyad-major copies so each conditional reads contiguous columns.
  ReportMatrix by_dyad_reports(n_dyads, m, DyadState::tied);
  InclusionMask by_dyad_observed(n_dyads, m, 0);
  for (int k = 0; k < m; ++k)
    for (int d = 0; d < n_dyads; ++d) {
      by_dyad_reports(d, k) = reports(k, d);
      by_dyad_observed(d, k) = observed(k, d);
      // Normalize masked cells so hidden report values can never leak into
      // the scan, bit for bit.
      if (!observed(k, d)) by_dyad_reports(d, k) = DyadState::tied;
    }

  const std::int64_t retained =
      (config.n_iterations - config.burn_in + config.thin - 1) / config.thin;

  std::vector<Chain> chains(config.n_chains);
  for (int c = 0; c < config.n_chains; ++c) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(c)));
    Chain& chain = chains[c];
    chain.reserve(retained);

    ChainState state = init_chain(prior, priors, n_dyads, rng);
    if (config.clamp_rates) state.rates = *config.clamp_rates;

    for (std::int64_t t = 1; t <= config.n_iterations; ++t) {
      if (t > 1) {
        state.iteration = t;
        scan(state, reports, observed, by_dyad_reports, by_dyad_observed, prior, priors,
             config.clamp_rates.has_value(), rng);
      }
      if (t > config.burn_in && (t - config.burn_in - 1) % config.thin == 0) chain.push_back(state);
    }
  }
  return chains;
}

}  // namespace tginfer
