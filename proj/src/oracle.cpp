#include "tginfer/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tginfer {

namespace {

constexpr std::array<DyadState, 3> kStateOrder = {DyadState::first_wins, DyadState::second_wins,
                                                  DyadState::tied};

double logsumexp(std::span<const double> logs) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : logs) top = std::max(top, v);
  if (!(top > -std::numeric_limits<double>::infinity())) return top;
  double total = 0.0;
  for (double v : logs) total += std::exp(v - top);
  return top + std::log(total);
}

}  // namespace

DyadStateVector joint_state_at(std::size_t index, int n_dyads) {
  DyadStateVector states(n_dyads);
  for (int d = 0; d < n_dyads; ++d) {
    states[d] = kStateOrder[index % 3];
    index /= 3;
  }
  return states;
}

double log_dirichlet_norm(std::span<const double> concentrations) {
  double total = 0.0;
  double log_b = 0.0;
  for (double a : concentrations) {
    if (!(a > 0)) throw std::invalid_argument("log_dirichlet_norm: concentrations must be positive");
    log_b += std::lgamma(a);
    total += a;
  }
  return log_b - std::lgamma(total);
}

ExactPosterior exact_fixed_error_posterior(const ReportMatrix& reports, const InclusionMask& observed,
                                           std::span<const ErrorRates> rates, const GraphPrior& prior,
                                           bool with_joint) {
  const int m = reports.rows();
  const int n_dyads = reports.cols();
  if (observed.rows() != m || observed.cols() != n_dyads)
    throw std::invalid_argument("exact_fixed_error_posterior: report and mask dimensions disagree");
  if (static_cast<int>(rates.size()) != m)
    throw std::invalid_argument("exact_fixed_error_posterior: one ErrorRates entry per informant required");
  for (const ErrorRates& r : rates) validate(r);

  const StateProbs p = graph_prior_probs(prior);
  ExactPosterior out;
  out.marginals.resize(n_dyads);
  for (int d = 0; d < n_dyads; ++d) {
    std::array<double, 3> mass = {p.first_wins, p.second_wins, p.tied};
    for (int k = 0; k < m; ++k) {
      if (!observed(k, d)) continue;
      for (int s = 0; s < 3; ++s) mass[s] *= dyad_likelihood(reports(k, d), kStateOrder[s], rates[k]);
    }
    const double total = mass[0] + mass[1] + mass[2];
    if (!(total > 0))
      throw std::runtime_error("exact_fixed_error_posterior: dyad " + std::to_string(d) + " has zero mass");
    out.marginals[d] = {mass[0] / total, mass[1] / total, mass[2] / total};
  }

  if (with_joint) {
    std::size_t n_configs = 1;
    for (int d = 0; d < n_dyads; ++d) n_configs *= 3;
    out.joint_probs.resize(n_configs);
    for (std::size_t i = 0; i < n_configs; ++i) {
      double prob = 1.0;
      std::size_t rest = i;
      for (int d = 0; d < n_dyads; ++d) {
        prob *= out.marginals[d].at(kStateOrder[rest % 3]);
        rest /= 3;
      }
      out.joint_probs[i] = prob;
    }
  }
  return out;
}

double collapsed_log_marginal_likelihood(const ReportMatrix& reports, const InclusionMask& observed,
                                         const DyadStateVector& truth, std::span<const ErrorPriors> priors) {
  const int m = reports.rows();
  if (static_cast<int>(priors.size()) != m)
    throw std::invalid_argument("collapsed_log_marginal_likelihood: one ErrorPriors entry per informant required");
  for (const ErrorPriors& p : priors) validate(p);

  const std::vector<SufficientCounts> counts = sufficient_counts(reports, observed, truth);
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    const ErrorPriors& p = priors[k];
    const SufficientCounts& c = counts[k];
    const std::array<double, 3> d_prior = {p.reversal, p.false_tie, p.correct_decisive};
    const std::array<double, 3> d_post = {p.reversal + static_cast<double>(c.reversed),
                                          p.false_tie + static_cast<double>(c.false_tie),
                                          p.correct_decisive + static_cast<double>(c.correct_decisive)};
    const std::array<double, 2> t_prior = {p.false_decisive, p.correct_tie};
    const std::array<double, 2> t_post = {p.false_decisive + static_cast<double>(c.false_decisive),
                                          p.correct_tie + static_cast<double>(c.correct_tie)};
    total += log_dirichlet_norm(d_post) - log_dirichlet_norm(d_prior);
    total += log_dirichlet_norm(t_post) - log_dirichlet_norm(t_prior);
  }
  return total;
}

ExactPosterior collapsed_exact_posterior(const ReportMatrix& reports, const InclusionMask& observed,
                                         const GraphPrior& prior, std::span<const ErrorPriors> priors,
                                         int max_dyads) {
  const int n_dyads = reports.cols();
  if (n_dyads > max_dyads)
    throw std::invalid_argument("collapsed_exact_posterior: " + std::to_string(n_dyads) +
                                " dyads exceed the enumeration cap of " + std::to_string(max_dyads));

  const StateProbs p = graph_prior_probs(prior);
  const std::array<double, 3> log_prior = {std::log(p.first_wins), std::log(p.second_wins), std::log(p.tied)};

  std::size_t n_configs = 1;
  for (int d = 0; d < n_dyads; ++d) n_configs *= 3;

  std::vector<double> log_weight(n_configs);
  for (std::size_t i = 0; i < n_configs; ++i) {
    const DyadStateVector truth = joint_state_at(i, n_dyads);
    double lw = collapsed_log_marginal_likelihood(reports, observed, truth, priors);
    std::size_t rest = i;
    for (int d = 0; d < n_dyads; ++d) {
      lw += log_prior[rest % 3];
      rest /= 3;
    }
    log_weight[i] = lw;
  }

  const double log_norm = logsumexp(log_weight);
  ExactPosterior out;
  out.marginals.assign(n_dyads, StateProbs{});
  out.joint_probs.resize(n_configs);
  for (std::size_t i = 0; i < n_configs; ++i) {
    const double prob = std::exp(log_weight[i] - log_norm);
    out.joint_probs[i] = prob;
    std::size_t rest = i;
    for (int d = 0; d < n_dyads; ++d) {
      switch (kStateOrder[rest % 3]) {
        case DyadState::first_wins: out.marginals[d].first_wins += prob; break;
        case DyadState::second_wins: out.marginals[d].second_wins += prob; break;
        case DyadState::tied: out.marginals[d].tied += prob; break;
      }
      rest /= 3;
    }
  }
  return out;
}

}  // namespace tginfer
