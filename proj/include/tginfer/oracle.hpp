#ifndef TGINFER_ORACLE_HPP
#define TGINFER_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tginfer/model.hpp"

namespace tginfer {

// Exact posterior over the latent graph on a small instance. joint_probs,
// when filled, covers all 3^D dyad-state vectors; entry index i decodes
// digit by digit in base 3, least-significant digit = dyad 0, with digits
// 0 -> first_wins, 1 -> second_wins, 2 -> tied.
struct ExactPosterior {
  std::vector<StateProbs> marginals;
  std::vector<double> joint_probs;
};

DyadStateVector joint_state_at(std::size_t index, int n_dyads);

/* Per-dyad posterior with error rates held fixed. Dyads are conditionally
 * independent given the rates, so each marginal is a direct evaluation of
 * the three-way conditional and the joint factorizes over dyads. Evaluated
 * in linear space, independently of the sampler's log-space path.
 */
ExactPosterior exact_fixed_error_posterior(const ReportMatrix& reports, const InclusionMask& observed,
                                           std::span<const ErrorRates> rates, const GraphPrior& prior,
                                           bool with_joint = false);

/* log Pr(reports | graph) with every informant's error rates integrated out
 * against their Dirichlet priors: a ratio of Dirichlet normalizers per
 * informant, driven by the sufficient counts.
 */
double collapsed_log_marginal_likelihood(const ReportMatrix& reports, const InclusionMask& observed,
                                         const DyadStateVector& truth, std::span<const ErrorPriors> priors);

// Full-posterior graph margin by exhaustive enumeration of all 3^D dyad
// configurations, rates integrated out. Refuses instances with more than
// max_dyads dyads rather than truncating.
ExactPosterior collapsed_exact_posterior(const ReportMatrix& reports, const InclusionMask& observed,
                                         const GraphPrior& prior, std::span<const ErrorPriors> priors,
                                         int max_dyads = 10);

// log of the Dirichlet normalizing function B(a) = prod Gamma(a_i) / Gamma(sum a_i).
double log_dirichlet_norm(std::span<const double> concentrations);

}  // namespace tginfer

#endif
