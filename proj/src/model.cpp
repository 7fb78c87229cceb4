#include "tginfer/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tginfer {

void validate(const ErrorRates& rates) {
  if (!(rates.reversal >= 0) || !(rates.false_tie >= 0) || !(rates.reversal + rates.false_tie <= 1))
    throw std::invalid_argument("error rates: need reversal >= 0, false_tie >= 0, reversal + false_tie <= 1");
  if (!(rates.false_decisive >= 0) || !(rates.false_decisive <= 1))
    throw std::invalid_argument("error rates: false_decisive must lie in [0, 1]");
}

void validate(const ErrorPriors& priors) {
  if (!(priors.reversal > 0) || !(priors.false_tie > 0) || !(priors.correct_decisive > 0) ||
      !(priors.false_decisive > 0) || !(priors.correct_tie > 0))
    throw std::invalid_argument("error priors: all concentrations must be strictly positive");
}

void validate(const GraphPrior& prior) {
  if (!(prior.tie_prob > 0) || !(prior.tie_prob < 1))
    throw std::invalid_argument("graph prior: tie probability must lie strictly inside (0, 1)");
}

StateProbs graph_prior_probs(const GraphPrior& prior) {
  validate(prior);
  const double decisive = (1.0 - prior.tie_prob) / 2.0;
  return {decisive, decisive, prior.tie_prob};
}

double dyad_likelihood(DyadState report, DyadState truth, const ErrorRates& rates) {
  if (decisive(truth)) {
    if (report == truth) return 1.0 - rates.reversal - rates.false_tie;
    if (report == reversed(truth)) return rates.reversal;
    return rates.false_tie;
  }
  return decisive(report) ? rates.false_decisive : 1.0 - rates.false_decisive;
}

double joint_log_likelihood(const ReportMatrix& reports, const InclusionMask& observed,
                            const DyadStateVector& truth, std::span<const ErrorRates> rates) {
  const int m = reports.rows();
  const int d = reports.cols();
  if (observed.rows() != m || observed.cols() != d)
    throw std::invalid_argument("joint_log_likelihood: report and mask dimensions disagree");
  if (static_cast<int>(truth.size()) != d)
    throw std::invalid_argument("joint_log_likelihood: dyad state vector length disagrees with reports");
  if (static_cast<int>(rates.size()) != m)
    throw std::invalid_argument("joint_log_likelihood: one ErrorRates entry per informant required");

  double total = 0.0;
  for (int k = 0; k < m; ++k)
    for (int dy = 0; dy < d; ++dy)
      if (observed(k, dy)) total += std::log(dyad_likelihood(reports(k, dy), truth[dy], rates[k]));
  return total;
}

std::vector<ErrorPriors> build_error_priors(double ratio, double strength, int m_informants) {
  if (!(ratio > 0))
    throw std::invalid_argument("error prior ratio must be positive; zero gives a degenerate Dirichlet");
  if (!(ratio < 1)) throw std::invalid_argument("error prior ratio must be below 1");
  if (!(strength > 0)) throw std::invalid_argument("error prior strength must be positive");
  if (m_informants < 1) throw std::invalid_argument("need at least one informant");
  ErrorPriors p;
  p.reversal = ratio * strength / 2.0;
  p.false_tie = ratio * strength / 2.0;
  p.correct_decisive = strength;
  p.false_decisive = ratio * strength;
  p.correct_tie = strength;
  return std::vector<ErrorPriors>(m_informants, p);
}

std::vector<SufficientCounts> sufficient_counts(const ReportMatrix& reports, const InclusionMask& observed,
                                                const DyadStateVector& truth) {
  const int m = reports.rows();
  const int d = reports.cols();
  if (observed.rows() != m || observed.cols() != d)
    throw std::invalid_argument("sufficient_counts: report and mask dimensions disagree");
  if (static_cast<int>(truth.size()) != d)
    throw std::invalid_argument("sufficient_counts: dyad state vector length disagrees with reports");

  std::vector<SufficientCounts> counts(m);
  for (int k = 0; k < m; ++k) {
    SufficientCounts& c = counts[k];
    for (int dy = 0; dy < d; ++dy) {
      if (!observed(k, dy)) continue;
      const DyadState x = reports(k, dy);
      const DyadState xi = truth[dy];
      if (decisive(xi)) {
        if (x == xi) ++c.correct_decisive;
        else if (x == reversed(xi)) ++c.reversed;
        else ++c.false_tie;
      } else {
        if (decisive(x)) ++c.false_decisive;
        else ++c.correct_tie;
      }
    }
  }
  return counts;
}

}  // namespace tginfer
